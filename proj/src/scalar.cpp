#include "agd/scalar.hpp"

#include <cctype>
#include <sstream>

namespace agd {

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << q.get_num();
    if (q.get_den() != 1) os << "/" << q.get_den();
    return os.str();
}

Rational parse_rational(const std::string& s) {
    std::string body;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) body += c;
    if (body.empty()) throw std::invalid_argument("empty rational literal");
    Rational q;
    if (q.set_str(body, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

std::string QuadScalar::str() const {
    if (b_ == 0) return rational_str(a_);
    return rational_str(a_) + " + " + rational_str(b_) + "*alpha";
}

QuadScalar parse_quad(const std::string& raw, int rank_hint) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto pos = s.find("alpha");
    if (pos == std::string::npos) return QuadScalar(parse_rational(s));
    if (pos + 5 != s.size()) throw std::invalid_argument("bad scalar literal: " + raw);
    std::string head = s.substr(0, pos);
    if (!head.empty() && head.back() == '*') head.pop_back();
    // head is now "A+B", "A-B", "B", or "" (meaning b = 1); split at the last
    // sign preceded by a digit so fraction bars and leading signs survive.
    size_t split = std::string::npos;
    for (size_t i = head.size(); i-- > 1;) {
        if ((head[i] == '+' || head[i] == '-') &&
            std::isdigit(static_cast<unsigned char>(head[i - 1]))) {
            split = i;
            break;
        }
    }
    Rational a(0), b(1);
    if (head.empty()) {
        // bare "alpha"
    } else if (split == std::string::npos) {
        b = parse_rational(head);
    } else {
        a = parse_rational(head.substr(0, split));
        std::string rest = head.substr(split + 1);
        b = parse_rational(rest);
        if (head[split] == '-') b = -b;
    }
    if (rank_hint < 2) throw std::invalid_argument("alpha literal requires a rank");
    return QuadScalar(a, b, rank_hint);
}

}  // namespace agd
