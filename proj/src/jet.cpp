#include "agd/jet.hpp"

#include <cctype>

namespace agd {

Fam fam_from_name(const std::string& name) {
    if (name == "b") return Fam::b;
    if (name == "lambda") return Fam::lambda;
    if (name == "p") return Fam::p;
    if (name == "s") return Fam::s;
    if (name == "t") return Fam::t;
    if (name == "u") return Fam::u;
    if (name == "z") return Fam::z;
    throw std::invalid_argument("unknown density family: " + name);
}

std::string Density::name() const {
    if (fam == Fam::lambda) return "lambda";
    std::string s = fam_name(fam) + std::to_string(index);
    if (fam == Fam::b) s += "_" + std::to_string(sub);
    return s;
}

std::string JetVar::name() const {
    std::string s = density().name();
    int k = order();
    if (k == 0) return s;
    if (k <= 3) return s + "_" + std::string(size_t(k), 'x');
    return s + "_x" + std::to_string(k);
}

JetVar parse_jetvar(const std::string& name) {
    size_t i = 0;
    auto fail = [&]() -> JetVar {
        throw std::invalid_argument("bad jet variable: " + name);
    };
    std::string fam;
    while (i < name.size() && std::isalpha(static_cast<unsigned char>(name[i]))) fam += name[i++];
    Fam f;
    int index = 0, sub = 0, order = 0;
    if (fam == "lambda") {
        f = Fam::lambda;
    } else {
        f = fam_from_name(fam);
        if (i >= name.size() || !std::isdigit(static_cast<unsigned char>(name[i]))) return fail();
        while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i])))
            index = index * 10 + (name[i++] - '0');
    }
    if (f == Fam::b) {
        if (i >= name.size() || name[i] != '_') return fail();
        ++i;
        if (i >= name.size() || !std::isdigit(static_cast<unsigned char>(name[i]))) return fail();
        while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i])))
            sub = sub * 10 + (name[i++] - '0');
    }
    if (i < name.size()) {
        if (name[i] != '_') return fail();
        ++i;
        if (i >= name.size() || name[i] != 'x') return fail();
        size_t xs = 0;
        while (i < name.size() && name[i] == 'x') {
            ++xs;
            ++i;
        }
        if (i < name.size()) {
            if (xs != 1 || !std::isdigit(static_cast<unsigned char>(name[i]))) return fail();
            while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i])))
                order = order * 10 + (name[i++] - '0');
        } else {
            order = int(xs);
        }
    }
    if (i != name.size()) return fail();
    return JetVar(f, index, sub, order);
}

}  // namespace agd
