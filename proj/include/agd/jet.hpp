// Jet variables: a density (family, index, optional sub-index) together with
// a number of x-derivatives. Packed into a 32-bit code whose numeric order is
// the canonical variable order (family name, index, sub-index, order).
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace agd {

// Alphabetical by family name so that packed-code order matches name order.
enum class Fam : std::uint8_t { b = 0, lambda = 1, p = 2, s = 3, t = 4, u = 5, z = 6 };

inline const char* fam_name(Fam f) {
    switch (f) {
        case Fam::b: return "b";
        case Fam::lambda: return "lambda";
        case Fam::p: return "p";
        case Fam::s: return "s";
        case Fam::t: return "t";
        case Fam::u: return "u";
        case Fam::z: return "z";
    }
    throw std::logic_error("unknown family");
}

Fam fam_from_name(const std::string& name);

// A density without derivative order.
struct Density {
    Fam fam;
    int index = 0;  // 1-based; 0 for lambda
    int sub = 0;    // only the b family uses sub-indices

    friend bool operator==(const Density&, const Density&) = default;
    friend auto operator<=>(const Density&, const Density&) = default;
    std::string name() const;
};

class JetVar {
  public:
    JetVar() : code_(0) {}
    JetVar(Fam f, int index, int sub, int order) {
        if (index < 0 || index > 63 || sub < 0 || sub > 63 || order < 0 || order > 255)
            throw std::domain_error("JetVar field out of range");
        code_ = (std::uint32_t(f) << 24) | (std::uint32_t(index) << 16) |
                (std::uint32_t(sub) << 8) | std::uint32_t(order);
    }
    JetVar(const Density& d, int order) : JetVar(d.fam, d.index, d.sub, order) {}

    Fam fam() const { return Fam(code_ >> 24); }
    int index() const { return int((code_ >> 16) & 0xff); }
    int sub() const { return int((code_ >> 8) & 0xff); }
    int order() const { return int(code_ & 0xff); }
    Density density() const { return {fam(), index(), sub()}; }
    std::uint32_t code() const { return code_; }

    JetVar with_order(int k) const { return JetVar(fam(), index(), sub(), k); }

    friend bool operator==(const JetVar& a, const JetVar& b) { return a.code_ == b.code_; }
    friend bool operator!=(const JetVar& a, const JetVar& b) { return a.code_ != b.code_; }
    friend bool operator<(const JetVar& a, const JetVar& b) { return a.code_ < b.code_; }

    std::string name() const;

  private:
    std::uint32_t code_;
};

JetVar parse_jetvar(const std::string& name);

}  // namespace agd
