#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

namespace ripscover {

using Rational = mpq_class;

/// Integers mod 2. Same operator surface as Rational so reduction code can be
/// written once.
class Mod2 {
public:
    constexpr Mod2() = default;
    constexpr Mod2(long v) : v_(static_cast<std::uint8_t>(v & 1)) {}  // NOLINT(google-explicit-constructor)

    constexpr bool is_zero() const { return v_ == 0; }
    constexpr std::uint8_t value() const { return v_; }

    friend constexpr Mod2 operator+(Mod2 a, Mod2 b) { return Mod2(a.v_ ^ b.v_); }
    friend constexpr Mod2 operator-(Mod2 a, Mod2 b) { return Mod2(a.v_ ^ b.v_); }
    friend constexpr Mod2 operator*(Mod2 a, Mod2 b) { return Mod2(a.v_ & b.v_); }
    friend constexpr Mod2 operator/(Mod2 a, Mod2 /*b*/) { return a; }
    constexpr Mod2 operator-() const { return *this; }
    constexpr Mod2& operator+=(Mod2 b) { v_ ^= b.v_; return *this; }
    constexpr Mod2& operator-=(Mod2 b) { v_ ^= b.v_; return *this; }
    constexpr Mod2& operator*=(Mod2 b) { v_ &= b.v_; return *this; }
    friend constexpr bool operator==(Mod2 a, Mod2 b) { return a.v_ == b.v_; }
    friend constexpr bool operator!=(Mod2 a, Mod2 b) { return a.v_ != b.v_; }
    friend std::ostream& operator<<(std::ostream& os, Mod2 a) { return os << int(a.v_); }

private:
    std::uint8_t v_ = 0;
};

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(Mod2 x) { return x.is_zero(); }

/// "num/den" with the denominator always present.
inline std::string to_fraction_string(const Rational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}
inline std::string to_fraction_string(Mod2 x) { return std::to_string(int(x.value())) + "/1"; }

inline Rational to_rational(const Rational& x) { return x; }
inline Rational to_rational(Mod2 x) { return Rational(int(x.value())); }

/// Parses "num/den" or "num".
inline Rational parse_fraction(const std::string& s) {
    Rational r(s);
    r.canonicalize();
    return r;
}

enum class FieldKind { Rational, Mod2 };

}  // namespace ripscover
