#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace kcof {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value);
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(const mpq_class& q);

    /// Parses "p", "p/q" or a plain decimal like "-2.5" / "1e-3" exactly.
    /// Accepts U+2212 as a minus sign. Throws Error(Parse) on bad input.
    static Rational parse(std::string_view text);

    /// "p" for integers, "p/q" otherwise.
    std::string str() const;
    double to_double() const { return q_.get_d(); }

    std::string numerator_str() const;
    std::string denominator_str() const;
    bool is_integer() const;
    int sign() const { return sgn(q_); }

    const mpq_class& raw() const { return q_; }

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    // Canonical form makes equality a componentwise check.
    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    std::size_t hash() const;

private:
    mpq_class q_;
};

Rational abs(const Rational& x);
Rational midpoint(const Rational& a, const Rational& b);
const Rational& min(const Rational& a, const Rational& b);
const Rational& max(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& x);

} // namespace kcof

template <>
struct std::hash<kcof::Rational> {
    std::size_t operator()(const kcof::Rational& x) const noexcept { return x.hash(); }
};
