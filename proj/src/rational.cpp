#include "kcof/rational.hpp"

#include <cctype>
#include <ostream>

#include "kcof/error.hpp"

namespace kcof {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

[[noreturn]] void bad(std::string_view text)
{
    fail(ErrorCode::Parse, "not a rational number: \"" + std::string(text) + "\"");
}

} // namespace

Rational::Rational(std::int64_t value) : q_(static_cast<long>(value)) {}

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) {
        fail(ErrorCode::Domain, "zero denominator");
    }
    q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text)
{
    const std::string_view original = text;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }

    bool negative = false;
    static constexpr std::string_view unicode_minus = "\xE2\x88\x92";
    if (text.starts_with(unicode_minus)) {
        negative = true;
        text.remove_prefix(unicode_minus.size());
    } else if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) {
        bad(original);
    }

    mpq_class q;
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            bad(original);
        }
        mpz_class d(std::string(den), 10);
        if (d == 0) {
            fail(ErrorCode::Parse, "zero denominator in \"" + std::string(original) + "\"");
        }
        q = mpq_class(mpz_class(std::string(num), 10), d);
    } else {
        std::string_view mantissa = text;
        long exponent = 0;
        if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = text.substr(0, e);
            std::string_view exp_text = text.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 6) {
                bad(original);
            }
            exponent = std::stol(std::string(exp_text));
            if (exp_negative) {
                exponent = -exponent;
            }
        }
        std::string_view int_part = mantissa;
        std::string_view frac_part;
        if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
            int_part = mantissa.substr(0, dot);
            frac_part = mantissa.substr(dot + 1);
        }
        if (int_part.empty() && frac_part.empty()) {
            bad(original);
        }
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) {
            bad(original);
        }
        const std::string digits = std::string(int_part) + std::string(frac_part);
        mpz_class num(digits.empty() ? std::string("0") : digits, 10);
        exponent -= static_cast<long>(frac_part.size());
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
        q = exponent < 0 ? mpq_class(num, scale) : mpq_class(num * scale);
    }
    q.canonicalize();
    if (negative) {
        q = -q;
    }
    return Rational(q);
}

std::string Rational::str() const
{
    if (is_integer()) {
        return q_.get_num().get_str();
    }
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::numerator_str() const { return q_.get_num().get_str(); }
std::string Rational::denominator_str() const { return q_.get_den().get_str(); }
bool Rational::is_integer() const { return q_.get_den() == 1; }

Rational& Rational::operator+=(const Rational& o)
{
    q_ += o.q_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o)
{
    q_ -= o.q_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o)
{
    q_ *= o.q_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.q_ == 0) {
        fail(ErrorCode::Domain, "division by zero");
    }
    q_ /= o.q_;
    return *this;
}

Rational Rational::operator-() const
{
    Rational r;
    r.q_ = -q_;
    return r;
}

std::size_t Rational::hash() const
{
    // Limb-wise mix of numerator and denominator.
    std::size_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const mpz_class& z) {
        const mpz_srcptr p = z.get_mpz_t();
        const int size = p->_mp_size;
        h ^= static_cast<std::size_t>(size) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        const int limbs = size < 0 ? -size : size;
        for (int i = 0; i < limbs; ++i) {
            h ^= static_cast<std::size_t>(p->_mp_d[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
    };
    mix(q_.get_num());
    mix(q_.get_den());
    return h;
}

namespace {

// Compares a/da with b/db when da and db share their odd part; then the
// cross multiplication reduces to a shift. Returns false if they do not.
bool cmp_scaled(const mpq_class& a, const mpq_class& b, int& out)
{
    const mpz_srcptr da = a.get_den_mpz_t();
    const mpz_srcptr db = b.get_den_mpz_t();
    const mp_bitcnt_t ta = mpz_scan1(da, 0);
    const mp_bitcnt_t tb = mpz_scan1(db, 0);
    if (ta == tb || mpz_sizeinbase(da, 2) - ta != mpz_sizeinbase(db, 2) - tb) {
        return false;
    }
    mpz_class oa;
    mpz_class ob;
    mpz_tdiv_q_2exp(oa.get_mpz_t(), da, ta);
    mpz_tdiv_q_2exp(ob.get_mpz_t(), db, tb);
    if (oa != ob) {
        return false;
    }
    mpz_class scaled;
    if (ta < tb) {
        mpz_mul_2exp(scaled.get_mpz_t(), a.get_num_mpz_t(), tb - ta);
        out = mpz_cmp(scaled.get_mpz_t(), b.get_num_mpz_t());
    } else {
        mpz_mul_2exp(scaled.get_mpz_t(), b.get_num_mpz_t(), ta - tb);
        out = mpz_cmp(a.get_num_mpz_t(), scaled.get_mpz_t());
    }
    return true;
}

} // namespace

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    // Iterated midpoints produce denominators that differ only by powers of
    // two; those are compared by shifting instead of cross multiplying.
    constexpr std::size_t shift_threshold_limbs = 8;
    int c = 0;
    if (mpz_cmp(a.q_.get_den_mpz_t(), b.q_.get_den_mpz_t()) == 0) {
        c = mpz_cmp(a.q_.get_num_mpz_t(), b.q_.get_num_mpz_t());
    } else if (mpz_size(a.q_.get_den_mpz_t()) < shift_threshold_limbs || !cmp_scaled(a.q_, b.q_, c)) {
        c = mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
    }
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }

const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

} // namespace kcof
