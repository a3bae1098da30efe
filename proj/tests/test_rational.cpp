#include <doctest.h>

#include <sstream>
#include <unordered_set>

#include "generators.hpp"
#include "kcof/error.hpp"
#include "kcof/rational.hpp"

using kcof::Rational;

TEST_CASE("rational parsing accepts fractions, decimals and exponents exactly")
{
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(Rational::parse("-21/2") == Rational(-21, 2));
    CHECK(Rational::parse("  6/4 ") == Rational(3, 2));
    CHECK(Rational::parse("2.5") == Rational(5, 2));
    CHECK(Rational::parse("-0.125") == Rational(-1, 8));
    CHECK(Rational::parse(".5") == Rational(1, 2));
    CHECK(Rational::parse("5.") == Rational(5));
    CHECK(Rational::parse("1e-3") == Rational(1, 1000));
    CHECK(Rational::parse("2.5E2") == Rational(250));
    CHECK(Rational::parse("+7") == Rational(7));
    CHECK(Rational::parse("\xE2\x88\x92" "21/2") == Rational(-21, 2));
    CHECK(Rational::parse("0.1") + Rational::parse("0.2") == Rational::parse("0.3"));
}

TEST_CASE("rational parsing rejects malformed text")
{
    for (const char* bad : {"", "-", "abc", "1/0", "1/", "/2", "1.2.3", "1e", "3/-4", "1 2", "0x10", "1e1234567"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(Rational::parse(bad), kcof::Error);
    }
    try {
        Rational::parse("1/0");
    } catch (const kcof::Error& e) {
        CHECK(e.code() == kcof::ErrorCode::Parse);
    }
}

TEST_CASE("rational canonical form and printing")
{
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK(Rational(0, 5).str() == "0");
    CHECK(Rational(10, 5).str() == "2");
    CHECK(Rational(6, -4).numerator_str() == "-3");
    CHECK(Rational(6, -4).denominator_str() == "2");
    CHECK(Rational(4, 2).is_integer());
    CHECK_FALSE(Rational(1, 2).is_integer());
    CHECK_THROWS_AS(Rational(1, 0), kcof::Error);
    std::ostringstream os;
    os << Rational(-7, 3);
    CHECK(os.str() == "-7/3");
}

TEST_CASE("rational arithmetic")
{
    const Rational a(1, 3);
    const Rational b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK(kcof::abs(Rational(-5, 2)) == Rational(5, 2));
    CHECK(kcof::midpoint(Rational(2), Rational(4)) == Rational(3));
    CHECK(kcof::min(a, b) == b);
    CHECK(kcof::max(a, b) == a);
    CHECK_THROWS_AS(a / Rational(0), kcof::Error);
    CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("rational ordering agrees with cross multiplication on dyadic and mixed denominators")
{
    gen::Rng rng(11);
    for (int t = 0; t < 2000; ++t) {
        // Large power-of-two scaled denominators exercise the shift comparison.
        const long odd = rng.coin() ? 1 : 3 * rng.uniform(1, 5);
        mpz_class da = odd;
        mpz_class db = odd;
        mpz_mul_2exp(da.get_mpz_t(), da.get_mpz_t(), static_cast<mp_bitcnt_t>(rng.uniform(0, 1200)));
        mpz_mul_2exp(db.get_mpz_t(), db.get_mpz_t(), static_cast<mp_bitcnt_t>(rng.uniform(0, 1200)));
        mpz_class na = da * rng.uniform(-5, 5) + rng.uniform(-1000, 1000);
        mpz_class nb = db * rng.uniform(-5, 5) + rng.uniform(-1000, 1000);
        if (rng.uniform(0, 9) == 0) {
            nb = na * (db / odd);
            db = da * (db / odd);
        }
        const Rational a(mpq_class(na, da));
        const Rational b(mpq_class(nb, db));
        const int expect = cmp(a.raw(), b.raw());
        const auto got = a <=> b;
        CHECK((expect < 0) == (got < 0));
        CHECK((expect == 0) == (got == 0));
        CHECK((expect == 0) == (a == b));
    }
}

TEST_CASE("equal rationals hash equally")
{
    std::unordered_set<Rational> set;
    set.insert(Rational(1, 2));
    set.insert(Rational(2, 4));
    set.insert(Rational::parse("0.5"));
    set.insert(Rational(-1, 2));
    CHECK(set.size() == 2);
}
