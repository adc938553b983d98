#include <doctest.h>

#include "latscheme/bigint.hpp"

using latscheme::BigInt;
using latscheme::BigRat;

TEST_CASE("BigInt arithmetic round trips through strings") {
    BigInt a(123456789012345678LL);
    CHECK(a.to_string() == "123456789012345678");
    CHECK((-a).to_string() == "-123456789012345678");
    CHECK((a + a).to_string() == "246913578024691356");
    CHECK((a - a).is_zero());
    CHECK((a * BigInt(0)).is_zero());
}

TEST_CASE("BigInt factorial and power agree with known values") {
    CHECK(BigInt::factorial(20).to_string() == "2432902008176640000");
    CHECK(BigInt::factorial(25).to_string() == "15511210043330985984000000");
    CHECK(BigInt::power(2, 100).to_string() == "1267650600228229401496703205376");
    CHECK(BigInt::power(5, 40).to_string() == "9094947017729282379150390625");
}

TEST_CASE("BigInt multiplication handles multi-limb carries") {
    BigInt a = BigInt::power(10, 30);
    BigInt b = BigInt::power(10, 25);
    CHECK((a * b) == BigInt::power(10, 55));
    CHECK((a * b).to_string().size() == 56);
}

TEST_CASE("divmod_small produces exact quotient and remainder") {
    BigInt a = BigInt::factorial(30);
    BigInt b = a;
    std::uint32_t rem = b.divmod_small(720u);
    CHECK(rem == 0);
    b.mul_small(720u);
    CHECK(b == a);

    BigInt c(1000003);
    CHECK(c.divmod_small(1000) == 3);
    CHECK(c == BigInt(1000));
}

TEST_CASE("binomial with large top argument") {
    CHECK(BigInt::binomial(BigInt(10), 3) == BigInt(120));
    CHECK(BigInt::binomial(BigInt(2), 5).is_zero());
    // C(2^40, 2) = 2^39 (2^40 - 1)
    BigInt top = BigInt::power(2, 40);
    BigInt expect = BigInt::power(2, 39) * (BigInt::power(2, 40) - BigInt(1));
    CHECK(BigInt::binomial(top, 2) == expect);
}

TEST_CASE("gcd is correct on large inputs") {
    BigInt a = BigInt::factorial(30);
    BigInt b = BigInt::power(2, 90);
    // 30! contains 2^26
    CHECK(BigInt::gcd(a, b) == BigInt::power(2, 26));
    CHECK(BigInt::gcd(BigInt(0), BigInt(42)) == BigInt(42));
}

TEST_CASE("to_double is accurate for huge integers") {
    BigInt a = BigInt::power(10, 60);
    CHECK(a.to_double() == doctest::Approx(1e60).epsilon(1e-14));
    CHECK(BigInt(-7).to_double() == -7.0);
}

TEST_CASE("BigRat reduces and stays exact") {
    BigRat half(BigInt(2), BigInt(4));
    CHECK(half.num() == BigInt(1));
    CHECK(half.den() == BigInt(2));
    BigRat third(BigInt(1), BigInt(3));
    CHECK((half + third) == BigRat(BigInt(5), BigInt(6)));
    CHECK((half * third) == BigRat(BigInt(1), BigInt(6)));
    CHECK((half - half).is_zero());
    BigRat big(BigInt::factorial(30), BigInt::factorial(28));
    CHECK(big.is_integer());
    CHECK(big.num() == BigInt(30 * 29));
    CHECK(big.to_double() == doctest::Approx(870.0));
}

TEST_CASE("BigRat to_double survives numerator and denominator overflowing double") {
    BigRat r(BigInt::factorial(200), BigInt::factorial(200) * BigInt(3));
    CHECK(r.to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}
