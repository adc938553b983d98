#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace latscheme {

/// Arbitrary-precision signed integer, sign-magnitude over base-2^32 limbs.
/// Used by the exact combinatorial oracles (Stirling numbers, partition
/// centralizers, finite-field factor counts, functional-graph series), where
/// values routinely exceed 64 and 128 bits.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);

    static BigInt power(unsigned long long base, unsigned exp);
    static BigInt factorial(unsigned n);
    /// C(a, k) for big a, computed by exact stepwise multiply/divide.
    static BigInt binomial(const BigInt& a, unsigned k);
    static BigInt gcd(BigInt a, BigInt b);

    bool is_zero() const { return sign_ == 0; }
    bool is_even() const;
    int sign() const { return sign_; }
    std::size_t bit_length() const;

    BigInt operator-() const;
    BigInt& operator+=(const BigInt& o);
    BigInt& operator-=(const BigInt& o);
    BigInt& operator*=(const BigInt& o);
    friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
    friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
    friend BigInt operator*(const BigInt& a, const BigInt& b);

    BigInt& mul_small(std::uint32_t m);
    /// In-place divide by a small divisor; returns the remainder.
    /// Remainder convention: |r| < d, r carries the original sign.
    std::uint32_t divmod_small(std::uint32_t d);

    BigInt shifted_right(std::size_t bits) const;

    std::strong_ordering operator<=>(const BigInt& o) const;
    bool operator==(const BigInt& o) const;

    double to_double() const;
    std::string to_string() const;

private:
    int sign_ = 0;                     // -1, 0, +1
    std::vector<std::uint32_t> mag_;   // little-endian, no leading zero limb

    void normalize();
    static int compare_mag(const std::vector<std::uint32_t>& a,
                           const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    // pre: |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
};

/// Exact rational with reduced BigInt numerator/denominator (denominator > 0).
class BigRat {
public:
    BigRat() : num_(0), den_(1) {}
    BigRat(long long v) : num_(v), den_(1) {}
    BigRat(BigInt num, BigInt den);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const;

    BigRat& operator+=(const BigRat& o);
    BigRat& operator-=(const BigRat& o);
    BigRat& operator*=(const BigRat& o);
    BigRat& operator/=(const BigRat& o);
    friend BigRat operator+(BigRat a, const BigRat& b) { return a += b; }
    friend BigRat operator-(BigRat a, const BigRat& b) { return a -= b; }
    friend BigRat operator*(BigRat a, const BigRat& b) { return a *= b; }
    friend BigRat operator/(BigRat a, const BigRat& b) { return a /= b; }
    bool operator==(const BigRat& o) const;

    double to_double() const;
    std::string to_string() const;

private:
    BigInt num_;
    BigInt den_;
    void reduce();
};

}  // namespace latscheme
