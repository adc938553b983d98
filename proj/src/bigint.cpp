#include "latscheme/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latscheme {

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    unsigned long long u = v < 0 ? -static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
    while (u) {
        mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffu));
        u >>= 32;
    }
}

void BigInt::normalize() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::compare_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> r(big.size() + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        std::uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0u);
        r[i] = static_cast<std::uint32_t>(s);
        carry = s >> 32;
    }
    r[big.size()] = static_cast<std::uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r(a.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t s = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
        if (s < 0) {
            s += (1ll << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<std::uint32_t>(s);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt& BigInt::operator+=(const BigInt& o) {
    if (o.sign_ == 0) return *this;
    if (sign_ == 0) { *this = o; return *this; }
    if (sign_ == o.sign_) {
        mag_ = add_mag(mag_, o.mag_);
        return *this;
    }
    int c = compare_mag(mag_, o.mag_);
    if (c == 0) { sign_ = 0; mag_.clear(); return *this; }
    if (c > 0) {
        mag_ = sub_mag(mag_, o.mag_);
    } else {
        mag_ = sub_mag(o.mag_, mag_);
        sign_ = o.sign_;
    }
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) { return *this += -o; }

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.sign_ == 0 || b.sign_ == 0) return r;
    r.sign_ = a.sign_ * b.sign_;
    r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
    for (std::size_t i = 0; i < a.mag_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.mag_.size(); ++j) {
            std::uint64_t s = static_cast<std::uint64_t>(a.mag_[i]) * b.mag_[j] + r.mag_[i + j] + carry;
            r.mag_[i + j] = static_cast<std::uint32_t>(s);
            carry = s >> 32;
        }
        std::size_t k = i + b.mag_.size();
        while (carry) {
            std::uint64_t s = static_cast<std::uint64_t>(r.mag_[k]) + carry;
            r.mag_[k] = static_cast<std::uint32_t>(s);
            carry = s >> 32;
            ++k;
        }
    }
    r.normalize();
    return r;
}

BigInt& BigInt::operator*=(const BigInt& o) {
    *this = *this * o;
    return *this;
}

BigInt& BigInt::mul_small(std::uint32_t m) {
    if (m == 0 || sign_ == 0) { sign_ = 0; mag_.clear(); return *this; }
    std::uint64_t carry = 0;
    for (auto& limb : mag_) {
        std::uint64_t s = static_cast<std::uint64_t>(limb) * m + carry;
        limb = static_cast<std::uint32_t>(s);
        carry = s >> 32;
    }
    if (carry) mag_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
}

std::uint32_t BigInt::divmod_small(std::uint32_t d) {
    if (d == 0) throw std::invalid_argument("BigInt: division by zero");
    std::uint64_t rem = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | mag_[i];
        mag_[i] = static_cast<std::uint32_t>(cur / d);
        rem = cur % d;
    }
    normalize();
    return static_cast<std::uint32_t>(rem);
}

BigInt BigInt::shifted_right(std::size_t bits) const {
    BigInt r = *this;
    std::size_t limbShift = bits / 32, bitShift = bits % 32;
    if (limbShift >= r.mag_.size()) return BigInt(0);
    r.mag_.erase(r.mag_.begin(), r.mag_.begin() + static_cast<std::ptrdiff_t>(limbShift));
    if (bitShift) {
        for (std::size_t i = 0; i < r.mag_.size(); ++i) {
            std::uint32_t hi = i + 1 < r.mag_.size() ? r.mag_[i + 1] : 0u;
            r.mag_[i] = static_cast<std::uint32_t>((r.mag_[i] >> bitShift) | (static_cast<std::uint64_t>(hi) << (32 - bitShift)));
        }
    }
    r.normalize();
    return r;
}

bool BigInt::is_even() const {
    return mag_.empty() || (mag_[0] & 1u) == 0;
}

std::size_t BigInt::bit_length() const {
    if (mag_.empty()) return 0;
    std::uint32_t top = mag_.back();
    std::size_t b = 0;
    while (top) { ++b; top >>= 1; }
    return (mag_.size() - 1) * 32 + b;
}

std::strong_ordering BigInt::operator<=>(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ <=> o.sign_;
    int c = compare_mag(mag_, o.mag_) * (sign_ < 0 ? -1 : 1);
    return c <=> 0;
}

bool BigInt::operator==(const BigInt& o) const {
    return sign_ == o.sign_ && mag_ == o.mag_;
}

BigInt BigInt::power(unsigned long long base, unsigned exp) {
    BigInt r(1);
    BigInt b(static_cast<long long>(base));
    while (exp) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

BigInt BigInt::factorial(unsigned n) {
    BigInt r(1);
    for (unsigned i = 2; i <= n; ++i) r.mul_small(i);
    return r;
}

BigInt BigInt::binomial(const BigInt& a, unsigned k) {
    if (a.sign() < 0) throw std::invalid_argument("BigInt::binomial: negative argument");
    BigInt r(1);
    BigInt top = a;
    for (unsigned i = 0; i < k; ++i) {
        if (top.is_zero() || top.sign() < 0) return BigInt(0);
        r *= top;
        std::uint32_t rem = r.divmod_small(i + 1);
        if (rem != 0) throw std::logic_error("BigInt::binomial: inexact division");
        top -= BigInt(1);
    }
    return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.sign_ = a.mag_.empty() ? 0 : 1;
    b.sign_ = b.mag_.empty() ? 0 : 1;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::size_t shift = 0;
    while (a.is_even() && b.is_even()) {
        a = a.shifted_right(1);
        b = b.shifted_right(1);
        ++shift;
    }
    while (a.is_even()) a = a.shifted_right(1);
    while (!b.is_zero()) {
        while (b.is_even()) b = b.shifted_right(1);
        if (compare_mag(a.mag_, b.mag_) > 0) std::swap(a, b);
        b -= a;
        b.sign_ = b.mag_.empty() ? 0 : 1;
    }
    for (std::size_t i = 0; i < shift; ++i) a.mul_small(2);
    return a;
}

double BigInt::to_double() const {
    if (sign_ == 0) return 0.0;
    double v = 0.0;
    // top three limbs carry more than the 53-bit mantissa
    std::size_t start = mag_.size() > 3 ? mag_.size() - 3 : 0;
    for (std::size_t i = mag_.size(); i-- > start;) v = v * 4294967296.0 + mag_[i];
    v = std::ldexp(v, static_cast<int>(32 * start));
    return sign_ < 0 ? -v : v;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    BigInt t = *this;
    std::string digits;
    while (!t.is_zero()) {
        std::uint32_t chunk = t.divmod_small(1000000000u);
        std::string part = std::to_string(chunk);
        if (!t.is_zero()) part.insert(0, 9 - part.size(), '0');
        digits.insert(0, part);
    }
    if (sign_ < 0) digits.insert(0, "-");
    return digits;
}

BigRat::BigRat(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("BigRat: zero denominator");
    reduce();
}

void BigRat::reduce() {
    if (num_.is_zero()) { den_ = BigInt(1); return; }
    if (den_.sign() < 0) { num_ = -num_; den_ = -den_; }
    BigInt g = BigInt::gcd(num_.sign() < 0 ? -num_ : num_, den_);
    if (g == BigInt(1)) return;
    // exact division by gcd via repeated small division is wasteful; divide by
    // reconstructing through to_string-free long division: use divmod by gcd limbs
    // only when gcd is small enough; otherwise fall back to subtract-shift division.
    auto divide_exact = [](const BigInt& value, const BigInt& divisor) {
        // binary long division, exact by construction
        BigInt remainder = value.sign() < 0 ? -value : value;
        BigInt quotient(0);
        std::size_t shift = remainder.bit_length() >= divisor.bit_length()
                                ? remainder.bit_length() - divisor.bit_length()
                                : 0;
        // divisor << shift computed incrementally
        std::vector<BigInt> table;
        BigInt d = divisor;
        table.push_back(d);
        for (std::size_t i = 0; i < shift; ++i) {
            d += d;
            table.push_back(d);
        }
        for (std::size_t i = shift + 1; i-- > 0;) {
            if (!(remainder < table[i])) {
                remainder -= table[i];
                BigInt bit(1);
                for (std::size_t j = 0; j < i; ++j) bit += bit;
                quotient += bit;
            }
        }
        if (!remainder.is_zero()) throw std::logic_error("BigRat: inexact division in reduce");
        return value.sign() < 0 ? -quotient : quotient;
    };
    num_ = divide_exact(num_, g);
    den_ = divide_exact(den_, g);
}

bool BigRat::is_integer() const { return den_ == BigInt(1); }

BigRat& BigRat::operator+=(const BigRat& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
}

BigRat& BigRat::operator-=(const BigRat& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
}

BigRat& BigRat::operator*=(const BigRat& o) {
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
}

BigRat& BigRat::operator/=(const BigRat& o) {
    if (o.num_.is_zero()) throw std::invalid_argument("BigRat: division by zero");
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    reduce();
    return *this;
}

bool BigRat::operator==(const BigRat& o) const {
    return num_ == o.num_ && den_ == o.den_;
}

double BigRat::to_double() const {
    std::size_t ln = num_.bit_length(), ld = den_.bit_length();
    std::size_t m = std::min(ln, ld);
    std::size_t shift = m > 512 ? m - 512 : 0;
    double n = num_.shifted_right(shift).to_double();
    double d = den_.shifted_right(shift).to_double();
    double v = n / d;
    return num_.sign() < 0 && v > 0 ? -v : v;
}

std::string BigRat::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

}  // namespace latscheme
