#pragma once

/// Arbitrary-precision signed integer, a thin value-semantic wrapper over
/// GMP's mpz_t.  All arithmetic is exact; there is no floating point
/// anywhere in this library.

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qreflex {

class BigInt {
public:
    BigInt() { mpz_init(z_); }
    BigInt(int v) { mpz_init_set_si(z_, v); }
    BigInt(long v) { mpz_init_set_si(z_, v); }
    BigInt(long long v) {
        mpz_init(z_);
        // mpz_set_si takes a long; feed 64-bit values via import to stay
        // correct on LLP64 targets.
        bool neg = v < 0;
        unsigned long long mag = neg ? 0ULL - static_cast<unsigned long long>(v)
                                     : static_cast<unsigned long long>(v);
        mpz_import(z_, 1, 1, sizeof(mag), 0, 0, &mag);
        if (neg) mpz_neg(z_, z_);
    }
    explicit BigInt(std::string_view s) {
        mpz_init(z_);
        if (mpz_set_str(z_, std::string(s).c_str(), 10) != 0) {
            mpz_clear(z_);
            throw std::invalid_argument("BigInt: malformed integer literal: " + std::string(s));
        }
    }

    BigInt(const BigInt& o) { mpz_init_set(z_, o.z_); }
    BigInt(BigInt&& o) noexcept {
        mpz_init(z_);
        mpz_swap(z_, o.z_);
    }
    BigInt& operator=(const BigInt& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    BigInt& operator=(BigInt&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~BigInt() { mpz_clear(z_); }

    // -- observers ------------------------------------------------------

    int sign() const { return mpz_sgn(z_); }
    bool is_zero() const { return mpz_sgn(z_) == 0; }
    bool is_one() const { return mpz_cmp_si(z_, 1) == 0; }
    bool odd() const { return mpz_odd_p(z_) != 0; }

    bool fits_int64() const {
        static const BigInt lo(INT64_MIN), hi(INT64_MAX);
        return mpz_cmp(z_, lo.z_) >= 0 && mpz_cmp(z_, hi.z_) <= 0;
    }
    int64_t to_int64() const {
        if (!fits_int64()) throw std::overflow_error("BigInt: value exceeds int64 range");
        unsigned long long mag = 0;
        mpz_export(&mag, nullptr, 1, sizeof(mag), 0, 0, z_);
        return sign() < 0 ? -static_cast<int64_t>(mag) : static_cast<int64_t>(mag);
    }

    std::string to_string() const {
        std::string out(mpz_sizeinbase(z_, 10) + 2, '\0');
        mpz_get_str(out.data(), 10, z_);
        out.resize(out.find('\0'));
        return out;
    }

    // -- arithmetic -----------------------------------------------------

    friend BigInt operator-(const BigInt& a) {
        BigInt r;
        mpz_neg(r.z_, a.z_);
        return r;
    }
    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_add(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_sub(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_mul(r.z_, a.z_, b.z_);
        return r;
    }
    /// Truncated division (C semantics); remainder has the dividend's sign.
    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        BigInt r;
        mpz_tdiv_q(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        BigInt r;
        mpz_tdiv_r(r.z_, a.z_, b.z_);
        return r;
    }

    BigInt& operator+=(const BigInt& o) {
        mpz_add(z_, z_, o.z_);
        return *this;
    }
    BigInt& operator-=(const BigInt& o) {
        mpz_sub(z_, z_, o.z_);
        return *this;
    }
    BigInt& operator*=(const BigInt& o) {
        mpz_mul(z_, z_, o.z_);
        return *this;
    }

    /// Floor division: largest q with q*b <= a.
    friend BigInt floor_div(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        BigInt r;
        mpz_fdiv_q(r.z_, a.z_, b.z_);
        return r;
    }
    /// Ceiling division: smallest q with q*b >= a.
    friend BigInt ceil_div(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        BigInt r;
        mpz_cdiv_q(r.z_, a.z_, b.z_);
        return r;
    }

    friend BigInt abs(const BigInt& a) {
        BigInt r;
        mpz_abs(r.z_, a.z_);
        return r;
    }
    friend BigInt gcd(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_gcd(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt lcm(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_lcm(r.z_, a.z_, b.z_);
        return r;
    }

    // -- comparisons ----------------------------------------------------

    friend bool operator==(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) == 0; }
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        int c = mpz_cmp(a.z_, b.z_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const BigInt& a) { return os << a.to_string(); }

    size_t hash() const {
        size_t h = 1469598103934665603ull;
        auto mix = [&h](size_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        mix(static_cast<size_t>(sign() + 1));
        size_t n = mpz_size(z_);
        for (size_t i = 0; i < n; ++i) mix(static_cast<size_t>(mpz_getlimbn(z_, i)));
        return h;
    }

    /// Access to the raw mpz for interop inside the library.
    mpz_srcptr raw() const { return z_; }
    mpz_ptr raw() { return z_; }

private:
    mpz_t z_;
};

}  // namespace qreflex
