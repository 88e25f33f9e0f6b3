#pragma once

/// Exact rational numbers over BigInt.  Values are always stored in lowest
/// terms with a positive denominator (mpq canonical form), so equality is
/// structural.

#include "qreflex/bigint.hpp"

#include <gmp.h>

#include <iosfwd>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qreflex {

class Rational {
public:
    Rational() { mpq_init(q_); }
    Rational(int v) {
        mpq_init(q_);
        mpq_set_si(q_, v, 1);
    }
    Rational(const BigInt& n) {
        mpq_init(q_);
        mpq_set_z(q_, n.raw());
    }
    Rational(const BigInt& n, const BigInt& d) {
        if (d.is_zero()) throw std::domain_error("Rational: zero denominator");
        mpq_init(q_);
        mpz_set(mpq_numref(q_), n.raw());
        mpz_set(mpq_denref(q_), d.raw());
        mpq_canonicalize(q_);
    }
    Rational(int n, int d) : Rational(BigInt(n), BigInt(d)) {}

    /// Parses "p/q", "p", or "-p/q"; used by the file formats.
    static Rational parse(std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return Rational(BigInt(s));
        BigInt n(s.substr(0, slash));
        BigInt d(s.substr(slash + 1));
        if (d.sign() <= 0) throw std::invalid_argument("Rational: denominator must be positive in literal: " + std::string(s));
        return Rational(n, d);
    }

    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    // -- observers ------------------------------------------------------

    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_integer() const { return mpz_cmp_si(mpq_denref(q_), 1) == 0; }

    BigInt num() const {
        BigInt n;
        mpz_set(n.raw(), mpq_numref(q_));
        return n;
    }
    BigInt den() const {
        BigInt d;
        mpz_set(d.raw(), mpq_denref(q_));
        return d;
    }

    /// Largest integer <= value.
    BigInt floor() const {
        BigInt r;
        mpz_fdiv_q(r.raw(), mpq_numref(q_), mpq_denref(q_));
        return r;
    }
    /// Smallest integer >= value.
    BigInt ceil() const {
        BigInt r;
        mpz_cdiv_q(r.raw(), mpq_numref(q_), mpq_denref(q_));
        return r;
    }

    std::string to_string() const {
        if (is_integer()) return num().to_string();
        return num().to_string() + "/" + den().to_string();
    }

    // -- arithmetic -----------------------------------------------------

    friend Rational operator-(const Rational& a) {
        Rational r;
        mpq_neg(r.q_, a.q_);
        return r;
    }
    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        mpq_add(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        Rational r;
        mpq_sub(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        mpq_mul(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        Rational r;
        mpq_div(r.q_, a.q_, b.q_);
        return r;
    }

    Rational& operator+=(const Rational& o) {
        mpq_add(q_, q_, o.q_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(q_, q_, o.q_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(q_, q_, o.q_);
        return *this;
    }

    Rational reciprocal() const {
        if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
        Rational r;
        mpq_inv(r.q_, q_);
        return r;
    }

    friend Rational abs(const Rational& a) {
        Rational r;
        mpq_abs(r.q_, a.q_);
        return r;
    }

    // -- comparisons ----------------------------------------------------

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = mpq_cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.to_string(); }

    size_t hash() const {
        size_t h = num().hash();
        h ^= den().hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }

private:
    mpq_t q_;
};

}  // namespace qreflex
