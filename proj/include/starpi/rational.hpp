#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "starpi/error.hpp"

namespace starpi {

// Exact rational scalar backed by GMP. A thin value-semantics wrapper: every
// operator returns a concrete Rational (GMP's own expression templates are not
// usable as a matrix scalar). Always canonical: reduced fraction, positive
// denominator.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(int n) : q_(static_cast<long>(n)) {}
    Rational(long n) : q_(n) {}
    Rational(long num, long den) {
        if (den == 0) throw Error("Rational: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Accepts "p" or "p/q" with optional leading '-', nothing else.
    static std::optional<Rational> parse(const std::string& text);

    // Renders "p" or "p/q" (reduced, sign on the numerator).
    std::string str() const { return q_.get_str(); }

    bool is_zero() const { return mpq_sgn(q_.get_mpq_t()) == 0; }
    int sign() const { return mpq_sgn(q_.get_mpq_t()); }
    const mpq_class& raw() const { return q_; }

    Rational operator-() const { return Rational(mpq_class(-q_)); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw Error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.q_ + b.q_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.q_ - b.q_));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.q_ * b.q_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw Error("Rational: division by zero");
        return Rational(mpq_class(a.q_ / b.q_));
    }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t()) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t()) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

// Exact power with non-negative integer exponent.
Rational pow(const Rational& base, unsigned e);

}  // namespace starpi
