#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "hnpoly/errors.hpp"

namespace hnpoly {

// Exact arbitrary-precision rational, kept in canonical form
// (denominator > 0, gcd(|num|, den) = 1). Thin wrapper over GMP's
// mpq_class so construction always canonicalizes.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(int n) : v_(n) {}                 // NOLINT(google-explicit-constructor)
    Rat(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT
    Rat(long long n) : v_(mpz_class(std::to_string(n))) {}  // NOLINT

    Rat(const mpz_class& num, const mpz_class& den) : v_(num, den) {
        if (den == 0) throw DomainError("ZeroDenominator", "rational with denominator 0");
        v_.canonicalize();
    }
    Rat(long long num, long long den)
        : Rat(mpz_class(std::to_string(num)), mpz_class(std::to_string(den))) {}

    explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    // Accepts "a/b" or "a"; whitespace is not tolerated.
    static Rat parse(std::string_view text);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_integer() const { return v_.get_den() == 1; }
    bool is_zero() const { return v_ == 0; }
    int sign() const { return sgn(v_); }

    // Largest integer <= value / smallest integer >= value.
    mpz_class floor() const;
    mpz_class ceil() const;

    double to_double() const { return v_.get_d(); }
    // Renders "a/b", or just "a" when the denominator is 1.
    std::string str() const;

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw DomainError("DivisionByZero", "rational division by zero");
        return Rat(mpq_class(a.v_ / b.v_));
    }
    Rat operator-() const { return Rat(mpq_class(-v_)); }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
    mpq_class v_;
};

inline Rat min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a >= b ? a : b; }

}  // namespace hnpoly
