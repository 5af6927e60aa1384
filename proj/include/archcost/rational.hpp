#pragma once

#include "archcost/int128.hpp"

#include <stdexcept>

namespace archcost {

// Exact rational on 128-bit integers. The fractional layer formulas
// (17/16, 137/128, squared transition widths) are evaluated in this type
// and only rounded once, at the very end.
struct Rational {
    i128 num = 0;
    i128 den = 1;

    Rational() = default;
    Rational(i128 n, i128 d) : num(n), den(d) { normalize(); }
    Rational(long long n) : num(n), den(1) {} // NOLINT: implicit by design
    static Rational of(i128 n, i128 d = 1) { return Rational(n, d); }

    // Exact conversion; every finite double is a dyadic rational.
    static Rational from_double(double v);

    void normalize();

    Rational operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
    Rational operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
    Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw std::domain_error("rational division by zero");
        return Rational(num * o.den, den * o.num);
    }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
    bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    bool is_integer() const { return den == 1; }
    bool is_positive() const { return num > 0; }

    // Nearest integer, ties away from zero.
    i128 round_nearest() const;

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
};

} // namespace archcost
