#include "archcost/rational.hpp"

#include <cmath>

namespace archcost {

namespace {

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

void Rational::normalize() {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::from_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("non-finite ratio");
    Rational r;
    int exp = 0;
    double mant = std::frexp(v, &exp); // v = mant * 2^exp, |mant| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    i128 num = static_cast<i128>(std::ldexp(mant, 53));
    exp -= 53;
    if (exp >= 0) {
        r.num = num << exp;
        r.den = 1;
    } else {
        r.num = num;
        r.den = static_cast<i128>(1) << (-exp);
    }
    r.normalize();
    return r;
}

i128 Rational::round_nearest() const {
    i128 q = num / den;
    i128 rem = num % den;
    if (rem < 0) rem = -rem;
    if (2 * rem >= den) q += (num >= 0) ? 1 : -1;
    return q;
}

std::string Rational::str() const {
    if (den == 1) return to_string(num);
    return to_string(num) + "/" + to_string(den);
}

} // namespace archcost
