#include "parab/rational.hpp"

#include <numeric>

namespace parab {

namespace {

i64 checked(__int128 v) {
    if (v > INT64_MAX || v < -INT64_MAX) throw ArithmeticError("rational overflow");
    return i64(v);
}

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Rational::Rational(i64 n, i64 d) {
    if (d == 0) throw ArithmeticError("zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i64 g = std::gcd(n, d);
    if (g == 0) g = 1;
    n_ = n / g;
    d_ = d / g;
}

Rational Rational::operator+(const Rational& o) const {
    __int128 n = __int128(n_) * o.d_ + __int128(o.n_) * d_;
    __int128 d = __int128(d_) * o.d_;
    __int128 g = gcd128(n, d);
    if (g == 0) g = 1;
    return Rational(checked(n / g), checked(d / g));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    i64 g1 = std::gcd(n_, o.d_), g2 = std::gcd(o.n_, d_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational(checked(__int128(n_ / g1) * (o.n_ / g2)), checked(__int128(d_ / g2) * (o.d_ / g1)));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.n_ == 0) throw ArithmeticError("rational division by zero");
    return *this * Rational(o.d_, o.n_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    __int128 a = __int128(n_) * o.d_, b = __int128(o.n_) * d_;
    return a < b ? std::strong_ordering::less : a > b ? std::strong_ordering::greater : std::strong_ordering::equal;
}

i64 Rational::floor() const {
    i64 q = n_ / d_;
    if (n_ % d_ != 0 && n_ < 0) --q;
    return q;
}

Fq Rational::to_field(const Field& f) const {
    if (d_ % i64(f.p()) == 0) throw ArithmeticError("denominator " + std::to_string(d_) + " divisible by p");
    return f.of(n_) / f.of(d_);
}

std::string Rational::str() const {
    return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw ValidationError("not a rational: '" + s + "'");
    }
}

ParaWeight::ParaWeight(const Rational& r, std::uint32_t p) : v_(r) {
    if (r < Rational(0) || r >= Rational(1)) throw ValidationError("weight " + r.str() + " outside [0,1)");
    if (r.den() % i64(p) == 0) throw ValidationError("weight " + r.str() + " has denominator divisible by p");
}

std::pair<i64, ParaWeight> frac_int_parts(const Rational& q, std::uint32_t p) {
    i64 n = q.floor();
    return {n, ParaWeight(q - Rational(n), p)};
}

}  // namespace parab
