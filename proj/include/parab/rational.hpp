#pragma once

#include <compare>
#include <string>
#include <utility>

#include "parab/field.hpp"

namespace parab {

class Rational {
public:
    Rational(i64 n = 0, i64 d = 1);

    i64 num() const { return n_; }
    i64 den() const { return d_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator-() const { return Rational(-n_, d_); }
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    bool operator==(const Rational& o) const { return n_ == o.n_ && d_ == o.d_; }
    std::strong_ordering operator<=>(const Rational& o) const;

    bool is_zero() const { return n_ == 0; }
    bool is_integer() const { return d_ == 1; }
    i64 floor() const;
    Rational frac() const { return *this - Rational(floor()); }
    // Image in F_p; the denominator must be prime to p.
    Fq to_field(const Field& f) const;
    std::string str() const;
    static Rational parse(const std::string& s);

private:
    i64 n_, d_;
};

// A weight in [0, 1) with denominator prime to the characteristic.
class ParaWeight {
public:
    ParaWeight() = default;
    ParaWeight(const Rational& r, std::uint32_t p);
    const Rational& value() const { return v_; }
    bool operator==(const ParaWeight& o) const { return v_ == o.v_; }
    auto operator<=>(const ParaWeight& o) const { return v_ <=> o.v_; }

private:
    Rational v_;
};

// q = integer + fractional with fractional in [0, 1).
std::pair<i64, ParaWeight> frac_int_parts(const Rational& q, std::uint32_t p);

}  // namespace parab
