#pragma once

#include <vector>

#include "parab/ratfn.hpp"
#include "parab/witt.hpp"

namespace parab {

// Polynomial over W_2(F_q).
class W2Poly {
public:
    W2Poly() = default;
    explicit W2Poly(const W2Ring& r) : r_(&r) {}
    W2Poly(const W2Ring& r, std::vector<u64> c);

    static W2Poly lift(const Poly& f);
    static W2Poly constant(const Wp2Elem& c);
    static W2Poly x(const Field& f);

    const W2Ring& ring() const { return *r_; }
    int deg() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Wp2Elem coeff(int i) const { return {r_, (i >= 0 && i < int(c_.size())) ? c_[i] : 0}; }

    W2Poly operator+(const W2Poly& o) const;
    W2Poly operator-(const W2Poly& o) const;
    W2Poly operator*(const W2Poly& o) const;
    W2Poly operator*(const Wp2Elem& c) const;
    W2Poly pow(u64 n) const;
    W2Poly derivative() const;
    Wp2Elem eval(const Wp2Elem& a) const;
    bool operator==(const W2Poly& o) const { return r_ == o.r_ && c_ == o.c_; }

    Poly reduce() const;
    bool divisible_by_p() const;
    Poly div_p() const;

private:
    void trim();
    const W2Ring* r_ = nullptr;
    std::vector<u64> c_;
};

// Unnormalized quotient of W2 polynomials; the denominator must be a unit mod p.
struct W2RatFn {
    W2Poly num, den;

    W2RatFn operator-(const W2RatFn& o) const { return {num * o.den - o.num * den, den * o.den}; }
    W2RatFn operator+(const W2RatFn& o) const { return {num * o.den + o.num * den, den * o.den}; }
    W2RatFn operator*(const W2RatFn& o) const { return {num * o.num, den * o.den}; }
    W2RatFn derivative() const { return {num.derivative() * den - num * den.derivative(), den * den}; }
    RatFn reduce() const { return RatFn(num.reduce(), den.reduce()); }
    // (num / p) / den mod p; throws unless the numerator is divisible by p.
    RatFn div_p() const { return RatFn(num.div_p(), den.reduce()); }
    Wp2Elem eval(const Wp2Elem& a) const { return num.eval(a) * den.eval(a).inv(); }
};

}  // namespace parab
