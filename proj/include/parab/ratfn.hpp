#pragma once

#include <string>
#include <utility>
#include <vector>

#include "parab/poly.hpp"

namespace parab {

// num/den with gcd 1 and den monic; zero is 0/1.
class RatFn {
public:
    RatFn() = default;
    explicit RatFn(const Field& f) : num_(f), den_(f, {1}) {}
    RatFn(Poly num);  // NOLINT(google-explicit-constructor)
    RatFn(Poly num, Poly den);

    static RatFn constant(const Fq& c) { return RatFn(Poly::constant(c)); }
    static RatFn x(const Field& f) { return RatFn(Poly::x(f)); }
    static RatFn zero(const Field& f) { return RatFn(f); }
    static RatFn one(const Field& f) { return RatFn(Poly(f, {1})); }
    // (x - a)^n for any integer n
    static RatFn linear_power(const Fq& a, int n);

    const Field& field() const { return num_.field(); }
    const Field* field_ptr() const { return num_.field_ptr(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_poly() const { return den_.is_one(); }
    bool is_constant() const { return den_.is_one() && num_.is_constant(); }

    RatFn operator+(const RatFn& o) const;
    RatFn operator-(const RatFn& o) const;
    RatFn operator-() const;
    RatFn operator*(const RatFn& o) const;
    RatFn operator/(const RatFn& o) const;
    RatFn operator*(const Fq& c) const;
    RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
    RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
    RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
    bool operator==(const RatFn& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFn& o) const { return !(*this == o); }

    RatFn inv() const;
    RatFn pow(int n) const;
    RatFn derivative() const;
    RatFn subs_power(int n) const;  // f(x^n)
    // f = g(x^p): returns g.
    RatFn unfrob() const;
    bool is_pth_power_argument() const;
    RatFn compose(const RatFn& g) const;
    RatFn map_coeffs_frob(int times) const;

    Fq eval(const Fq& a) const;
    Fq eval_inf() const;
    int order_at(const Fq& a) const;
    int order_at_inf() const;
    // f = sum_{i<n} c_i t^(v+i) + ..., t = x - a; returns (v, c).
    std::pair<int, std::vector<Fq>> laurent(const Fq& a, int n) const;
    // same with t = 1/x
    std::pair<int, std::vector<Fq>> laurent_inf(int n) const;
    // residue of f dx
    Fq residue(const Fq& a) const;
    Fq residue_inf() const;

    std::string str() const;

private:
    void normalize();
    Poly num_, den_;
};

Poly lcm(const Poly& a, const Poly& b);
// Numerators over a common denominator, as equal-length coefficient vectors.
std::vector<std::vector<u64>> coefficient_vectors(const std::vector<RatFn>& fs);
// Appends the rows of sum_u c_u cols[u] = rhs, augmented with rhs as the last column.
void append_equations(std::vector<std::vector<u64>>& rows, const std::vector<RatFn>& cols, const RatFn& rhs);

}  // namespace parab
