#pragma once

#include <string>
#include <utility>
#include <vector>

#include "parab/field.hpp"

namespace parab {

// Univariate polynomial over F_q; coefficient codes low to high, no trailing zeros.
class Poly {
public:
    Poly() = default;
    explicit Poly(const Field& f) : f_(&f) {}
    Poly(const Field& f, std::vector<u64> codes);

    static Poly constant(const Fq& c);
    static Poly x(const Field& f);
    static Poly monomial(const Fq& c, int n);
    static Poly from_ints(const Field& f, const std::vector<i64>& c);
    static Poly from_coeffs(const std::vector<Fq>& c);
    // (x - a)
    static Poly linear(const Fq& a);

    const Field& field() const { return *f_; }
    const Field* field_ptr() const { return f_; }
    int deg() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    Fq coeff(int i) const { return {f_, (i >= 0 && i < int(c_.size())) ? c_[i] : 0}; }
    Fq lc() const { return coeff(deg()); }
    const std::vector<u64>& codes() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Fq& c) const;
    Poly operator/(const Poly& o) const { return divmod(o).first; }
    Poly operator%(const Poly& o) const { return divmod(o).second; }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    bool operator==(const Poly& o) const { return f_ == o.f_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    bool operator<(const Poly& o) const;

    std::pair<Poly, Poly> divmod(const Poly& o) const;
    // Exact division; throws if there is a remainder.
    Poly exact_div(const Poly& o) const;
    Poly monic() const;
    Poly derivative() const;
    Fq eval(const Fq& a) const;
    Poly compose(const Poly& g) const;
    Poly pow(u64 n) const;
    Poly shift(int n) const;          // times x^n, n >= 0
    Poly subs_power(int n) const;     // f(x^n)
    Poly taylor_shift(const Fq& a) const;  // f(x + a)
    Poly reverse(int n) const;        // x^n f(1/x), n >= deg
    Poly truncate(int n) const;       // mod x^n
    Poly map_coeffs_frob(int times) const;  // apply a -> a^p to coefficients
    int valuation() const;            // order at x = 0; large for zero
    int order_at(const Fq& a) const;  // multiplicity of (x - a)
    // f(x) = g(x^p): returns g, or throws.
    Poly unfrob() const;
    bool is_pth_power_argument() const;  // only exponents divisible by p

    std::string str(const std::string& var = "x") const;

private:
    void trim();
    const Field* f_ = nullptr;
    std::vector<u64> c_;
};

Poly gcd(const Poly& a, const Poly& b);
// returns (g, s, t) with s a + t b = g monic
struct XGcd {
    Poly g, s, t;
};
XGcd xgcd(const Poly& a, const Poly& b);
Poly powmod(const Poly& base, u64 e, const Poly& mod);
Poly mulmod(const Poly& a, const Poly& b, const Poly& mod);
// Inverse of a modulo m (gcd must be 1).
Poly invmod(const Poly& a, const Poly& m);

}  // namespace parab
