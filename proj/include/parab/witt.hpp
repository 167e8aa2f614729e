#pragma once

#include <utility>

#include "parab/field.hpp"

namespace parab {

// W_2(F_q) realized as the Galois ring (Z/p^2)[t]/(lifted modulus).
// Elements are encoded base p^2 the same way Fq is encoded base p.
class W2Ring {
public:
    static const W2Ring& over(const Field& f);

    const Field& field() const { return *f_; }
    u64 p() const { return f_->p(); }
    u64 p2() const { return p2_; }

    u64 add(u64 a, u64 b) const;
    u64 neg(u64 a) const;
    u64 sub(u64 a, u64 b) const { return add(a, neg(b)); }
    u64 mul(u64 a, u64 b) const;
    u64 pow(u64 a, u64 e) const;
    u64 inv(u64 a) const;  // units only

    u64 lift(u64 fq) const;       // digitwise lift of an F_q code
    u64 reduce(u64 a) const;      // mod p
    u64 times_p(u64 fq) const;    // p * lift(fq)
    bool divisible_by_p(u64 a) const;
    u64 div_p(u64 a) const;       // (a / p) mod p, requires divisibility
    u64 from_int(i64 n) const;

private:
    explicit W2Ring(const Field& f);
    const Field* f_;
    u64 p2_;
};

class Wp2Elem {
public:
    Wp2Elem() = default;
    Wp2Elem(const W2Ring* r, u64 v) : r_(r), v_(v) {}

    static Wp2Elem zero(const Field& f) { return {&W2Ring::over(f), 0}; }
    static Wp2Elem one(const Field& f) { return {&W2Ring::over(f), 1}; }
    static Wp2Elem of(const Field& f, i64 n);
    static Wp2Elem lift(const Fq& a);
    static Wp2Elem teichmuller(const Fq& a);
    static Wp2Elem times_p(const Fq& a);

    const W2Ring& ring() const { return *r_; }
    const Field& field() const { return r_->field(); }
    u64 code() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    Wp2Elem operator+(const Wp2Elem& o) const { return {r_, r_->add(v_, o.v_)}; }
    Wp2Elem operator-(const Wp2Elem& o) const { return {r_, r_->sub(v_, o.v_)}; }
    Wp2Elem operator-() const { return {r_, r_->neg(v_)}; }
    Wp2Elem operator*(const Wp2Elem& o) const { return {r_, r_->mul(v_, o.v_)}; }
    bool operator==(const Wp2Elem& o) const { return r_ == o.r_ && v_ == o.v_; }
    bool operator!=(const Wp2Elem& o) const { return !(*this == o); }
    Wp2Elem pow(u64 e) const { return {r_, r_->pow(v_, e)}; }
    Wp2Elem inv() const { return {r_, r_->inv(v_)}; }
    bool is_unit() const { return r_->reduce(v_) != 0; }

    Fq reduce() const { return {&field(), r_->reduce(v_)}; }
    bool divisible_by_p() const { return r_->divisible_by_p(v_); }
    Fq div_p() const { return {&field(), r_->div_p(v_)}; }

    // Witt coordinates (a0, a1) with x = [a0] + V[a1].
    std::pair<Fq, Fq> witt() const;
    // Witt vector Frobenius (a0, a1) -> (a0^p, a1^p).
    Wp2Elem sigma() const;
    std::string str() const;

private:
    const W2Ring* r_ = nullptr;
    u64 v_ = 0;
};

// [a0] + p * (a1^(1/p)); for F_p this is a0~^p + p*a1.
Wp2Elem wp2_from_witt(const Fq& a0, const Fq& a1);

}  // namespace parab
