#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace parab {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct ArithmeticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class Fq;

// F_{p^k}. Elements are encoded as v = sum c_i p^i where c_i are the
// coordinates in the power basis of t = root of the defining polynomial.
class Field {
public:
    // Interned; the returned reference lives for the whole program.
    static const Field& get(std::uint32_t p, int k = 1);

    std::uint32_t p() const { return p_; }
    int k() const { return k_; }
    u64 q() const { return q_; }
    // Monic defining polynomial, coefficients low to high (size k+1).
    const std::vector<std::uint32_t>& modulus() const { return mod_; }

    u64 add(u64 a, u64 b) const {
        if (k_ == 1) { u64 s = a + b; return s >= p_ ? s - p_ : s; }
        return add_slow(a, b);
    }
    u64 neg(u64 a) const {
        if (k_ == 1) return a == 0 ? 0 : p_ - a;
        return neg_slow(a);
    }
    u64 sub(u64 a, u64 b) const { return add(a, neg(b)); }
    u64 mul(u64 a, u64 b) const {
        if (k_ == 1) return a * b % p_;
        if (a == 0 || b == 0) return 0;
        if (!exp_.empty()) return exp_[log_[a] + log_[b]];
        return mul_slow(a, b);
    }
    u64 inv(u64 a) const;
    u64 pow(u64 a, u64 e) const;
    u64 from_int(i64 n) const;

    std::vector<std::uint32_t> digits(u64 a) const;
    u64 encode(const std::vector<std::uint32_t>& d) const;

    Fq zero() const;
    Fq one() const;
    Fq elem(u64 code) const;
    Fq of(i64 n) const;
    // The class of t (generator of the power basis); equals of(0) shifted for k=1.
    Fq gen() const;
    Fq random(std::mt19937_64& rng) const;
    std::vector<Fq> elements() const;

    std::string name() const;

private:
    Field(std::uint32_t p, int k);
    u64 add_slow(u64 a, u64 b) const;
    u64 neg_slow(u64 a) const;
    u64 mul_slow(u64 a, u64 b) const;

    std::uint32_t p_;
    int k_;
    u64 q_;
    std::vector<std::uint32_t> mod_;
    std::vector<std::uint32_t> log_;
    std::vector<u64> exp_;
};

bool is_prime(u64 n);

class Fq {
public:
    Fq() = default;
    Fq(const Field* f, u64 v) : f_(f), v_(v) {}

    const Field& field() const { return *f_; }
    const Field* field_ptr() const { return f_; }
    u64 code() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Fq operator+(const Fq& o) const { check(o); return {f_, f_->add(v_, o.v_)}; }
    Fq operator-(const Fq& o) const { check(o); return {f_, f_->sub(v_, o.v_)}; }
    Fq operator-() const { return {f_, f_->neg(v_)}; }
    Fq operator*(const Fq& o) const { check(o); return {f_, f_->mul(v_, o.v_)}; }
    Fq operator/(const Fq& o) const { check(o); return {f_, f_->mul(v_, f_->inv(o.v_))}; }
    Fq& operator+=(const Fq& o) { return *this = *this + o; }
    Fq& operator-=(const Fq& o) { return *this = *this - o; }
    Fq& operator*=(const Fq& o) { return *this = *this * o; }
    Fq& operator/=(const Fq& o) { return *this = *this / o; }
    bool operator==(const Fq& o) const { return f_ == o.f_ && v_ == o.v_; }
    bool operator!=(const Fq& o) const { return !(*this == o); }
    bool operator<(const Fq& o) const { return v_ < o.v_; }

    Fq inv() const { return {f_, f_->inv(v_)}; }
    Fq pow(u64 e) const { return {f_, f_->pow(v_, e)}; }
    Fq pow_signed(i64 e) const { return e >= 0 ? pow(u64(e)) : inv().pow(u64(-e)); }
    Fq frob() const { return pow(f_->p()); }
    // Lies in the prime field.
    bool in_prime_field() const { return v_ < f_->p(); }

    std::vector<std::uint32_t> coords() const { return f_->digits(v_); }
    std::string str() const;

private:
    void check(const Fq& o) const {
        if (f_ != o.f_) throw ArithmeticError("field mismatch");
    }
    const Field* f_ = nullptr;
    u64 v_ = 0;
};

}  // namespace parab
