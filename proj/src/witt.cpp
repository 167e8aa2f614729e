#include "parab/witt.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace parab {

const W2Ring& W2Ring::over(const Field& f) {
    static std::mutex mu;
    static std::map<const Field*, std::unique_ptr<W2Ring>> reg;
    std::lock_guard<std::mutex> lock(mu);
    auto it = reg.find(&f);
    if (it != reg.end()) return *it->second;
    auto r = std::unique_ptr<W2Ring>(new W2Ring(f));
    auto& ref = *r;
    reg.emplace(&f, std::move(r));
    return ref;
}

W2Ring::W2Ring(const Field& f) : f_(&f), p2_(u64(f.p()) * f.p()) {
    long double size = 1;
    for (int i = 0; i < f.k(); ++i) size *= (long double)p2_;
    if (size > 9.0e18L) throw ValidationError("W2 ring over " + f.name() + " too large for the encoding");
}

u64 W2Ring::add(u64 a, u64 b) const {
    if (f_->k() == 1) return (a + b) % p2_;
    u64 r = 0, pw = 1;
    for (int i = 0; i < f_->k(); ++i) {
        r += ((a % p2_ + b % p2_) % p2_) * pw;
        pw *= p2_;
        a /= p2_;
        b /= p2_;
    }
    return r;
}

u64 W2Ring::neg(u64 a) const {
    if (f_->k() == 1) return (p2_ - a % p2_) % p2_;
    u64 r = 0, pw = 1;
    for (int i = 0; i < f_->k(); ++i) {
        r += ((p2_ - a % p2_) % p2_) * pw;
        pw *= p2_;
        a /= p2_;
    }
    return r;
}

u64 W2Ring::mul(u64 a, u64 b) const {
    int k = f_->k();
    if (k == 1) return a * b % p2_;
    std::vector<u64> x(k), y(k), r(2 * k - 1, 0);
    for (int i = 0; i < k; ++i) {
        x[i] = a % p2_;
        a /= p2_;
        y[i] = b % p2_;
        b /= p2_;
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p2_;
    const auto& m = f_->modulus();
    for (int d = 2 * k - 2; d >= k; --d) {
        u64 c = r[d];
        if (!c) continue;
        r[d] = 0;
        for (int i = 0; i < k; ++i) r[d - k + i] = (r[d - k + i] + (p2_ - c) * m[i]) % p2_;
    }
    u64 v = 0;
    for (int i = k - 1; i >= 0; --i) v = v * p2_ + r[i];
    return v;
}

u64 W2Ring::pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

u64 W2Ring::inv(u64 a) const {
    u64 a0 = reduce(a);
    if (a0 == 0) throw ArithmeticError("non-unit in W2");
    u64 b = lift(f_->inv(a0));
    // one Newton step doubles the p-adic precision
    return mul(b, sub(from_int(2), mul(a, b)));
}

u64 W2Ring::lift(u64 fq) const {
    u64 r = 0, pw = 1;
    for (int i = 0; i < f_->k(); ++i) {
        r += (fq % f_->p()) * pw;
        pw *= p2_;
        fq /= f_->p();
    }
    return r;
}

u64 W2Ring::reduce(u64 a) const {
    u64 r = 0, pw = 1;
    for (int i = 0; i < f_->k(); ++i) {
        r += (a % p2_ % f_->p()) * pw;
        pw *= f_->p();
        a /= p2_;
    }
    return r;
}

u64 W2Ring::times_p(u64 fq) const { return mul(lift(fq), f_->p()); }

bool W2Ring::divisible_by_p(u64 a) const { return reduce(a) == 0; }

u64 W2Ring::div_p(u64 a) const {
    if (!divisible_by_p(a)) throw ArithmeticError("W2 element not divisible by p");
    u64 r = 0, pw = 1;
    for (int i = 0; i < f_->k(); ++i) {
        r += (a % p2_ / f_->p()) * pw;
        pw *= f_->p();
        a /= p2_;
    }
    return r;
}

u64 W2Ring::from_int(i64 n) const {
    i64 r = n % i64(p2_);
    if (r < 0) r += i64(p2_);
    return u64(r);
}

Wp2Elem Wp2Elem::of(const Field& f, i64 n) {
    const W2Ring& r = W2Ring::over(f);
    return {&r, r.from_int(n)};
}

Wp2Elem Wp2Elem::lift(const Fq& a) {
    const W2Ring& r = W2Ring::over(a.field());
    return {&r, r.lift(a.code())};
}

Wp2Elem Wp2Elem::teichmuller(const Fq& a) {
    // lift^q is independent of the lift and fixed by x -> x^q
    return lift(a).pow(a.field().q());
}

Wp2Elem Wp2Elem::times_p(const Fq& a) {
    const W2Ring& r = W2Ring::over(a.field());
    return {&r, r.times_p(a.code())};
}

std::pair<Fq, Fq> Wp2Elem::witt() const {
    Fq a0 = reduce();
    Fq b = (*this - teichmuller(a0)).div_p();
    return {a0, b.frob()};
}

Wp2Elem Wp2Elem::sigma() const {
    Fq a0 = reduce();
    Fq b = (*this - teichmuller(a0)).div_p();
    return teichmuller(a0.frob()) + times_p(b.frob());
}

std::string Wp2Elem::str() const {
    auto [a0, a1] = witt();
    return "(" + a0.str() + "," + a1.str() + ")";
}

Wp2Elem wp2_from_witt(const Fq& a0, const Fq& a1) {
    if (a0.field_ptr() != a1.field_ptr()) throw ArithmeticError("field mismatch");
    const Field& f = a0.field();
    Fq root = a1.pow(f.q() / f.p());
    return Wp2Elem::teichmuller(a0) + Wp2Elem::times_p(root);
}

}  // namespace parab
