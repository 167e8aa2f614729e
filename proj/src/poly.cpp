#include "parab/poly.hpp"

#include <algorithm>

namespace parab {

Poly::Poly(const Field& f, std::vector<u64> codes) : f_(&f), c_(std::move(codes)) { trim(); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const Fq& c) { return Poly(c.field(), {c.code()}); }

Poly Poly::x(const Field& f) { return Poly(f, {0, 1}); }

Poly Poly::monomial(const Fq& c, int n) {
    std::vector<u64> v(n + 1, 0);
    v[n] = c.code();
    return Poly(c.field(), std::move(v));
}

Poly Poly::from_ints(const Field& f, const std::vector<i64>& c) {
    std::vector<u64> v;
    for (i64 a : c) v.push_back(f.from_int(a));
    return Poly(f, std::move(v));
}

Poly Poly::from_coeffs(const std::vector<Fq>& c) {
    if (c.empty()) throw ArithmeticError("from_coeffs needs at least one coefficient for the field");
    std::vector<u64> v;
    for (const Fq& a : c) v.push_back(a.code());
    return Poly(c[0].field(), std::move(v));
}

Poly Poly::linear(const Fq& a) { return Poly(a.field(), {a.field().neg(a.code()), 1}); }

Poly Poly::operator+(const Poly& o) const {
    if (f_ != o.f_) {
        if (is_zero() && !f_) return o;
        if (o.is_zero() && !o.f_) return *this;
        throw ArithmeticError("poly field mismatch");
    }
    std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u64 a = i < c_.size() ? c_[i] : 0, b = i < o.c_.size() ? o.c_[i] : 0;
        r[i] = f_->add(a, b);
    }
    return Poly(*f_, std::move(r));
}

Poly Poly::operator-() const {
    std::vector<u64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = f_->neg(c_[i]);
    Poly out;
    out.f_ = f_;
    out.c_ = std::move(r);
    return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (f_ != o.f_) throw ArithmeticError("poly field mismatch");
    if (is_zero() || o.is_zero()) return Poly(*f_);
    size_t n = c_.size() + o.c_.size() - 1;
    if (f_->k() == 1) {
        u64 p = f_->p();
        std::vector<u64> acc(n, 0);
        // products are below 2^32, so a few thousand terms fit before reducing
        size_t since = 0;
        for (size_t i = 0; i < c_.size(); ++i) {
            u64 a = c_[i];
            if (a) {
                for (size_t j = 0; j < o.c_.size(); ++j) acc[i + j] += a * o.c_[j];
            }
            if (++since == 1024) {
                for (auto& v : acc) v %= p;
                since = 0;
            }
        }
        for (auto& v : acc) v %= p;
        return Poly(*f_, std::move(acc));
    }
    std::vector<u64> r(n, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = f_->add(r[i + j], f_->mul(c_[i], o.c_[j]));
    }
    return Poly(*f_, std::move(r));
}

Poly Poly::operator*(const Fq& c) const {
    std::vector<u64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = f_->mul(c_[i], c.code());
    return Poly(*f_, std::move(r));
}

bool Poly::operator<(const Poly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (int i = int(c_.size()) - 1; i >= 0; --i)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& o) const {
    if (o.is_zero()) throw ArithmeticError("polynomial division by zero");
    if (f_ != o.f_) throw ArithmeticError("poly field mismatch");
    if (deg() < o.deg()) return {Poly(*f_), *this};
    std::vector<u64> r = c_, q(c_.size() - o.c_.size() + 1, 0);
    u64 li = f_->inv(o.c_.back());
    int dd = o.deg();
    for (int i = int(r.size()) - 1; i >= dd; --i) {
        u64 c = f_->mul(r[i], li);
        if (!c) continue;
        q[i - dd] = c;
        for (int j = 0; j <= dd; ++j) r[i - dd + j] = f_->sub(r[i - dd + j], f_->mul(c, o.c_[j]));
    }
    r.resize(dd);
    return {Poly(*f_, std::move(q)), Poly(*f_, std::move(r))};
}

Poly Poly::exact_div(const Poly& o) const {
    auto [q, r] = divmod(o);
    if (!r.is_zero()) throw ArithmeticError("inexact polynomial division");
    return q;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * lc().inv();
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(*f_);
    std::vector<u64> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = f_->mul(c_[i], f_->from_int(i64(i)));
    return Poly(*f_, std::move(r));
}

Fq Poly::eval(const Fq& a) const {
    if (a.field_ptr() != f_) throw ArithmeticError("eval field mismatch");
    u64 r = 0;
    for (int i = int(c_.size()) - 1; i >= 0; --i) r = f_->add(f_->mul(r, a.code()), c_[i]);
    return {f_, r};
}

Poly Poly::compose(const Poly& g) const {
    Poly r(*f_);
    for (int i = int(c_.size()) - 1; i >= 0; --i) r = r * g + Poly(*f_, {c_[i]});
    return r;
}

Poly Poly::pow(u64 n) const {
    Poly r(*f_, {1}), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

Poly Poly::shift(int n) const {
    if (is_zero()) return *this;
    std::vector<u64> r(n, 0);
    r.insert(r.end(), c_.begin(), c_.end());
    return Poly(*f_, std::move(r));
}

Poly Poly::subs_power(int n) const {
    if (is_zero()) return *this;
    std::vector<u64> r(size_t(deg()) * n + 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i * n] = c_[i];
    return Poly(*f_, std::move(r));
}

Poly Poly::taylor_shift(const Fq& a) const {
    if (a.is_zero()) return *this;
    return compose(Poly(*f_, {a.code(), 1}));
}

Poly Poly::reverse(int n) const {
    std::vector<u64> r(n + 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) r[n - i] = c_[i];
    return Poly(*f_, std::move(r));
}

Poly Poly::truncate(int n) const {
    std::vector<u64> r(c_.begin(), c_.begin() + std::min<size_t>(c_.size(), size_t(std::max(n, 0))));
    return Poly(*f_, std::move(r));
}

Poly Poly::map_coeffs_frob(int times) const {
    std::vector<u64> r = c_;
    for (auto& v : r)
        for (int t = 0; t < times; ++t) v = f_->pow(v, f_->p());
    return Poly(*f_, std::move(r));
}

int Poly::valuation() const {
    if (is_zero()) return 1 << 28;
    int v = 0;
    while (c_[v] == 0) ++v;
    return v;
}

int Poly::order_at(const Fq& a) const {
    if (is_zero()) return 1 << 28;
    return taylor_shift(a).valuation();
}

bool Poly::is_pth_power_argument() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] && i % f_->p()) return false;
    return true;
}

Poly Poly::unfrob() const {
    if (!is_pth_power_argument()) throw ArithmeticError("polynomial is not a function of x^p");
    std::vector<u64> r;
    for (size_t i = 0; i < c_.size(); i += f_->p()) r.push_back(c_[i]);
    return Poly(*f_, std::move(r));
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = deg(); i >= 0; --i) {
        if (!c_[i]) continue;
        if (!s.empty()) s += " + ";
        Fq c(f_, c_[i]);
        if (i == 0) s += c.str();
        else {
            if (c_[i] != 1) s += c.str() + "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

XGcd xgcd(const Poly& a, const Poly& b) {
    const Field& f = a.field();
    Poly r0 = a, r1 = b, s0(f, {1}), s1(f), t0(f), t1(f, {1});
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Fq li = r0.lc().inv();
    return {r0 * li, s0 * li, t0 * li};
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& mod) { return (a * b) % mod; }

Poly powmod(const Poly& base, u64 e, const Poly& mod) {
    Poly r = Poly(base.field(), {1}) % mod, b = base % mod;
    while (e) {
        if (e & 1) r = mulmod(r, b, mod);
        e >>= 1;
        if (e) b = mulmod(b, b, mod);
    }
    return r;
}

Poly invmod(const Poly& a, const Poly& m) {
    XGcd g = xgcd(a % m, m);
    if (!g.g.is_one()) throw ArithmeticError("polynomial not invertible modulo m");
    return g.s % m;
}

}  // namespace parab
