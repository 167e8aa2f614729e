#include "parab/ratfn.hpp"

#include <algorithm>

namespace parab {

namespace {

// power series N/D mod t^n, D(0) != 0
std::vector<Fq> series_div(const Poly& n, const Poly& d, int len) {
    const Field& f = d.field();
    std::vector<Fq> out;
    Fq d0inv = d.coeff(0).inv();
    std::vector<Fq> rem(len, f.zero());
    for (int i = 0; i < len; ++i) rem[i] = n.coeff(i);
    for (int i = 0; i < len; ++i) {
        Fq c = rem[i] * d0inv;
        out.push_back(c);
        if (c.is_zero()) continue;
        for (int j = 1; i + j < len && j <= d.deg(); ++j) rem[i + j] -= c * d.coeff(j);
    }
    return out;
}

Poly strip_low(const Poly& p, int v) {
    std::vector<u64> c(p.codes().begin() + v, p.codes().end());
    return Poly(p.field(), std::move(c));
}

}  // namespace

RatFn::RatFn(Poly num) : num_(std::move(num)), den_(num_.field(), {1}) {}

RatFn::RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

void RatFn::normalize() {
    if (den_.is_zero()) throw ArithmeticError("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly(den_.field(), {1});
        return;
    }
    if (!den_.is_constant()) {
        Poly g = gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_.exact_div(g);
            den_ = den_.exact_div(g);
        }
    }
    Fq l = den_.lc();
    if (!l.is_one()) {
        Fq li = l.inv();
        num_ = num_ * li;
        den_ = den_ * li;
    }
}

RatFn RatFn::linear_power(const Fq& a, int n) {
    Poly l = Poly::linear(a);
    if (n >= 0) return RatFn(l.pow(u64(n)));
    return RatFn(Poly(a.field(), {1}), l.pow(u64(-n)));
}

RatFn RatFn::operator+(const RatFn& o) const {
    if (den_ == o.den_) return RatFn(num_ + o.num_, den_);
    if (den_.is_one()) {
        RatFn r;
        r.num_ = num_ * o.den_ + o.num_;
        r.den_ = o.den_;
        return r;  // already coprime
    }
    if (o.den_.is_one()) {
        RatFn r;
        r.num_ = num_ + o.num_ * den_;
        r.den_ = den_;
        return r;
    }
    return RatFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFn RatFn::operator-() const {
    RatFn r = *this;
    r.num_ = -num_;
    return r;
}

RatFn RatFn::operator-(const RatFn& o) const { return *this + (-o); }

RatFn RatFn::operator*(const RatFn& o) const {
    if (is_zero() || o.is_zero()) return RatFn(field());
    if (den_.is_one() && o.den_.is_one()) return RatFn(num_ * o.num_);
    // cross-cancel keeps the pieces small
    Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
    RatFn r;
    r.num_ = num_.exact_div(g1) * o.num_.exact_div(g2);
    r.den_ = den_.exact_div(g2) * o.den_.exact_div(g1);
    Fq l = r.den_.lc();
    if (!l.is_one()) {
        r.num_ = r.num_ * l.inv();
        r.den_ = r.den_ * l.inv();
    }
    return r;
}

RatFn RatFn::operator*(const Fq& c) const {
    if (c.is_zero()) return RatFn(field());
    RatFn r = *this;
    r.num_ = num_ * c;
    return r;
}

RatFn RatFn::inv() const {
    if (is_zero()) throw ArithmeticError("inverse of zero rational function");
    return RatFn(den_, num_);
}

RatFn RatFn::operator/(const RatFn& o) const { return *this * o.inv(); }

RatFn RatFn::pow(int n) const {
    if (n < 0) return inv().pow(-n);
    RatFn r;
    r.num_ = num_.pow(u64(n));
    r.den_ = den_.pow(u64(n));
    return r;
}

RatFn RatFn::derivative() const {
    return RatFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFn RatFn::subs_power(int n) const {
    RatFn r;
    r.num_ = num_.subs_power(n);
    r.den_ = den_.subs_power(n);
    return r;
}

bool RatFn::is_pth_power_argument() const {
    return num_.is_pth_power_argument() && den_.is_pth_power_argument();
}

RatFn RatFn::unfrob() const {
    RatFn r;
    r.num_ = num_.unfrob();
    r.den_ = den_.unfrob();
    return r;
}

RatFn RatFn::compose(const RatFn& g) const {
    // f(g) for f = N/D: homogenize with g = a/b
    int d = std::max(num_.deg(), den_.deg());
    const Poly& a = g.num();
    const Poly& b = g.den();
    auto hom = [&](const Poly& p) {
        Poly acc(field());
        Poly apow(field(), {1});
        std::vector<Poly> bpows(d + 1, Poly(field(), {1}));
        for (int i = 1; i <= d; ++i) bpows[i] = bpows[i - 1] * b;
        for (int i = 0; i <= p.deg(); ++i) {
            acc += apow * bpows[d - i] * p.coeff(i);
            apow = apow * a;
        }
        return acc;
    };
    if (is_zero()) return *this;
    return RatFn(hom(num_), hom(den_));
}

RatFn RatFn::map_coeffs_frob(int times) const {
    return RatFn(num_.map_coeffs_frob(times), den_.map_coeffs_frob(times));
}

Fq RatFn::eval(const Fq& a) const {
    Fq d = den_.eval(a);
    if (d.is_zero()) throw ArithmeticError("pole at " + a.str() + " of " + str());
    return num_.eval(a) / d;
}

Fq RatFn::eval_inf() const {
    if (num_.deg() > den_.deg()) throw ArithmeticError("pole at infinity of " + str());
    if (num_.deg() < den_.deg()) return field().zero();
    return num_.lc() / den_.lc();
}

int RatFn::order_at(const Fq& a) const {
    if (is_zero()) return 1 << 28;
    return num_.order_at(a) - den_.order_at(a);
}

int RatFn::order_at_inf() const {
    if (is_zero()) return 1 << 28;
    return den_.deg() - num_.deg();
}

std::pair<int, std::vector<Fq>> RatFn::laurent(const Fq& a, int n) const {
    if (is_zero()) return {0, std::vector<Fq>(n, field().zero())};
    Poly N = num_.taylor_shift(a), D = den_.taylor_shift(a);
    int vn = N.valuation(), vd = D.valuation();
    return {vn - vd, series_div(strip_low(N, vn), strip_low(D, vd), n)};
}

std::pair<int, std::vector<Fq>> RatFn::laurent_inf(int n) const {
    if (is_zero()) return {0, std::vector<Fq>(n, field().zero())};
    Poly N = num_.reverse(num_.deg()), D = den_.reverse(den_.deg());
    return {den_.deg() - num_.deg(), series_div(N, D, n)};
}

Fq RatFn::residue(const Fq& a) const {
    int v = order_at(a);
    if (v >= 0) return field().zero();
    auto [val, c] = laurent(a, -v);
    return c[-1 - val];
}

Fq RatFn::residue_inf() const {
    // x = 1/t, dx = -dt/t^2: minus the t^1 coefficient of f(1/t)
    int v = order_at_inf();
    if (v > 1) return field().zero();
    auto [val, c] = laurent_inf(2 - v);
    return -c[1 - val];
}

std::string RatFn::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.field());
    return (a * b.exact_div(gcd(a, b))).monic();
}

std::vector<std::vector<u64>> coefficient_vectors(const std::vector<RatFn>& fs) {
    if (fs.empty()) return {};
    const Field& f = fs[0].field();
    Poly L(f, {1});
    for (const auto& g : fs) L = lcm(L, g.den());
    std::vector<Poly> nums;
    size_t len = 0;
    for (const auto& g : fs) {
        nums.push_back(g.num() * L.exact_div(g.den()));
        len = std::max(len, nums.back().codes().size());
    }
    std::vector<std::vector<u64>> out;
    for (const auto& n : nums) {
        std::vector<u64> v(len, 0);
        std::copy(n.codes().begin(), n.codes().end(), v.begin());
        out.push_back(std::move(v));
    }
    return out;
}

void append_equations(std::vector<std::vector<u64>>& rows, const std::vector<RatFn>& cols, const RatFn& rhs) {
    std::vector<RatFn> all = cols;
    all.push_back(rhs);
    auto vecs = coefficient_vectors(all);
    if (vecs.empty()) return;
    size_t len = vecs[0].size();
    for (size_t m = 0; m < len; ++m) {
        std::vector<u64> row(all.size());
        bool nz = false;
        for (size_t u = 0; u < all.size(); ++u) {
            row[u] = vecs[u][m];
            nz = nz || row[u];
        }
        if (nz) rows.push_back(std::move(row));
    }
}

}  // namespace parab
