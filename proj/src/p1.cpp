#include "parab/p1.hpp"

#include <algorithm>

namespace parab {

const Fq& PointP1::coord() const {
    if (inf_) throw ArithmeticError("the point at infinity has no affine coordinate");
    return a_;
}

PointP1 PointP1::untwist() const {
    if (inf_) return *this;
    Fq a = a_;
    for (int i = 1; i < a_.field().k(); ++i) a = a.frob();
    return finite(a);
}

bool PointP1::operator<(const PointP1& o) const {
    if (inf_ != o.inf_) return !inf_;
    return !inf_ && a_.code() < o.a_.code();
}

int order_at(const RatFn& f, const PointP1& P) {
    return P.is_inf() ? f.order_at_inf() : f.order_at(P.coord());
}

Fq value_at(const RatFn& f, const PointP1& P) { return P.is_inf() ? f.eval_inf() : f.eval(P.coord()); }

Divisor::Divisor(std::vector<PointP1> pts) : pts_(std::move(pts)) {
    for (size_t i = 0; i < pts_.size(); ++i)
        for (size_t j = i + 1; j < pts_.size(); ++j)
            if (pts_[i] == pts_[j]) throw ValidationError("divisor points collide at " + pts_[i].str());
}

bool Divisor::contains(const PointP1& P) const { return index_of(P) >= 0; }

int Divisor::index_of(const PointP1& P) const {
    for (size_t i = 0; i < pts_.size(); ++i)
        if (pts_[i] == P) return int(i);
    return -1;
}

Chart::Chart(std::string id, const Field& f, std::vector<PointP1> excluded)
    : id_(std::move(id)), f_(&f), excl_(std::move(excluded)) {
    if (excl_.empty()) throw ValidationError("chart " + id_ + " must exclude at least one point");
    std::sort(excl_.begin(), excl_.end());
    for (size_t i = 1; i < excl_.size(); ++i)
        if (excl_[i] == excl_[i - 1]) throw ValidationError("repeated excluded point in chart " + id_);
}

bool Chart::contains(const PointP1& P) const {
    return std::find(excl_.begin(), excl_.end(), P) == excl_.end();
}

bool Chart::excludes_inf() const { return excl_.back().is_inf(); }

const Fq& Chart::base_point() const {
    for (const auto& P : excl_)
        if (!P.is_inf()) return P.coord();
    throw ArithmeticError("chart " + id_ + " has no excluded finite point");
}

RatFn Chart::coordinate() const {
    if (excludes_inf()) return RatFn::x(*f_);
    return RatFn::linear_power(base_point(), -1);
}

RatFn Chart::section(const PointP1& P) const {
    if (!contains(P)) throw ValidationError("point " + P.str() + " not in chart " + id_);
    for (const auto& [Q, s] : sections_)
        if (Q == P) return s;
    if (P.is_inf()) return RatFn::linear_power(base_point(), -1);
    RatFn s = RatFn::linear_power(P.coord(), 1);
    if (excludes_inf()) return s;
    return s * RatFn::linear_power(base_point(), -1);
}

void Chart::set_section(const PointP1& P, const RatFn& s) {
    if (!contains(P) || order_at(s, P) != 1) throw ValidationError("section must vanish to order 1 at " + P.str());
    RatFn adj = P.is_inf() ? s : s * RatFn::linear_power(P.coord(), -1);
    bool ok = adj.num().is_constant() && is_regular(s);
    if (!excludes_inf() && !P.is_inf()) ok = ok && s.order_at_inf() == 0;
    if (!ok) throw ValidationError("section at " + P.str() + " must be a unit elsewhere on chart " + id_);
    for (auto& [Q, t] : sections_)
        if (Q == P) {
            t = s;
            return;
        }
    sections_.emplace_back(P, s);
}

bool Chart::is_regular(const RatFn& f) const {
    Poly d = f.den();
    for (const auto& Q : excl_) {
        if (Q.is_inf()) continue;
        while (d.deg() > 0 && d.eval(Q.coord()).is_zero()) d = d.exact_div(Poly::linear(Q.coord()));
    }
    if (d.deg() > 0) return false;
    if (!excludes_inf() && f.order_at_inf() < 0) return false;
    return true;
}

bool Chart::is_unit(const RatFn& f) const { return !f.is_zero() && is_regular(f) && is_regular(f.inv()); }

bool Chart::is_regular(const RMat& m) const {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!is_regular(m(i, j))) return false;
    return true;
}

std::vector<RatFn> Chart::ring_basis(int bound) const {
    std::vector<RatFn> out;
    out.push_back(RatFn::one(*f_));
    if (excludes_inf())
        for (int k = 1; k <= bound; ++k) out.push_back(RatFn::x(*f_).pow(k));
    for (const auto& Q : excl_) {
        if (Q.is_inf()) continue;
        for (int k = 1; k <= bound; ++k) out.push_back(RatFn::linear_power(Q.coord(), -k));
    }
    return out;
}

Chart Chart::twist() const {
    std::vector<PointP1> ex;
    for (const auto& P : excl_) ex.push_back(P.twist());
    Chart c(id_, *f_, ex);
    for (const auto& [Q, s] : sections_) c.sections_.emplace_back(Q.twist(), s.map_coeffs_frob(1));
    return c;
}

Chart Chart::untwist() const {
    std::vector<PointP1> ex;
    for (const auto& P : excl_) ex.push_back(P.untwist());
    Chart c(id_, *f_, ex);
    int k = f_->k();
    for (const auto& [Q, s] : sections_) c.sections_.emplace_back(Q.untwist(), s.map_coeffs_frob(k - 1));
    return c;
}

void Cover::validate() const {
    if (charts.empty()) throw ValidationError("empty cover");
    // every excluded point of one chart must lie in some other chart
    for (const auto& c : charts)
        for (const auto& P : c.excluded())
            if (charts_containing(P).empty() && std::find(omitted.begin(), omitted.end(), P) == omitted.end())
                throw ValidationError("cover misses the point " + P.str());
}

std::vector<int> Cover::charts_containing(const PointP1& P) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (charts[i].contains(P)) out.push_back(i);
    return out;
}

namespace {

Chart overlap_chart(const Cover& cv, int i, int j) {
    std::vector<PointP1> ex = cv.charts[i].excluded();
    for (const auto& P : cv.charts[j].excluded())
        if (std::find(ex.begin(), ex.end(), P) == ex.end()) ex.push_back(P);
    return Chart("overlap", *cv.field, ex);
}

}  // namespace

bool Cover::overlap_regular(int i, int j, const RatFn& f) const { return overlap_chart(*this, i, j).is_regular(f); }

bool Cover::overlap_unit(int i, int j, const RatFn& f) const { return overlap_chart(*this, i, j).is_unit(f); }

Cover Cover::twist() const {
    Cover c;
    c.field = field;
    for (const auto& ch : charts) c.charts.push_back(ch.twist());
    for (const auto& P : omitted) c.omitted.push_back(P.twist());
    return c;
}

Cover Cover::untwist() const {
    Cover c;
    c.field = field;
    for (const auto& ch : charts) c.charts.push_back(ch.untwist());
    for (const auto& P : omitted) c.omitted.push_back(P.untwist());
    return c;
}

Divisor twist(const Divisor& D) {
    std::vector<PointP1> pts;
    for (const auto& P : D.points()) pts.push_back(P.twist());
    return Divisor(pts);
}

Divisor untwist(const Divisor& D) {
    std::vector<PointP1> pts;
    for (const auto& P : D.points()) pts.push_back(P.untwist());
    return Divisor(pts);
}

StandardCover standard_cover_4pts(const Fq& lambda0) {
    const Field& f = lambda0.field();
    if (lambda0.is_zero() || lambda0.is_one())
        throw ValidationError("lambda0 = " + lambda0.str() + " collides with a divisor point");
    StandardCover sc;
    sc.lambda0 = lambda0;
    sc.cover.field = &f;
    PointP1 zero = PointP1::finite(f.zero()), one = PointP1::finite(f.one()), lam = PointP1::finite(lambda0),
            inf = PointP1::infinity(f);
    sc.cover.charts.emplace_back("U1", f, std::vector<PointP1>{zero, inf});
    sc.cover.charts.emplace_back("U2", f, std::vector<PointP1>{one, lam});
    RatFn x = RatFn::x(f);
    RatFn xm1 = RatFn::linear_power(f.one(), 1);
    sc.cover.charts[1].set_section(zero, x / xm1);
    sc.cover.charts[1].set_section(inf, xm1.inv());
    sc.divisor = Divisor({zero, one, lam, inf});
    return sc;
}

std::vector<RatFn> h0_basis(const Field& f, int ell) {
    std::vector<RatFn> out;
    for (int k = 0; k <= ell; ++k) out.push_back(RatFn::x(f).pow(-k));
    return out;
}

RatFn transition_scalar(const Field& f, int ell) {
    RatFn x = RatFn::x(f);
    return ((x - RatFn::one(f)) / x).pow(ell);
}

namespace {

void check_cocycle(const StandardCover& sc, const CechCocycle& c) {
    if (!sc.cover.overlap_regular(0, 1, c.rep))
        throw ValidationError("cocycle representative has a pole on the overlap: " + c.rep.str());
}

RatFn tau(const Field& f) {
    RatFn x = RatFn::x(f);
    return x / (x - RatFn::one(f));
}

}  // namespace

std::vector<Fq> h1_reduce(const StandardCover& sc, const CechCocycle& c) {
    const Field& f = *sc.cover.field;
    check_cocycle(sc, c);
    int ell = -c.degree;
    if (ell < 2) return {};
    // c = n / (x^a d) with d(0) != 0; the part B/d with B = n x^-a mod d
    // differs from c by an element of R1
    const Poly& den = c.rep.den();
    int a = den.valuation();
    std::vector<u64> dc(den.codes().begin() + a, den.codes().end());
    Poly d(f, dc);
    RatFn g = RatFn::zero(f);
    if (d.deg() > 0) {
        Poly xa = Poly::x(f).pow(u64(a)) % d;
        Poly B = (c.rep.num() % d) * invmod(xa, d) % d;
        g = RatFn(B, d);
    }
    // modulo tau^l R2 and constants only the Taylor coefficients 1..l-1 at 0 survive
    auto [v, tc] = g.laurent(f.zero(), ell + 1);
    std::vector<Fq> coeff(ell, f.zero());
    for (int m = 0; m < ell; ++m) {
        int idx = m - v;
        if (idx >= 0 && idx < int(tc.size())) coeff[m] = tc[idx];
    }
    // tau^j = (-1)^j x^j (1-x)^-j; expansion coefficients T[j][m]
    std::vector<std::vector<Fq>> T(ell, std::vector<Fq>(ell, f.zero()));
    for (int j = 1; j < ell; ++j) {
        auto [vj, cj] = tau(f).pow(j).laurent(f.zero(), ell);
        for (int m = j; m < ell; ++m) T[j][m] = cj[m - vj];
    }
    std::vector<Fq> out(ell - 1, f.zero());
    for (int m = 1; m < ell; ++m) {
        Fq r = coeff[m];
        for (int j = 1; j < m; ++j) r -= out[j - 1] * T[j][m];
        out[m - 1] = r / T[m][m];
    }
    return out;
}

std::vector<Fq> h1_reduce_oracle(const StandardCover& sc, const CechCocycle& c) {
    const Field& f = *sc.cover.field;
    check_cocycle(sc, c);
    int ell = -c.degree;
    if (ell < 2) return {};
    int K = 4 * int(f.p());
    K = std::max({K, c.rep.den().deg() + ell + 2, c.rep.num().deg() + 2});
    RatFn x = RatFn::x(f);
    RatFn tl = tau(f).pow(ell);
    std::vector<RatFn> cols;
    for (int j = 1; j < ell; ++j) cols.push_back(tau(f).pow(j));
    for (int k = -K; k <= K; ++k) cols.push_back(x.pow(k));
    cols.push_back(tl);
    for (int k = 1; k <= K; ++k) {
        cols.push_back(tl * RatFn::linear_power(f.one(), -k));
        cols.push_back(tl * RatFn::linear_power(sc.lambda0, -k));
    }
    std::vector<std::vector<u64>> rows;
    append_equations(rows, cols, c.rep);
    int n = int(cols.size());
    std::vector<u64> rhs;
    for (auto& r : rows) {
        rhs.push_back(r.back());
        r.pop_back();
    }
    std::vector<u64> sol;
    if (!solve(f, rows, rhs, n, sol)) throw ArithmeticError("linear oracle found no decomposition; increase the bound");
    // the H^1 coordinates are determined uniquely: check the nullspace does not touch them
    auto ns = nullspace(f, rows, n);
    for (auto& v : ns)
        for (int j = 0; j < ell - 1; ++j)
            if (v[j]) throw ArithmeticError("linear oracle: coordinates not unique");
    std::vector<Fq> out;
    for (int j = 0; j < ell - 1; ++j) out.push_back(f.elem(sol[j]));
    return out;
}

std::vector<Fq> serre_coordinates(const StandardCover& sc, const CechCocycle& c) {
    const Field& f = *sc.cover.field;
    check_cocycle(sc, c);
    int ell = -c.degree;
    std::vector<Fq> out;
    RatFn x = RatFn::x(f);
    for (int i = 0; i + 2 <= ell; ++i) {
        RatFn w = c.rep * x.pow(i - ell);
        out.push_back(w.residue(f.one()) + w.residue(sc.lambda0));
    }
    return out;
}

FqMat serre_pairing_matrix(const StandardCover& sc, int ell) {
    const Field& f = *sc.cover.field;
    FqMat A(std::max(ell - 1, 0), std::max(ell - 1, 0), f.zero());
    for (int j = 1; j < ell; ++j) {
        auto col = serre_coordinates(sc, {-ell, tau(f).pow(j)});
        for (int i = 0; i < ell - 1; ++i) A(i, j - 1) = col[i];
    }
    return A;
}

int h1_dimension_by_rank(const StandardCover& sc, int ell) {
    const Field& f = *sc.cover.field;
    if (ell < 1) return 0;
    int K = ell + 2;
    RatFn x = RatFn::x(f);
    RatFn tl = tau(f).pow(ell);
    std::vector<RatFn> sub, all;
    for (int k = -(K + ell); k <= K + ell; ++k) sub.push_back(x.pow(k));
    sub.push_back(tl);
    for (int k = 1; k <= K + ell; ++k) {
        sub.push_back(tl * RatFn::linear_power(f.one(), -k));
        sub.push_back(tl * RatFn::linear_power(sc.lambda0, -k));
    }
    all = sub;
    for (int k = 1; k <= K; ++k) {
        all.push_back(RatFn::linear_power(f.one(), -k));
        all.push_back(RatFn::linear_power(sc.lambda0, -k));
    }
    auto va = coefficient_vectors(all);
    std::vector<std::vector<u64>> vs(va.begin(), va.begin() + sub.size());
    int ncols = int(va[0].size());
    return rank(f, va, ncols) - rank(f, vs, ncols);
}

}  // namespace parab
