#include "parab/flow.hpp"

namespace parab {

namespace {

RatFn tau(const Field& f) {
    RatFn x = RatFn::x(f);
    return x / (x - RatFn::one(f));
}

Fq untwist(const Fq& a) {
    Fq r = a;
    for (int i = 1; i < a.field().k(); ++i) r = r.frob();
    return r;
}

// the curve X when E lives on X'
StandardCover curve_of(const GradedHiggsR2& E) { return standard_cover_4pts(untwist(E.sc.lambda0)); }

}  // namespace

GradedHiggsR2 legendre_family(const Fq& lambda, const Fq& scale) {
    const Field& f = lambda.field();
    GradedHiggsR2 E;
    E.sc = standard_cover_4pts(lambda);
    E.a = 1;
    RatFn x = RatFn::x(f), one = RatFn::one(f);
    E.theta = x * RatFn::constant(scale * lambda * (lambda - f.one())) / ((x - one) * (x - RatFn::constant(lambda)));
    return E;
}

GradedHiggsR2 legendre_family(const Fq& lambda) { return legendre_family(lambda, lambda.field().one()); }

ParaBundle line_bundle(const StandardCover& sc, int l) {
    const Field& f = *sc.cover.field;
    RMat E(1, 1, tau(f).pow(l));
    std::vector<std::vector<Rational>> w(sc.divisor.size(), std::vector<Rational>(1, Rational(0)));
    return make_bundle(sc.cover, sc.divisor, 1, w, {rmat_identity(f, 1), E});
}

LambdaConn to_higgs(const GradedHiggsR2& E) {
    const Field& f = *E.sc.cover.field;
    RMat T = rmat_identity(f, 2);
    T(0, 0) = tau(f).pow(E.a);
    T(1, 1) = tau(f).pow(-E.a);
    auto w = E.weights;
    if (w.empty()) w.assign(E.sc.divisor.size(), std::vector<Rational>(2, Rational(0)));
    ParaBundle V = make_bundle(E.sc.cover, E.sc.divisor, 2, w, {rmat_identity(f, 2), T});
    LambdaConn H = zero_conn(V, f.zero());
    H.conn[0](0, 1) = E.theta;
    H.conn[1] = V.E(1, 0) * H.conn[0] * V.E(1, 0).inverse();
    auto rep = validate_conn(H);
    if (!rep.ok) throw ValidationError("graded Higgs bundle is invalid: " + rep.first_violation);
    return H;
}

ExtClass extension_class(const GradedHiggsR2& E, const DICocycle& kappa) {
    const Field& f = *E.sc.cover.field;
    int p = int(f.p());
    if (kappa.h.size() != 2) throw ValidationError("extension class needs the two-chart standard cover");
    StandardCover X = curve_of(E);
    ExtClass out;
    out.cocycle = {-2 * p * E.a, E.theta.subs_power(p) * kappa.h[0][1]};
    if (out.cocycle.degree <= -2) out.coords = h1_reduce(X, out.cocycle);
    return out;
}

FqMat boundary_delta(const GradedHiggsR2& E, const DICocycle& kappa) {
    if (E.a != 1) throw ValidationError("the boundary map is defined for a = 1");
    const Field& f = *E.sc.cover.field;
    int p = int(f.p());
    StandardCover X = curve_of(E);
    RatFn xi = extension_class(E, kappa).cocycle.rep;
    RatFn x = RatFn::x(f);
    FqMat D = fqmat_zero(f, p, p);
    for (int j = 0; j < p; ++j) {
        auto col = serre_coordinates(X, {-(p + 1), xi * x.pow(-j)});
        for (int i = 0; i < p; ++i) D(i, j) = col[i];
    }
    return D;
}

FqMat delta_closed_form_constant(std::uint32_t p, const Fq& l0) {
    const Field& f = l0.field();
    if (f.p() != p) throw ValidationError("characteristic mismatch");
    if (l0.is_zero() || l0.is_one()) throw ValidationError("lambda0 collides with a divisor point");
    FqMat D = fqmat_zero(f, int(p), int(p));
    Fq lp = l0.pow(p);
    for (int i = 0; i < int(p); ++i)
        for (int j = 0; j < int(p); ++j)
            if (i != j) D(i, j) = (lp - l0.pow(u64(int(p) + i - j))) / f.of(i - j);
    return D;
}

FqMat delta_closed_form(std::uint32_t p, const Fq& l0, const Fq& l1) {
    FqMat D = delta_closed_form_constant(p, l0);
    for (int i = 0; i < int(p); ++i) D(i, i) = l1;
    return D;
}

Poly charpoly(const FqMat& A) {
    const Field& f = A.zero_like().field();
    int n = A.rows();
    FqMat H = A;
    // Hessenberg form by similarity
    for (int m = 1; m + 1 < n; ++m) {
        int piv = -1;
        for (int i = m; i < n; ++i)
            if (!H(i, m - 1).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != m) {
            for (int j = 0; j < n; ++j) std::swap(H(piv, j), H(m, j));
            for (int i = 0; i < n; ++i) std::swap(H(i, piv), H(i, m));
        }
        for (int i = m + 1; i < n; ++i) {
            if (H(i, m - 1).is_zero()) continue;
            Fq u = H(i, m - 1) / H(m, m - 1);
            for (int j = 0; j < n; ++j) H(i, j) = H(i, j) - u * H(m, j);
            for (int r = 0; r < n; ++r) H(r, m) = H(r, m) + u * H(r, i);
        }
    }
    std::vector<Poly> P{Poly(f, {1})};
    Poly x = Poly::x(f);
    for (int m = 1; m <= n; ++m) {
        Poly pm = (x - Poly::constant(H(m - 1, m - 1))) * P[m - 1];
        Fq prod = f.one();
        for (int i = m - 1; i >= 1; --i) {
            prod = prod * H(i, i - 1);
            pm = pm - P[i - 1] * (prod * H(i - 1, m - 1));
        }
        P.push_back(pm);
    }
    return P[n];
}

Poly det_poly_lambda1(std::uint32_t p, const Fq& l0) { return charpoly(-delta_closed_form_constant(p, l0)); }

RootTable periodicity_roots(std::uint32_t p, const Fq& l0, int max_ext_degree) {
    RootTable t;
    t.det = det_poly_lambda1(p, l0);
    for (const auto& [g, e] : squarefree_factorization(t.det))
        for (const auto& [h, d] : distinct_degree_factorization(g, g.deg())) {
            int count = h.deg() / d;
            for (int c = 0; c < count; ++c) t.factors.emplace_back(d, e);
            t.total_multiplicity += e * h.deg();
            t.distinct_count += h.deg();
        }
    std::sort(t.factors.begin(), t.factors.end());
    if (max_ext_degree > 0) t.roots = poly_roots_with_multiplicity(t.det, max_ext_degree);
    for (const auto& r : t.roots) t.found_multiplicity += r.multiplicity;
    return t;
}

int kernel_dimension(const FqMat& A) {
    const Field& f = A.zero_like().field();
    return A.cols() - rank(f, from_fqmat(A), A.cols());
}

int hn_type(const GradedHiggsR2& E, const DICocycle& kappa) {
    int k = kernel_dimension(boundary_delta(E, kappa));
    if (k >= 2) throw ArithmeticError("internal inconsistency: kernel of the boundary map has dimension " + std::to_string(k));
    return k;
}

int hom_from_O1_dimension(const GradedHiggsR2& E, const FrobLift& F) {
    LambdaConn H = inverse_cartier(to_higgs(E), F);
    StandardCover X = curve_of(E);
    int bound = 4 * int(X.cover.field->p());
    return int(bundle_morphism_space(line_bundle(X, 1), H.bundle, bound).size());
}

namespace {

// w with iota_0 w_1 - iota_1 w_0 = 1 on the chart
RMat complete_row(const Chart& ch, const RMat& iota, int max_bound) {
    const Field& f = ch.field();
    for (int bound = 1; bound <= max_bound; bound *= 2) {
        auto basis = ch.ring_basis(bound);
        int nb = int(basis.size());
        std::vector<RatFn> cols;
        for (const auto& b : basis) cols.push_back(-(iota(0, 1) * b));
        for (const auto& b : basis) cols.push_back(iota(0, 0) * b);
        std::vector<std::vector<u64>> rows;
        append_equations(rows, cols, RatFn::one(f));
        std::vector<u64> rhs;
        for (auto& r : rows) {
            rhs.push_back(r.back());
            r.pop_back();
        }
        std::vector<u64> sol;
        if (!solve(f, rows, rhs, 2 * nb, sol)) continue;
        RMat w = rmat_zero(f, 1, 2);
        for (int b = 0; b < nb; ++b) {
            if (sol[b]) w(0, 0) += basis[b] * f.elem(sol[b]);
            if (sol[nb + b]) w(0, 1) += basis[b] * f.elem(sol[nb + b]);
        }
        return w;
    }
    throw ArithmeticError("the image of O(1) is not saturated on chart " + ch.id());
}

}  // namespace

FlowStep flow_step(const GradedHiggsR2& E, const FrobLift& F) {
    if (E.theta.is_zero()) throw ValidationError("theta = 0 is not a stable graded Higgs bundle");
    if (E.a != 1) throw ValidationError("flow step is defined for the a = 1 family");
    const Field& f = *E.sc.cover.field;
    int p = int(f.p());
    FlowStep s;
    s.deRham = inverse_cartier(to_higgs(E), F);
    StandardCover X = curve_of(E);
    auto sp = bundle_morphism_space(line_bundle(X, 1), s.deRham.bundle, 4 * p);
    if (sp.empty()) throw NonPeriodicError("no O(1) in the de Rham bundle: the Harder-Narasimhan type is a = 0");
    if (sp.size() > 1) throw ArithmeticError("internal inconsistency: dim Hom(O(1), H) = " + std::to_string(sp.size()));
    s.iota = sp[0];
    std::vector<RMat> B;
    for (int i = 0; i < 2; ++i) {
        RMat w = complete_row(X.cover.charts[i], s.iota.u[i], 8 * p);
        RMat b = rmat_zero(f, 2, 2);
        for (int m = 0; m < 2; ++m) {
            b(0, m) = s.iota.u[i](0, m);
            b(1, m) = w(0, m);
        }
        B.push_back(b);
    }
    s.filtered = gauge(s.deRham, B);
    const RMat& G = s.filtered.bundle.E(0, 1);
    if (!G(0, 1).is_zero() || G(0, 0) != tau(f) || G(1, 1) != tau(f).inv())
        throw ArithmeticError("adapted transition is not of the shape O(1) extended by O(-1)");
    s.graded.sc = X;
    s.graded.a = 1;
    s.graded.theta = s.filtered.conn[0](0, 1);
    if (s.graded.theta.is_zero()) throw ArithmeticError("induced Higgs field vanishes");
    // the chart U2 must agree with the graded glueing
    LambdaConn gr = to_higgs(s.graded);
    if (gr.conn[1](0, 1) != s.filtered.conn[1](0, 1))
        throw ArithmeticError("induced Higgs field does not glue on the graded pieces");
    return s;
}

bool is_period_one(const FlowStep& s) {
    LambdaConn a = to_higgs(s.graded);
    LambdaConn b = to_higgs(legendre_family(s.graded.sc.lambda0));
    return find_isomorphism(a, b).has_value();
}

}  // namespace parab
