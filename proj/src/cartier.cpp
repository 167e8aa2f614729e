#include "parab/cartier.hpp"

namespace parab {

namespace {

W2RatFn w2_const_fn(const W2Poly& num) { return {num, W2Poly::constant(Wp2Elem::one(num.ring().field()))}; }

}  // namespace

FrobLift frobenius_lifts(const Cover& cover, const Divisor& D, const std::vector<Wp2Elem>& point_lifts) {
    cover.validate();
    const Field& f = *cover.field;
    u64 p = f.p();
    if (int(point_lifts.size()) != D.size()) throw ValidationError("need one W2 lift per divisor point");
    for (int d = 0; d < D.size(); ++d)
        if (!D.points()[d].is_inf() && point_lifts[d].reduce() != D.points()[d].coord())
            throw ValidationError("point lift does not reduce to the divisor point " + D.points()[d].str());
    FrobLift F{cover, D, point_lifts, {}};
    W2Poly x = W2Poly::x(f);
    for (const auto& ch : cover.charts) {
        std::vector<Wp2Elem> fin;
        bool zero = false;
        for (int d = 0; d < D.size(); ++d) {
            const PointP1& P = D.points()[d];
            if (!ch.contains(P) || P.is_inf()) continue;
            if (P.coord().is_zero()) zero = true;
            else fin.push_back(point_lifts[d]);
        }
        bool inf = ch.contains(PointP1::infinity(f)) && D.contains(PointP1::infinity(f));
        if (fin.empty()) {
            F.lift.push_back(w2_const_fn(x.pow(p)));
        } else if (fin.size() == 1 && !zero) {
            const Wp2Elem& a = fin[0];
            F.lift.push_back(w2_const_fn((x - W2Poly::constant(a)).pow(p) + W2Poly::constant(a.sigma())));
        } else if (fin.size() + (zero ? 1 : 0) == 2 && !inf) {
            Wp2Elem a = fin[0], b = zero ? Wp2Elem::zero(f) : fin[1];
            W2Poly A = (x - W2Poly::constant(a)).pow(p), B = (x - W2Poly::constant(b)).pow(p);
            F.lift.push_back({A * b.sigma() - B * a.sigma(), A - B});
        } else {
            throw ValidationError("no Frobenius lift implemented for chart " + ch.id() +
                                  " (too many divisor points)");
        }
    }
    validate_lift(F);
    return F;
}

FrobLift frobenius_lifts_4pts(const Wp2Elem& lam) {
    StandardCover sc = standard_cover_4pts(lam.reduce());
    const Field& f = lam.field();
    std::vector<Wp2Elem> pl{Wp2Elem::zero(f), Wp2Elem::one(f), lam, Wp2Elem::zero(f)};
    return frobenius_lifts(sc.cover, sc.divisor, pl);
}

void validate_lift(const FrobLift& F) {
    const Field& f = *F.cover.field;
    RatFn xp = RatFn::x(f).pow(int(f.p()));
    for (int i = 0; i < F.cover.size(); ++i) {
        const W2RatFn& L = F.lift[i];
        if (L.den.reduce().is_zero() || !L.den.reduce().is_constant())
            throw ValidationError("lift denominator on chart " + F.cover.charts[i].id() + " is not a unit");
        if (L.reduce() != xp) throw ValidationError("lift on chart " + F.cover.charts[i].id() + " does not reduce to x^p");
        for (int d = 0; d < F.divisor.size(); ++d) {
            const PointP1& P = F.divisor.points()[d];
            if (P.is_inf() || !F.cover.charts[i].contains(P)) continue;
            if (L.eval(F.point_lifts[d]) != F.point_lifts[d].sigma())
                throw ValidationError("lift on chart " + F.cover.charts[i].id() + " moves the divisor point " + P.str());
        }
    }
}

DICocycle deligne_illusie(const FrobLift& F) {
    int n = F.cover.size();
    DICocycle k;
    k.h.assign(n, std::vector<RatFn>(n, RatFn::zero(*F.cover.field)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            W2RatFn diff = F.lift[i] - F.lift[j];
            if (!diff.num.divisible_by_p())
                throw ArithmeticError("lifts on charts " + F.cover.charts[i].id() + "," + F.cover.charts[j].id() +
                                      " do not agree mod p");
            k.h[i][j] = diff.div_p();
            if (!F.cover.overlap_regular(i, j, k.h[i][j])) throw ArithmeticError("Deligne-Illusie class has a pole on the overlap");
        }
    return k;
}

RatFn di_closed_form(const Wp2Elem& lam) {
    const Field& f = lam.field();
    auto [l0, l1] = lam.witt();
    int p = int(f.p());
    RatFn x = RatFn::x(f), one = RatFn::one(f);
    RatFn fl = RatFn::constant(l1), f1 = RatFn::zero(f);
    for (int i = 1; i < p; ++i) {
        fl += x.pow(i) * (l0.pow(u64(p - i)) / f.of(i));
        f1 += x.pow(i) * f.of(i).inv();
    }
    return (fl * (x.pow(p) - one) - f1 * (x.pow(p) - RatFn::constant(l0.pow(u64(p))))) *
           (l0.pow(u64(p)) - f.one()).inv();
}

std::vector<RatFn> lift_differentials(const FrobLift& F) {
    std::vector<RatFn> out;
    for (const auto& L : F.lift) out.push_back(L.derivative().div_p());
    return out;
}

RMat truncated_exp(const RMat& A) {
    const Field& f = A.zero_like().field();
    int n = A.rows();
    RMat out = rmat_identity(f, n), term = rmat_identity(f, n);
    for (u64 k = 1; k < f.p(); ++k) {
        term = (term * A).scaled(RatFn::constant(f.of(i64(k)).inv()));
        out = out + term;
    }
    if (!(term * A).is_zero()) throw ValidationError("nilpotency bound violated: A^p != 0");
    return out;
}

LambdaConn inverse_cartier(const LambdaConn& E, const FrobLift& F) {
    const Field& f = E.field();
    if (!E.lambda.is_zero()) throw ValidationError("inverse Cartier expects a Higgs field (lambda = 0)");
    if (!same_cover(E.bundle.cover, F.cover.twist()) || E.bundle.divisor.points() != twist(F.divisor).points())
        throw ValidationError("Higgs object must live on the Frobenius twist of the lift's cover");
    int p = int(f.p());
    LambdaConn C = frobenius_pullback(E.bundle);
    auto n = frobenius_twist_exponents(E.bundle);
    DICocycle k = deligne_illusie(F);
    auto zeta = lift_differentials(F);
    int nc = C.bundle.charts();
    std::vector<RMat> A;
    for (int i = 0; i < nc; ++i) {
        RMat T = C.bundle.section_diag(i, [&](int d, int l) { return n[d][l]; });
        A.push_back(T.inverse() * rmat_subs_power(E.conn[i], p) * T);
        C.conn[i] = C.conn[i] + A[i].scaled(zeta[i]);
    }
    std::vector<std::vector<RMat>> G = C.bundle.trans;
    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nc; ++j)
            if (i != j) G[i][j] = truncated_exp(A[i].scaled(k.h[i][j])) * C.bundle.trans[i][j];
    C.bundle.trans = G;
    return C;
}

std::vector<RatFn> apply_nabla_dy(const LambdaConn& C, int i, const std::vector<RatFn>& v) {
    RatFn dxdy = C.bundle.cover.charts[i].coordinate().derivative().inv();
    const RMat& M = C.conn[i];
    std::vector<RatFn> out;
    for (int m = 0; m < C.rank(); ++m) {
        RatFn s = v[m].derivative();
        for (int l = 0; l < C.rank(); ++l)
            if (!v[l].is_zero() && !M(l, m).is_zero()) s += v[l] * M(l, m);
        out.push_back(s * dxdy);
    }
    return out;
}

std::vector<RatFn> apply_P(const LambdaConn& C, int i, const std::vector<RatFn>& v) {
    if (!C.lambda.is_one()) throw ValidationError("the projector needs lambda = 1");
    const Field& f = C.field();
    RatFn y = C.bundle.cover.charts[i].coordinate();
    std::vector<RatFn> out = v, cur = v;
    RatFn coef = RatFn::one(f);
    for (u64 w = 1; w < f.p(); ++w) {
        cur = apply_nabla_dy(C, i, cur);
        coef = coef * (-y) * RatFn::constant(f.of(i64(w)).inv());
        for (int m = 0; m < C.rank(); ++m) out[m] += coef * cur[m];
    }
    return out;
}

i64 descent_shift(const Rational& gamma, std::uint32_t p) {
    for (i64 l = 0; l < i64(p); ++l)
        if (((gamma.num() + l * gamma.den()) % i64(p) + i64(p)) % i64(p) == 0) return l;
    throw ValidationError("weight denominator is divisible by p");
}

Descent cartier_descend(const LambdaConn& C) {
    const Field& f = C.field();
    const ParaBundle& V = C.bundle;
    int p = int(f.p());
    if (!C.lambda.is_one()) throw ValidationError("Cartier descent needs lambda = 1");
    if (!p_curvature_vanishes(C)) throw ValidationError("Cartier descent needs vanishing p-curvature");
    if (classify(C) != ResidueClass::strong) throw ValidationError("Cartier descent needs a strong parabolic connection");
    Descent out;
    out.ell.assign(V.divisor.size(), std::vector<i64>(V.rank));
    for (int d = 0; d < V.divisor.size(); ++d)
        for (int l = 0; l < V.rank; ++l) out.ell[d][l] = descent_shift(V.weights[d][l], f.p());
    for (int i = 0; i < V.charts(); ++i) {
        RMat D = V.section_diag(i, [&](int d, int l) { return out.ell[d][l]; });
        RMat W = rmat_zero(f, V.rank, V.rank);
        for (int l = 0; l < V.rank; ++l) {
            std::vector<RatFn> v(V.rank, RatFn::zero(f));
            v[l] = D(l, l);
            auto w = apply_P(C, i, v);
            for (int m = 0; m < V.rank; ++m) W(l, m) = w[m];
        }
        RatFn adj = W.det() / D.det();
        if (!V.cover.charts[i].is_regular(W) || !V.cover.charts[i].is_unit(adj))
            throw ArithmeticError("horizontal frame on chart " + V.cover.charts[i].id() + " is not adapted");
        out.inverse.push_back(W.inverse());
        out.frames.push_back(std::move(W));
    }
    ParaBundle B;
    B.field = &f;
    B.cover = V.cover.twist();
    B.divisor = twist(V.divisor);
    B.rank = V.rank;
    B.weights = V.weights;
    for (int d = 0; d < V.divisor.size(); ++d)
        for (int l = 0; l < V.rank; ++l) B.weights[d][l] = (V.weights[d][l] + Rational(out.ell[d][l])) / Rational(p);
    B.trans.assign(V.charts(), std::vector<RMat>(V.charts()));
    for (int i = 0; i < V.charts(); ++i)
        for (int j = 0; j < V.charts(); ++j) {
            RMat H = out.frames[i] * V.E(i, j) * out.inverse[j];
            B.trans[i][j] = H.map([&](const RatFn& e) {
                if (!e.is_pth_power_argument()) throw ArithmeticError("descended transition is not a function of x^p");
                return e.unfrob();
            });
        }
    out.bundle = std::move(B);
    return out;
}

LambdaConn exp_twist(const LambdaConn& C, const FrobLift& F) {
    if (!C.lambda.is_one()) throw ValidationError("the exponential twist needs lambda = 1");
    if (!same_cover(C.bundle.cover, F.cover)) throw ValidationError("connection and lifts live on different covers");
    DICocycle k = deligne_illusie(F);
    auto zeta = lift_differentials(F);
    int nc = C.bundle.charts();
    std::vector<RMat> psi;
    for (int i = 0; i < nc; ++i) psi.push_back(p_curvature_dx(C, i));
    LambdaConn out = C;
    for (int i = 0; i < nc; ++i) out.conn[i] = C.conn[i] + psi[i].scaled(zeta[i]);
    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nc; ++j)
            if (i != j) out.bundle.trans[i][j] = truncated_exp(psi[i].scaled(k.h[i][j])) * C.bundle.trans[i][j];
    return out;
}

LambdaConn cartier(const LambdaConn& C, const FrobLift& F) {
    LambdaConn tw = exp_twist(C, F);
    Descent D = cartier_descend(tw);
    LambdaConn out{D.bundle, C.field().zero(), {}};
    for (int i = 0; i < C.bundle.charts(); ++i) {
        RMat psi = p_curvature_dx(C, i);
        RMat th = -(D.frames[i] * psi * D.inverse[i]);
        out.conn.push_back(th.map([&](const RatFn& e) {
            if (!e.is_pth_power_argument()) throw ArithmeticError("descended Higgs field is not a function of x^p");
            return e.unfrob();
        }));
    }
    return out;
}

bool is_parallel(const RMat& psi, const RMat& M) { return (rmat_derivative(psi) + psi * M - M * psi).is_zero(); }

}  // namespace parab
