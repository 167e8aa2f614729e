#include "parab/connection.hpp"

#include <algorithm>

namespace parab {

LambdaConn zero_conn(const ParaBundle& V, const Fq& lambda) {
    return {V, lambda, std::vector<RMat>(V.charts(), rmat_zero(*V.field, V.rank, V.rank))};
}

RatFn dlog_factor(const RatFn& s) { return s / s.derivative(); }

namespace {

std::string ent(int l, int m) { return "(" + std::to_string(l) + "," + std::to_string(m) + ")"; }

Chart punctured(const ParaBundle& V, int i) {
    std::vector<PointP1> ex = V.cover.charts[i].excluded();
    for (int d : V.points_in_chart(i)) ex.push_back(V.divisor.points()[d]);
    return Chart("punctured", *V.field, ex);
}

RMat lambda_dlog_term(const RMat& g, const Fq& lambda) {
    // lambda dg g^-1
    if (lambda.is_zero()) return rmat_zero(g.zero_like().field(), g.rows(), g.cols());
    return (rmat_derivative(g) * g.inverse()).scaled(RatFn::constant(lambda));
}

}  // namespace

ValidationReport validate_conn(const LambdaConn& C) {
    ValidationReport rep = validate_bundle(C.bundle);
    if (!rep.ok) return rep;
    const ParaBundle& V = C.bundle;
    if (int(C.conn.size()) != V.charts()) {
        rep.fail("connection needs one matrix per chart");
        return rep;
    }
    for (int i = 0; i < V.charts(); ++i) {
        const RMat& M = C.conn[i];
        const Chart& ch = V.cover.charts[i];
        if (M.rows() != V.rank || M.cols() != V.rank) {
            rep.fail("chart " + ch.id() + ": connection matrix has the wrong shape");
            return rep;
        }
        Chart pc = punctured(V, i);
        for (int l = 0; l < V.rank; ++l)
            for (int m = 0; m < V.rank; ++m) {
                const RatFn& f = M(l, m);
                if (!pc.is_regular(f)) rep.fail("chart " + ch.id() + " entry " + ent(l, m) + ": pole away from D");
                for (int d : V.points_in_chart(i)) {
                    const PointP1& P = V.divisor.points()[d];
                    int o = order_at(f * dlog_factor(V.section(i, d)), P);
                    if (o < 0) rep.fail("chart " + ch.id() + " entry " + ent(l, m) + ": not logarithmic at " + P.str());
                    if (V.weights[d][l] > V.weights[d][m] && o < 1)
                        rep.fail("chart " + ch.id() + " entry " + ent(l, m) + ": residue must vanish at " + P.str());
                }
            }
    }
    if (!rep.ok) return rep;
    for (int i = 0; i < V.charts(); ++i)
        for (int j = 0; j < V.charts(); ++j) {
            if (i == j) continue;
            const RMat& E = V.E(i, j);
            RMat rhs = E * C.conn[j] * E.inverse() + lambda_dlog_term(E, C.lambda);
            if (rhs != C.conn[i])
                rep.fail("glueing fails on charts (" + V.cover.charts[i].id() + "," + V.cover.charts[j].id() + ")");
        }
    return rep;
}

LambdaConn gauge(const LambdaConn& C, const std::vector<RMat>& g) {
    LambdaConn out = C;
    int n = C.bundle.charts();
    std::vector<RMat> ginv;
    for (const auto& m : g) ginv.push_back(m.inverse());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.bundle.trans[i][j] = g[i] * C.bundle.E(i, j) * ginv[j];
    for (int i = 0; i < n; ++i) out.conn[i] = g[i] * C.conn[i] * ginv[i] + lambda_dlog_term(g[i], C.lambda);
    return out;
}

std::vector<std::vector<FormalEntry>> para_conn_matrix(const LambdaConn& C, int i) {
    const ParaBundle& V = C.bundle;
    const Field& f = *V.field;
    auto pts = V.points_in_chart(i);
    std::vector<std::vector<FormalEntry>> out(V.rank, std::vector<FormalEntry>(V.rank));
    for (int l = 0; l < V.rank; ++l)
        for (int m = 0; m < V.rank; ++m) {
            FormalEntry& e = out[l][m];
            e.coeff = C.conn[i](l, m);
            for (int d : pts) {
                Rational ex = V.weights[d][m] - V.weights[d][l];
                if (!ex.is_zero()) e.powers.push_back({i, d, ex});
                if (l == m && !V.weights[d][l].is_zero()) {
                    RatFn s = V.section(i, d);
                    e.coeff -= (s.derivative() / s) * RatFn::constant(C.lambda * V.weights[d][l].to_field(f));
                }
            }
            for (int d : pts) {
                FormalEntry w = e;
                w.coeff = e.coeff * dlog_factor(V.section(i, d));
                if (formal_order(V, w, d) < Rational(0))
                    throw ValidationError("non-admissible connection: entry " + ent(l, m) + " on chart " +
                                          V.cover.charts[i].id() + " has a pole on the parabolic basis at " +
                                          V.divisor.points()[d].str());
            }
        }
    return out;
}

namespace {

int chart_through(const ParaBundle& V, int d) {
    if (d < 0 || d >= V.divisor.size()) throw ValidationError("point is not in the divisor");
    auto cs = V.cover.charts_containing(V.divisor.points()[d]);
    if (cs.empty()) throw ValidationError("no chart contains the divisor point");
    return cs[0];
}

}  // namespace

FqMat ordinary_residue(const LambdaConn& C, int d) {
    const ParaBundle& V = C.bundle;
    int i = chart_through(V, d);
    const PointP1& P = V.divisor.points()[d];
    RatFn fac = dlog_factor(V.section(i, d));
    FqMat R = fqmat_zero(*V.field, V.rank, V.rank);
    for (int l = 0; l < V.rank; ++l)
        for (int m = 0; m < V.rank; ++m) {
            RatFn c = C.conn[i](l, m) * fac;
            if (order_at(c, P) < 0) throw ValidationError("connection is not logarithmic at " + P.str());
            R(l, m) = value_at(c, P);
        }
    return R;
}

FqMat parabolic_residue(const LambdaConn& C, int d) {
    const ParaBundle& V = C.bundle;
    const Field& f = *V.field;
    int i = chart_through(V, d);
    const PointP1& P = V.divisor.points()[d];
    RatFn fac = dlog_factor(V.section(i, d));
    FqMat R = fqmat_zero(f, V.rank, V.rank);
    for (int l = 0; l < V.rank; ++l)
        for (int m = 0; m < V.rank; ++m) {
            RatFn c = C.conn[i](l, m) * fac;
            Rational ex = V.weights[d][m] - V.weights[d][l];
            Rational o = Rational(order_at(c, P)) + ex;
            if (o < Rational(0))
                throw ValidationError("non-admissible connection: entry " + ent(l, m) + " at " + P.str());
            if (ex.is_zero()) R(l, m) = value_at(c, P);
        }
    for (int l = 0; l < V.rank; ++l) R(l, l) = R(l, l) - C.lambda * V.weights[d][l].to_field(f);
    return R;
}

const char* to_string(ResidueClass c) {
    switch (c) {
        case ResidueClass::strong: return "strong";
        case ResidueClass::adjusted: return "adjusted";
        default: return "neither";
    }
}

namespace {

bool nilpotent(const FqMat& R) {
    FqMat P = R;
    for (int k = 1; k < R.rows(); ++k) P = P * R;
    return P.is_zero();
}

}  // namespace

ResidueClass classify(const LambdaConn& C) {
    bool strong = true;
    for (int d = 0; d < C.bundle.divisor.size(); ++d) {
        FqMat R = parabolic_residue(C, d);
        if (!nilpotent(R)) return ResidueClass::neither;
        strong = strong && R.is_zero();
    }
    return strong ? ResidueClass::strong : ResidueClass::adjusted;
}

bool adjusted_by_eigenvalues(const LambdaConn& C) {
    const ParaBundle& V = C.bundle;
    const Field& f = *V.field;
    for (int d = 0; d < V.divisor.size(); ++d) {
        FqMat O = ordinary_residue(C, d);
        std::vector<Rational> ws = V.weights[d];
        std::sort(ws.begin(), ws.end());
        ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
        for (const auto& w : ws) {
            std::vector<int> idx;
            for (int l = 0; l < V.rank; ++l)
                if (V.weights[d][l] == w) idx.push_back(l);
            int n = int(idx.size());
            Fq ev = C.lambda * w.to_field(f);
            FqMat B = fqmat_zero(f, n, n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) B(a, b) = O(idx[a], idx[b]) - (a == b ? ev : f.zero());
            if (!nilpotent(B)) return false;
        }
    }
    return true;
}

RMat p_curvature(const LambdaConn& C, int i) {
    if (!C.lambda.is_one()) throw ValidationError("p-curvature needs lambda = 1");
    const Field& f = C.field();
    RatFn x = RatFn::x(f);
    RMat A1 = C.conn[i].scaled(x);
    RMat A = A1;
    for (u64 k = 1; k < f.p(); ++k) A = rmat_derivative(A).scaled(x) + A * A1;
    return A - A1;
}

RMat p_curvature_dx(const LambdaConn& C, int i) {
    if (!C.lambda.is_one()) throw ValidationError("p-curvature needs lambda = 1");
    const RMat& M = C.conn[i];
    RMat B = M;
    for (u64 k = 1; k < C.field().p(); ++k) B = rmat_derivative(B) + B * M;
    return B;
}

bool p_curvature_vanishes(const LambdaConn& C) {
    for (int i = 0; i < C.bundle.charts(); ++i)
        if (!p_curvature_dx(C, i).is_zero()) return false;
    return true;
}

std::vector<std::vector<i64>> frobenius_twist_exponents(const ParaBundle& V) {
    std::vector<std::vector<i64>> n(V.divisor.size(), std::vector<i64>(V.rank));
    for (int d = 0; d < V.divisor.size(); ++d)
        for (int l = 0; l < V.rank; ++l) n[d][l] = (V.weights[d][l] * Rational(V.field->p())).floor();
    return n;
}

LambdaConn frobenius_pullback(const ParaBundle& V) {
    const Field& f = *V.field;
    int p = int(f.p());
    auto n = frobenius_twist_exponents(V);
    ParaBundle W;
    W.field = &f;
    W.cover = V.cover.untwist();
    W.divisor = untwist(V.divisor);
    W.rank = V.rank;
    W.weights = V.weights;
    for (auto& row : W.weights)
        for (auto& a : row) a = (a * Rational(p)).frac();
    std::vector<RMat> T, Tinv;
    for (int i = 0; i < V.charts(); ++i) {
        T.push_back(W.section_diag(i, [&](int d, int l) { return n[d][l]; }));
        Tinv.push_back(T.back().inverse());
    }
    W.trans.assign(V.charts(), std::vector<RMat>(V.charts()));
    for (int i = 0; i < V.charts(); ++i)
        for (int j = 0; j < V.charts(); ++j) W.trans[i][j] = Tinv[i] * rmat_subs_power(V.E(i, j), p) * T[j];
    LambdaConn C = zero_conn(W, f.one());
    for (int i = 0; i < V.charts(); ++i)
        for (int d : W.points_in_chart(i)) {
            RatFn s = W.section(i, d);
            RatFn dl = s.derivative() / s;
            for (int l = 0; l < V.rank; ++l)
                if (n[d][l]) C.conn[i](l, l) -= dl * RatFn::constant(f.of(n[d][l]));
        }
    return C;
}

LambdaConn tensor(const LambdaConn& A, const LambdaConn& B) {
    if (A.lambda != B.lambda) throw ValidationError("tensor of lambda-connections with different lambda");
    ParaBundle T = tensor(A.bundle, B.bundle);
    const Field& f = A.field();
    int ra = A.rank(), rb = B.rank();
    LambdaConn C = zero_conn(T, A.lambda);
    for (int i = 0; i < T.charts(); ++i) {
        RMat D = T.section_diag(i, [&](int d, int idx) {
            return (A.bundle.weights[d][idx / rb] + B.bundle.weights[d][idx % rb]).floor();
        });
        RMat Dinv = D.inverse();
        RMat M = A.conn[i].kron(rmat_identity(f, rb)) + rmat_identity(f, ra).kron(B.conn[i]);
        C.conn[i] = Dinv * M * D + lambda_dlog_term(Dinv, A.lambda);
    }
    return C;
}

AffineSetup affine_line(const Field& f) {
    AffineSetup a;
    a.cover.field = &f;
    a.cover.charts.emplace_back("A1", f, std::vector<PointP1>{PointP1::infinity(f)});
    a.cover.omitted.push_back(PointP1::infinity(f));
    a.divisor = Divisor({PointP1::finite(f.zero())});
    return a;
}

bool is_affine_setup(const ParaBundle& V) {
    const Field& f = *V.field;
    return V.charts() == 1 && V.cover.charts[0].excluded().size() == 1 && V.cover.charts[0].excludes_inf() &&
           V.divisor.size() == 1 && V.divisor.points()[0] == PointP1::finite(f.zero()) &&
           V.section(0, 0) == RatFn::x(f);
}

namespace {

void check_cyclic(const LambdaConn& C, int N) {
    if (!is_affine_setup(C.bundle)) throw ValidationError("cyclic covers need the affine line with divisor {0}");
    if (N < 1) throw ValidationError("cover degree must be positive");
    if (N % int(C.field().p()) == 0) throw ValidationError("wild ramification: p divides the cover degree");
}

int mod(i64 a, int n) { return int(((a % n) + n) % n); }

}  // namespace

LambdaConn pullback_cyclic(const LambdaConn& C, int N) {
    check_cyclic(C, N);
    const Field& f = C.field();
    int r = C.rank();
    AffineSetup X = affine_line(f);
    std::vector<std::vector<Rational>> w(1, std::vector<Rational>(r));
    std::vector<i64> n(r);
    for (int l = 0; l < r; ++l) {
        Rational a = C.bundle.weights[0][l] * Rational(N);
        n[l] = a.floor();
        w[0][l] = a.frac();
    }
    ParaBundle V = trivial_bundle(X.cover, X.divisor, r, w);
    RatFn x = RatFn::x(f);
    RMat Mh = rmat_subs_power(C.conn[0], N).scaled(x.pow(N - 1) * RatFn::constant(f.of(N)));
    LambdaConn out = zero_conn(V, C.lambda);
    for (int l = 0; l < r; ++l)
        for (int m = 0; m < r; ++m) out.conn[0](l, m) = Mh(l, m) * x.pow(int(n[m] - n[l]));
    for (int l = 0; l < r; ++l)
        if (n[l]) out.conn[0](l, l) -= x.inv() * RatFn::constant(C.lambda * f.of(n[l]));
    return out;
}

EquivConn pullback_cyclic_equivariant(const LambdaConn& C, int N) {
    EquivConn E;
    E.conn = pullback_cyclic(C, N);
    E.N = N;
    for (int l = 0; l < C.rank(); ++l) E.chi.push_back(mod(-(C.bundle.weights[0][l] * Rational(N)).floor(), N));
    return E;
}

LambdaConn pushforward_cyclic(const LambdaConn& C, int N) {
    check_cyclic(C, N);
    const Field& f = C.field();
    int r = C.rank(), R = r * N;
    AffineSetup Y = affine_line(f);
    std::vector<std::vector<Rational>> w(1, std::vector<Rational>(R));
    for (int l = 0; l < r; ++l)
        for (int t = 0; t < N; ++t) w[0][l * N + t] = (C.bundle.weights[0][l] + Rational(t)) / Rational(N);
    ParaBundle V = trivial_bundle(Y.cover, Y.divisor, R, w);
    // numerators in y of N y * (dy-coefficient)
    std::vector<std::vector<std::vector<u64>>> acc(R, std::vector<std::vector<u64>>(R));
    auto add = [&](int a, int b, int q, const Fq& c) {
        auto& v = acc[a][b];
        if (int(v.size()) <= q) v.resize(q + 1, 0);
        v[q] = f.add(v[q], c.code());
    };
    RatFn x = RatFn::x(f);
    for (int l = 0; l < r; ++l)
        for (int t = 0; t < N; ++t) {
            for (int m = 0; m < r; ++m) {
                RatFn Q = C.conn[0](l, m) * x.pow(t + 1);
                if (!Q.is_poly()) throw ValidationError("connection is not logarithmic on the affine line");
                for (int k = 0; k <= Q.num().deg(); ++k) {
                    Fq c = Q.num().coeff(k);
                    if (!c.is_zero()) add(l * N + t, m * N + k % N, k / N, c);
                }
            }
            if (t) add(l * N + t, l * N + t, 0, C.lambda * f.of(t));
        }
    LambdaConn out = zero_conn(V, C.lambda);
    RatFn denom = (x * RatFn::constant(f.of(N))).inv();
    for (int a = 0; a < R; ++a)
        for (int b = 0; b < R; ++b)
            if (!acc[a][b].empty()) out.conn[0](a, b) = RatFn(Poly(f, acc[a][b])) * denom;
    return out;
}

ValidationReport validate_equivariant(const EquivConn& E) {
    ValidationReport rep = validate_conn(E.conn);
    if (!rep.ok) return rep;
    if (!is_affine_setup(E.conn.bundle)) {
        rep.fail("equivariant objects live on the affine line with divisor {0}");
        return rep;
    }
    int r = E.conn.rank();
    if (int(E.chi.size()) != r) {
        rep.fail("one character per basis vector required");
        return rep;
    }
    if (E.N < 1 || E.N % int(E.conn.field().p()) == 0) {
        rep.fail("cover degree must be positive and prime to p");
        return rep;
    }
    RatFn x = RatFn::x(E.conn.field());
    for (int l = 0; l < r; ++l)
        for (int m = 0; m < r; ++m) {
            RatFn q = E.conn.conn[0](l, m) * x;
            if (!q.is_poly()) {
                rep.fail("entry " + ent(l, m) + " is not logarithmic");
                continue;
            }
            for (int k = 0; k <= q.num().deg(); ++k)
                if (!q.num().coeff(k).is_zero() && mod(k - E.chi[l] + E.chi[m], E.N) != 0)
                    rep.fail("entry " + ent(l, m) + " is not equivariant (monomial x^" + std::to_string(k) + ")");
        }
    return rep;
}

LambdaConn invariants_cyclic(const EquivConn& E) {
    auto rep = validate_equivariant(E);
    if (!rep.ok) throw ValidationError("invalid equivariant data: " + rep.first_violation);
    int r = E.conn.rank(), N = E.N;
    LambdaConn push = pushforward_cyclic(E.conn, N);
    std::vector<int> idx;
    for (int l = 0; l < r; ++l) idx.push_back(l * N + mod(-E.chi[l], N));
    const Field& f = E.conn.field();
    std::vector<std::vector<Rational>> w(1, std::vector<Rational>(r));
    for (int l = 0; l < r; ++l) w[0][l] = push.bundle.weights[0][idx[l]];
    AffineSetup Y = affine_line(f);
    LambdaConn out = zero_conn(trivial_bundle(Y.cover, Y.divisor, r, w), E.conn.lambda);
    for (int a = 0; a < r; ++a) {
        for (int b = 0; b < push.rank(); ++b) {
            bool inv = std::find(idx.begin(), idx.end(), b) != idx.end();
            if (!inv && !push.conn[0](idx[a], b).is_zero())
                throw ArithmeticError("invariant subspace is not preserved by the connection");
        }
        for (int b = 0; b < r; ++b) out.conn[0](a, b) = push.conn[0](idx[a], idx[b]);
    }
    return out;
}

}  // namespace parab
