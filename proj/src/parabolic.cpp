#include "parab/parabolic.hpp"

#include <algorithm>
#include <map>

namespace parab {

std::vector<int> ParaBundle::points_in_chart(int i) const {
    std::vector<int> out;
    for (int d = 0; d < divisor.size(); ++d)
        if (cover.charts[i].contains(divisor.points()[d])) out.push_back(d);
    return out;
}

RMat ParaBundle::section_diag(int i, const std::function<i64(int, int)>& expo) const {
    RMat m = rmat_identity(*field, rank);
    for (int d : points_in_chart(i)) {
        RatFn s = section(i, d);
        for (int l = 0; l < rank; ++l) {
            i64 e = expo(d, l);
            if (e) m(l, l) = m(l, l) * s.pow(int(e));
        }
    }
    return m;
}

namespace {

void check_weight_table(const Field& f, const Divisor& D, int rank, const std::vector<std::vector<Rational>>& w) {
    if (int(w.size()) != D.size()) throw ValidationError("weight table must have one row per divisor point");
    for (const auto& row : w) {
        if (int(row.size()) != rank) throw ValidationError("weight list length differs from the rank");
        for (const auto& a : row) ParaWeight(a, f.p());
    }
}

}  // namespace

ParaBundle make_bundle(const Cover& cover, const Divisor& D, int rank, std::vector<std::vector<Rational>> weights,
                       const std::vector<RMat>& base) {
    cover.validate();
    const Field& f = *cover.field;
    check_weight_table(f, D, rank, weights);
    int n = cover.size();
    if (int(base.size()) != n) throw ValidationError("need one base transition per chart");
    ParaBundle V;
    V.field = &f;
    V.cover = cover;
    V.divisor = D;
    V.rank = rank;
    V.weights = std::move(weights);
    std::vector<RMat> b = base, binv;
    b[0] = rmat_identity(f, rank);
    for (auto& m : b) {
        if (m.rows() != rank || m.cols() != rank) throw ValidationError("transition has the wrong shape");
        binv.push_back(m.inverse());
    }
    V.trans.assign(n, std::vector<RMat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) V.trans[i][j] = i == j ? rmat_identity(f, rank) : binv[i] * b[j];
    return V;
}

ParaBundle trivial_bundle(const Cover& cover, const Divisor& D, int rank, std::vector<std::vector<Rational>> weights) {
    std::vector<RMat> base(cover.size(), rmat_identity(*cover.field, rank));
    return make_bundle(cover, D, rank, std::move(weights), base);
}

std::vector<std::vector<FormalEntry>> parabolic_transition(const ParaBundle& V, int i, int j) {
    std::vector<std::vector<FormalEntry>> out(V.rank, std::vector<FormalEntry>(V.rank));
    auto pi = V.points_in_chart(i), pj = V.points_in_chart(j);
    for (int l = 0; l < V.rank; ++l)
        for (int m = 0; m < V.rank; ++m) {
            FormalEntry& e = out[l][m];
            e.coeff = V.E(i, j)(l, m);
            for (int d : pi)
                if (!V.weights[d][l].is_zero()) e.powers.push_back({i, d, -V.weights[d][l]});
            for (int d : pj)
                if (!V.weights[d][m].is_zero()) e.powers.push_back({j, d, V.weights[d][m]});
        }
    return out;
}

Rational formal_order(const ParaBundle& V, const FormalEntry& e, int d) {
    const PointP1& P = V.divisor.points()[d];
    if (e.coeff.is_zero()) return Rational(1 << 28);
    Rational o(order_at(e.coeff, P));
    for (const auto& pw : e.powers) {
        if (!V.cover.charts[pw.chart].contains(P)) continue;
        // s_Q for Q != P is a unit at P
        o += pw.exp * Rational(order_at(V.section(pw.chart, pw.point), P));
    }
    return o;
}

namespace {

std::string where(const ParaBundle& V, int i, int j) {
    return "charts (" + V.cover.charts[i].id() + "," + V.cover.charts[j].id() + ")";
}

}  // namespace

ValidationReport validate_bundle(const ParaBundle& V) {
    ValidationReport rep;
    try {
        V.cover.validate();
        check_weight_table(*V.field, V.divisor, V.rank, V.weights);
    } catch (const std::exception& e) {
        rep.fail(e.what());
        return rep;
    }
    int n = V.charts();
    if (int(V.trans.size()) != n) {
        rep.fail("transition table has the wrong number of charts");
        return rep;
    }
    RMat id = rmat_identity(*V.field, V.rank);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const RMat& E = V.E(i, j);
            if (E.rows() != V.rank || E.cols() != V.rank) {
                rep.fail(where(V, i, j) + ": transition has the wrong shape");
                return rep;
            }
            for (int l = 0; l < V.rank; ++l)
                for (int m = 0; m < V.rank; ++m)
                    if (!V.cover.overlap_regular(i, j, E(l, m)))
                        rep.fail(where(V, i, j) + " entry (" + std::to_string(l) + "," + std::to_string(m) +
                                 "): pole on the overlap");
            if (!rep.ok) return rep;
            if (!V.cover.overlap_unit(i, j, E.det())) rep.fail(where(V, i, j) + ": determinant is not a unit");
            if (i == j && E != id) rep.fail(where(V, i, j) + ": self-transition is not the identity");
        }
    if (!rep.ok) return rep;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (V.E(i, j) * V.E(j, k) != V.E(i, k))
                    rep.fail("cocycle condition fails on " + V.cover.charts[i].id() + "," + V.cover.charts[j].id() +
                             "," + V.cover.charts[k].id());
    if (!rep.ok) return rep;
    // divisibility: entry (l,m) vanishes at P when alpha_l > alpha_m
    for (int d = 0; d < V.divisor.size(); ++d) {
        const PointP1& P = V.divisor.points()[d];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j || !V.cover.charts[i].contains(P) || !V.cover.charts[j].contains(P)) continue;
                for (int l = 0; l < V.rank; ++l)
                    for (int m = 0; m < V.rank; ++m)
                        if (V.weights[d][l] > V.weights[d][m] && order_at(V.E(i, j)(l, m), P) < 1)
                            rep.fail(where(V, i, j) + " entry (" + std::to_string(l) + "," + std::to_string(m) +
                                     ") does not vanish at " + P.str());
            }
    }
    if (!rep.ok) return rep;
    // parabolic transitions must be integral at every divisor point of the overlap, both ways
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            auto pt = parabolic_transition(V, i, j);
            for (int d = 0; d < V.divisor.size(); ++d) {
                const PointP1& P = V.divisor.points()[d];
                if (!V.cover.charts[i].contains(P) || !V.cover.charts[j].contains(P)) continue;
                for (int l = 0; l < V.rank; ++l)
                    for (int m = 0; m < V.rank; ++m) {
                        Rational o = formal_order(V, pt[l][m], d);
                        if (o < Rational(0))
                            rep.fail(where(V, i, j) + " parabolic entry (" + std::to_string(l) + "," +
                                     std::to_string(m) + ") has order " + o.str() + " at " + P.str());
                    }
                if (V.rank == 1) {
                    Rational o = formal_order(V, pt[0][0], d);
                    if (!(o == Rational(0))) rep.fail(where(V, i, j) + ": rank-1 parabolic transition not a unit at " + P.str());
                }
            }
        }
    return rep;
}

ValidationReport validate_morphism(const ParaMorphism& f, const ParaBundle& V, const ParaBundle& W) {
    ValidationReport rep;
    if (!same_cover(V.cover, W.cover) || V.divisor.points() != W.divisor.points()) {
        rep.fail("source and target live on different covers");
        return rep;
    }
    int n = V.charts();
    if (int(f.u.size()) != n) {
        rep.fail("morphism needs one matrix per chart");
        return rep;
    }
    for (int i = 0; i < n; ++i) {
        const RMat& u = f.u[i];
        if (u.rows() != V.rank || u.cols() != W.rank) {
            rep.fail("chart " + V.cover.charts[i].id() + ": morphism matrix has the wrong shape");
            return rep;
        }
        if (!V.cover.charts[i].is_regular(u)) rep.fail("chart " + V.cover.charts[i].id() + ": morphism has a pole");
    }
    if (!rep.ok) return rep;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && f.u[i] * W.E(i, j) != V.E(i, j) * f.u[j])
                rep.fail(where(V, i, j) + ": morphism does not commute with the transitions");
    if (!rep.ok) return rep;
    // u_lm s^(beta_m - alpha_l) has nonnegative order
    for (int d = 0; d < V.divisor.size(); ++d) {
        const PointP1& P = V.divisor.points()[d];
        for (int i = 0; i < n; ++i) {
            if (!V.cover.charts[i].contains(P)) continue;
            for (int l = 0; l < V.rank; ++l)
                for (int m = 0; m < W.rank; ++m) {
                    const RatFn& e = f.u[i](l, m);
                    if (e.is_zero()) continue;
                    Rational o = Rational(order_at(e, P)) + W.weights[d][m] - V.weights[d][l];
                    if (o < Rational(0))
                        rep.fail("chart " + V.cover.charts[i].id() + " component (" + std::to_string(l) + "," +
                                 std::to_string(m) + "): order " + o.str() + " at " + P.str());
                }
        }
    }
    return rep;
}

ParaMorphism identity_morphism(const ParaBundle& V) {
    return {std::vector<RMat>(V.charts(), rmat_identity(*V.field, V.rank))};
}

bool same_cover(const Cover& a, const Cover& b) {
    if (a.field != b.field || a.size() != b.size() || a.omitted != b.omitted) return false;
    for (int i = 0; i < a.size(); ++i)
        if (a.charts[i].excluded() != b.charts[i].excluded()) return false;
    return true;
}

namespace {

void require_compatible(const ParaBundle& V, const ParaBundle& W) {
    if (!same_cover(V.cover, W.cover)) throw ValidationError("bundles live on different covers");
    if (V.divisor.points() != W.divisor.points()) throw ValidationError("bundles have different divisors");
    for (int i = 0; i < V.charts(); ++i)
        for (int d : V.points_in_chart(i))
            if (V.section(i, d) != W.section(i, d)) throw ValidationError("bundles use different defining sections");
}

}  // namespace

ParaBundle tensor(const ParaBundle& V, const ParaBundle& W) {
    require_compatible(V, W);
    int r = V.rank * W.rank;
    std::vector<std::vector<Rational>> wt(V.divisor.size(), std::vector<Rational>(r));
    std::vector<std::vector<i64>> shift(V.divisor.size(), std::vector<i64>(r));
    for (int d = 0; d < V.divisor.size(); ++d)
        for (int l = 0; l < V.rank; ++l)
            for (int m = 0; m < W.rank; ++m) {
                Rational g = V.weights[d][l] + W.weights[d][m];
                shift[d][l * W.rank + m] = g.floor();
                wt[d][l * W.rank + m] = g.frac();
            }
    ParaBundle T = V;
    T.rank = r;
    T.weights = wt;
    std::vector<RMat> diag, diag_inv;
    for (int i = 0; i < V.charts(); ++i) {
        RMat D = T.section_diag(i, [&](int d, int l) { return shift[d][l]; });
        diag_inv.push_back(D.inverse());
        diag.push_back(std::move(D));
    }
    for (int i = 0; i < V.charts(); ++i)
        for (int j = 0; j < V.charts(); ++j)
            T.trans[i][j] = diag_inv[i] * V.E(i, j).kron(W.E(i, j)) * diag[j];
    return T;
}

ParaBundle hom_dual(const ParaBundle& V) {
    ParaBundle T = V;
    for (auto& row : T.weights)
        for (auto& a : row)
            if (!a.is_zero()) a = Rational(1) - a;
    std::vector<RMat> diag, diag_inv;
    for (int i = 0; i < V.charts(); ++i) {
        RMat D = V.section_diag(i, [&](int d, int l) { return V.weights[d][l].is_zero() ? 0 : 1; });
        diag_inv.push_back(D.inverse());
        diag.push_back(std::move(D));
    }
    for (int i = 0; i < V.charts(); ++i)
        for (int j = 0; j < V.charts(); ++j)
            T.trans[i][j] = diag[i] * V.E(i, j).inverse().transpose() * diag_inv[j];
    return T;
}

ParaBundle hom(const ParaBundle& V, const ParaBundle& W) { return tensor(hom_dual(V), W); }

namespace {

i64 degree_from(const Cover& cover, const std::vector<std::vector<RMat>>& trans) {
    // the frame on chart 0 as a rational section: order at P not in chart 0
    i64 deg = 0;
    for (const auto& P : cover.charts[0].excluded()) {
        auto cs = cover.charts_containing(P);
        if (cs.empty()) throw ValidationError("cover misses the point " + P.str());
        deg += order_at(trans[0][cs[0]].det(), P);
    }
    return deg;
}

}  // namespace

i64 underlying_degree(const ParaBundle& V) { return degree_from(V.cover, V.trans); }

Rational para_degree(const ParaBundle& V) {
    Rational d(underlying_degree(V));
    for (const auto& row : V.weights)
        for (const auto& a : row) d += a;
    return d;
}

OrdinaryBundle filtration_snapshot(const ParaBundle& V, const Rational& t) {
    if (t < Rational(0) || t >= Rational(1)) throw ValidationError("snapshot parameter must lie in [0,1)");
    OrdinaryBundle B;
    B.cover = V.cover;
    B.rank = V.rank;
    B.twisted.assign(V.divisor.size(), std::vector<bool>(V.rank));
    for (int d = 0; d < V.divisor.size(); ++d)
        for (int l = 0; l < V.rank; ++l) B.twisted[d][l] = V.weights[d][l] < t;
    std::vector<RMat> diag, diag_inv;
    for (int i = 0; i < V.charts(); ++i) {
        RMat D = V.section_diag(i, [&](int d, int l) { return B.twisted[d][l] ? 1 : 0; });
        diag_inv.push_back(D.inverse());
        diag.push_back(std::move(D));
    }
    B.trans.assign(V.charts(), std::vector<RMat>(V.charts()));
    for (int i = 0; i < V.charts(); ++i)
        for (int j = 0; j < V.charts(); ++j) {
            B.trans[i][j] = diag[i] * V.E(i, j) * diag_inv[j];
            if (i != j && !V.cover.overlap_unit(i, j, B.trans[i][j].det()))
                throw ArithmeticError("rescaled transition is not invertible on the overlap");
        }
    return B;
}

i64 degree(const OrdinaryBundle& B) { return degree_from(B.cover, B.trans); }

std::vector<std::vector<Rational>> weights_from_snapshots(const ParaBundle& V) {
    std::vector<Rational> cand{Rational(0)};
    for (const auto& row : V.weights) cand.insert(cand.end(), row.begin(), row.end());
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<std::vector<Rational>> out(V.divisor.size(), std::vector<Rational>(V.rank, Rational(0)));
    // alpha = largest t at which the vector is still untwisted
    for (const auto& t : cand) {
        OrdinaryBundle B = filtration_snapshot(V, t);
        for (int d = 0; d < V.divisor.size(); ++d)
            for (int l = 0; l < V.rank; ++l)
                if (!B.twisted[d][l]) out[d][l] = std::max(out[d][l], t);
    }
    return out;
}

}  // namespace parab
