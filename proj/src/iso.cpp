#include "parab/iso.hpp"

#include <algorithm>
#include <random>

namespace parab {

namespace {

struct Unknowns {
    int ra, rb;
    std::vector<std::vector<RatFn>> basis;  // per chart
    std::vector<int> offset;
    int total = 0;

    Unknowns(const ParaBundle& A, const ParaBundle& B, int bound) : ra(A.rank), rb(B.rank) {
        for (int i = 0; i < A.charts(); ++i) {
            basis.push_back(A.cover.charts[i].ring_basis(bound));
            offset.push_back(total);
            total += ra * rb * int(basis.back().size());
        }
    }
    int idx(int i, int l, int m, int b) const { return offset[i] + (l * rb + m) * int(basis[i].size()) + b; }
};

// sum_t c_{terms[t].first} * terms[t].second = 0, one row per numerator coefficient
void add_identity(const Field& f, std::vector<std::vector<u64>>& rows, int n,
                  const std::vector<std::pair<int, RatFn>>& terms) {
    std::vector<RatFn> fs;
    std::vector<int> ids;
    for (const auto& [k, r] : terms)
        if (!r.is_zero()) {
            fs.push_back(r);
            ids.push_back(k);
        }
    if (fs.empty()) return;
    auto vecs = coefficient_vectors(fs);
    size_t len = vecs[0].size();
    for (size_t c = 0; c < len; ++c) {
        std::vector<u64> row(n, 0);
        bool nz = false;
        for (size_t t = 0; t < fs.size(); ++t) {
            u64 v = vecs[t][c];
            if (!v) continue;
            row[ids[t]] = f.add(row[ids[t]], v);
            nz = true;
        }
        if (nz) rows.push_back(std::move(row));
    }
}

std::vector<ParaMorphism> solve_space(const ParaBundle& A, const ParaBundle& B, int bound, const LambdaConn* CA,
                                      const LambdaConn* CB) {
    if (!same_cover(A.cover, B.cover) || A.divisor.points() != B.divisor.points())
        throw ValidationError("morphism search needs objects on the same cover");
    const Field& f = *A.field;
    Unknowns U(A, B, bound);
    int n = U.total;
    std::vector<std::vector<u64>> rows;
    int nc = A.charts();
    // transitions: u_i F_ij = E_ij u_j
    for (int i = 0; i < nc; ++i)
        for (int j = i + 1; j < nc; ++j)
            for (int l = 0; l < U.ra; ++l)
                for (int m = 0; m < U.rb; ++m) {
                    std::vector<std::pair<int, RatFn>> terms;
                    for (int k = 0; k < U.rb; ++k) {
                        const RatFn& F = B.E(i, j)(k, m);
                        if (F.is_zero()) continue;
                        for (size_t b = 0; b < U.basis[i].size(); ++b)
                            terms.emplace_back(U.idx(i, l, k, int(b)), U.basis[i][b] * F);
                    }
                    for (int k = 0; k < U.ra; ++k) {
                        const RatFn& E = A.E(i, j)(l, k);
                        if (E.is_zero()) continue;
                        for (size_t b = 0; b < U.basis[j].size(); ++b)
                            terms.emplace_back(U.idx(j, k, m, int(b)), -(E * U.basis[j][b]));
                    }
                    add_identity(f, rows, n, terms);
                }
    // horizontality: lambda du + u M_B - M_A u = 0
    if (CA) {
        const Fq& lam = CA->lambda;
        for (int i = 0; i < nc; ++i)
            for (int l = 0; l < U.ra; ++l)
                for (int m = 0; m < U.rb; ++m) {
                    std::vector<std::pair<int, RatFn>> terms;
                    for (size_t b = 0; b < U.basis[i].size(); ++b) {
                        const RatFn& g = U.basis[i][b];
                        if (!lam.is_zero()) terms.emplace_back(U.idx(i, l, m, int(b)), g.derivative() * lam);
                        for (int k = 0; k < U.rb; ++k)
                            if (!CB->conn[i](k, m).is_zero())
                                terms.emplace_back(U.idx(i, l, k, int(b)), g * CB->conn[i](k, m));
                        for (int k = 0; k < U.ra; ++k)
                            if (!CA->conn[i](l, k).is_zero())
                                terms.emplace_back(U.idx(i, k, m, int(b)), -(CA->conn[i](l, k) * g));
                    }
                    add_identity(f, rows, n, terms);
                }
    }
    // parabolic condition: u_lm(P) = 0 when alpha_l > beta_m
    for (int d = 0; d < A.divisor.size(); ++d) {
        const PointP1& P = A.divisor.points()[d];
        for (int i = 0; i < nc; ++i) {
            if (!A.cover.charts[i].contains(P)) continue;
            for (int l = 0; l < U.ra; ++l)
                for (int m = 0; m < U.rb; ++m) {
                    if (!(A.weights[d][l] > B.weights[d][m])) continue;
                    std::vector<u64> row(n, 0);
                    for (size_t b = 0; b < U.basis[i].size(); ++b)
                        row[U.idx(i, l, m, int(b))] = value_at(U.basis[i][b], P).code();
                    rows.push_back(std::move(row));
                }
        }
    }
    auto ns = nullspace(f, rows, n);
    std::vector<ParaMorphism> out;
    for (const auto& v : ns) {
        ParaMorphism phi;
        for (int i = 0; i < nc; ++i) {
            RMat u = rmat_zero(f, U.ra, U.rb);
            for (int l = 0; l < U.ra; ++l)
                for (int m = 0; m < U.rb; ++m)
                    for (size_t b = 0; b < U.basis[i].size(); ++b) {
                        u64 c = v[U.idx(i, l, m, int(b))];
                        if (c) u(l, m) += U.basis[i][b] * f.elem(c);
                    }
            phi.u.push_back(std::move(u));
        }
        out.push_back(std::move(phi));
    }
    return out;
}

ParaMorphism combine(const std::vector<ParaMorphism>& sp, const std::vector<Fq>& c) {
    ParaMorphism r = sp[0];
    for (size_t i = 0; i < r.u.size(); ++i) {
        r.u[i] = sp[0].u[i].scaled(RatFn::constant(c[0]));
        for (size_t k = 1; k < sp.size(); ++k) r.u[i] = r.u[i] + sp[k].u[i].scaled(RatFn::constant(c[k]));
    }
    return r;
}

bool weights_match(const ParaBundle& A, const ParaBundle& B) {
    if (A.rank != B.rank || A.divisor.size() != B.divisor.size()) return false;
    for (int d = 0; d < A.divisor.size(); ++d) {
        auto a = A.weights[d], b = B.weights[d];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    return true;
}

template <class Check>
std::optional<ParaMorphism> search(const ParaBundle& A, const ParaBundle& B, int max_bound, std::uint64_t seed,
                                   const std::function<std::vector<ParaMorphism>(int)>& space, Check ok) {
    if (!weights_match(A, B)) return std::nullopt;
    const Field& f = *A.field;
    if (max_bound <= 0) max_bound = 4 * int(f.p());
    std::mt19937_64 rng(seed);
    // constant morphisms first: a constant iso is rarely hit by sampling a larger space
    std::vector<int> bounds{0};
    for (int b = 1; b < max_bound; b *= 2) bounds.push_back(b);
    bounds.push_back(max_bound);
    for (int bound : bounds) {
        auto sp = space(bound);
        if (sp.empty()) continue;
        for (const auto& phi : sp)
            if (ok(phi)) return phi;
        for (int trial = 0; trial < 48; ++trial) {
            std::vector<Fq> c;
            for (size_t k = 0; k < sp.size(); ++k) c.push_back(f.random(rng));
            auto phi = combine(sp, c);
            if (ok(phi)) return phi;
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<ParaMorphism> bundle_morphism_space(const ParaBundle& A, const ParaBundle& B, int bound) {
    return solve_space(A, B, bound, nullptr, nullptr);
}

std::vector<ParaMorphism> morphism_space(const LambdaConn& A, const LambdaConn& B, int bound) {
    if (A.lambda != B.lambda) throw ValidationError("morphisms between different lambda");
    return solve_space(A.bundle, B.bundle, bound, &A, &B);
}

bool is_horizontal(const ParaMorphism& f, const LambdaConn& A, const LambdaConn& B) {
    for (int i = 0; i < A.bundle.charts(); ++i) {
        RMat lhs = f.u[i] * B.conn[i] - A.conn[i] * f.u[i];
        if (!A.lambda.is_zero()) lhs = lhs + rmat_derivative(f.u[i]).scaled(RatFn::constant(A.lambda));
        if (!lhs.is_zero()) return false;
    }
    return true;
}

bool is_bundle_isomorphism(const ParaMorphism& f, const ParaBundle& A, const ParaBundle& B) {
    if (A.rank != B.rank || !validate_morphism(f, A, B).ok) return false;
    ParaMorphism g;
    for (int i = 0; i < A.charts(); ++i) {
        RatFn d = f.u[i].det();
        if (!A.cover.charts[i].is_unit(d)) return false;
        g.u.push_back(f.u[i].inverse());
    }
    return validate_morphism(g, B, A).ok;
}

std::optional<ParaMorphism> find_bundle_isomorphism(const ParaBundle& A, const ParaBundle& B, int max_bound,
                                                    std::uint64_t seed) {
    return search(
        A, B, max_bound, seed, [&](int b) { return bundle_morphism_space(A, B, b); },
        [&](const ParaMorphism& phi) { return is_bundle_isomorphism(phi, A, B); });
}

std::optional<ParaMorphism> find_isomorphism(const LambdaConn& A, const LambdaConn& B, int max_bound,
                                             std::uint64_t seed) {
    if (A.lambda != B.lambda) return std::nullopt;
    return search(
        A.bundle, B.bundle, max_bound, seed, [&](int b) { return morphism_space(A, B, b); },
        [&](const ParaMorphism& phi) { return is_bundle_isomorphism(phi, A.bundle, B.bundle) && is_horizontal(phi, A, B); });
}

}  // namespace parab
