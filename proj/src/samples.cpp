#include "parab/samples.hpp"

#include <numeric>

namespace parab {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Fq nonzero(Rng& rng, const Field& f) {
    Fq c = f.random(rng);
    while (c.is_zero()) c = f.random(rng);
    return c;
}

RatFn monomial_term(Rng& rng, const StandardCover& sc, int m) {
    const Field& f = *sc.cover.field;
    return RatFn::constant(nonzero(rng, f)) * RatFn::x(f).pow(uniform(rng, -m, m)) *
           RatFn::linear_power(f.one(), uniform(rng, -m, m)) * RatFn::linear_power(sc.lambda0, uniform(rng, -m, m));
}

}  // namespace

Rational random_weight(Rng& rng, std::uint32_t p, int max_den) {
    int d;
    do d = uniform(rng, 1, max_den);
    while (std::gcd(d, int(p)) != 1);
    return Rational(uniform(rng, 0, d - 1), d);
}

std::vector<std::vector<Rational>> random_weights(Rng& rng, std::uint32_t p, int npoints, int rank, int max_den) {
    std::vector<std::vector<Rational>> w(npoints, std::vector<Rational>(rank));
    for (auto& row : w)
        for (auto& a : row) a = random_weight(rng, p, max_den);
    return w;
}

RatFn random_overlap_function(Rng& rng, const StandardCover& sc, int max_exp, int terms) {
    RatFn s = RatFn::zero(*sc.cover.field);
    for (int t = 0; t < terms; ++t) s += monomial_term(rng, sc, max_exp);
    return s;
}

RatFn random_overlap_unit(Rng& rng, const StandardCover& sc, int max_exp) { return monomial_term(rng, sc, max_exp); }

ParaBundle random_standard_bundle(Rng& rng, const StandardCover& sc, int rank,
                                  const std::vector<std::vector<Rational>>& weights) {
    const Field& f = *sc.cover.field;
    RMat E = rmat_identity(f, rank);
    for (int l = 0; l < rank; ++l) E(l, l) = random_overlap_unit(rng, sc);
    if (rank >= 2) {
        RMat U = rmat_identity(f, rank), L = rmat_identity(f, rank);
        for (int l = 0; l < rank; ++l)
            for (int m = 0; m < rank; ++m) {
                if (l < m && uniform(rng, 0, 1)) U(l, m) = random_overlap_function(rng, sc);
                if (l > m && uniform(rng, 0, 1)) L(l, m) = random_overlap_function(rng, sc);
            }
        E = U * E * L;
    }
    return make_bundle(sc.cover, sc.divisor, rank, weights, {rmat_identity(f, rank), E});
}

namespace {

LambdaConn nilpotent_attempt(Rng& rng, const StandardCover& sc, const std::vector<std::vector<Rational>>& weights) {
    const Field& f = *sc.cover.field;
    RMat E = rmat_identity(f, 2);
    E(0, 0) = random_overlap_unit(rng, sc);
    E(1, 1) = random_overlap_unit(rng, sc);
    if (uniform(rng, 0, 1)) E(0, 1) = random_overlap_function(rng, sc);
    ParaBundle V = make_bundle(sc.cover, sc.divisor, 2, weights, {rmat_identity(f, 2), E});
    auto build = [&](const RatFn& t) {
        LambdaConn H = zero_conn(V, f.zero());
        H.conn[0](0, 1) = t;
        H.conn[1] = V.E(1, 0) * H.conn[0] * V.E(1, 0).inverse();
        return H;
    };
    // the admissible t form a vector space; collect admissible monomial candidates and combine
    RatFn x = RatFn::x(f), base = (RatFn::linear_power(f.one(), 1) * RatFn::linear_power(sc.lambda0, 1)).inv();
    std::vector<RatFn> good;
    for (int k = -5; k <= 3; ++k)
        for (int e1 = 0; e1 <= 1; ++e1)
            for (int e2 = 0; e2 <= 1; ++e2) {
                RatFn t = base * x.pow(k) * RatFn::linear_power(f.one(), e1) * RatFn::linear_power(sc.lambda0, e2);
                if (validate_conn(build(t)).ok) good.push_back(t);
            }
    RatFn t = RatFn::zero(f);
    for (const auto& g : good)
        if (uniform(rng, 0, 1)) t += g * f.random(rng);
    if (t.is_zero() && !good.empty()) t = good[uniform(rng, 0, int(good.size()) - 1)];
    return build(t);
}

}  // namespace

LambdaConn random_nilpotent_higgs(Rng& rng, const StandardCover& sc, int rank,
                                  const std::vector<std::vector<Rational>>& weights) {
    const Field& f = *sc.cover.field;
    if (rank == 1) return zero_conn(random_standard_bundle(rng, sc, 1, weights), f.zero());
    if (rank != 2) throw ValidationError("random nilpotent Higgs fields are generated in rank 1 and 2");
    // prefer theta != 0, fall back to whatever the last attempt gave
    LambdaConn H = nilpotent_attempt(rng, sc, weights);
    for (int a = 0; a < 20 && H.conn[0](0, 1).is_zero(); ++a) H = nilpotent_attempt(rng, sc, weights);
    return H;
}

LambdaConn random_affine_conn(Rng& rng, const Field& f, int rank, const std::vector<Rational>& weights,
                              const Fq& lambda, int max_deg) {
    AffineSetup X = affine_line(f);
    LambdaConn C = zero_conn(trivial_bundle(X.cover, X.divisor, rank, {weights}), lambda);
    RatFn x = RatFn::x(f);
    for (int l = 0; l < rank; ++l)
        for (int m = 0; m < rank; ++m) {
            RatFn e = RatFn::zero(f);
            for (int k = weights[l] > weights[m] ? 1 : 0; k <= max_deg; ++k) e += x.pow(k - 1) * f.random(rng);
            C.conn[0](l, m) = e;
        }
    return C;
}

LambdaConn random_affine_nilpotent_higgs(Rng& rng, const Field& f, int rank, const std::vector<Rational>& weights,
                                         int max_deg) {
    LambdaConn C = random_affine_conn(rng, f, rank, weights, f.zero(), max_deg);
    for (int l = 0; l < rank; ++l)
        for (int m = 0; m <= l; ++m) C.conn[0](l, m) = RatFn::zero(f);
    return C;
}

EquivConn random_equivariant(Rng& rng, const Field& f, int rank, int N, const Fq& lambda, int max_deg) {
    AffineSetup Y = affine_line(f);
    EquivConn E;
    E.N = N;
    std::vector<Rational> w(rank);
    for (int l = 0; l < rank; ++l) {
        E.chi.push_back(uniform(rng, 0, N - 1));
        w[l] = random_weight(rng, f.p());
    }
    E.conn = zero_conn(trivial_bundle(Y.cover, Y.divisor, rank, {w}), lambda);
    RatFn x = RatFn::x(f);
    for (int l = 0; l < rank; ++l)
        for (int m = 0; m < rank; ++m) {
            RatFn e = RatFn::zero(f);
            int lo = w[l] > w[m] ? 1 : 0;
            for (int k = 0; k <= max_deg * N; ++k)
                if (k >= lo && ((k - E.chi[l] + E.chi[m]) % N + N) % N == 0) e += x.pow(k - 1) * f.random(rng);
            E.conn.conn[0](l, m) = e;
        }
    return E;
}

Cover principal_open_cover(const Field& f, const std::vector<Fq>& centers) {
    Cover c;
    c.field = &f;
    c.omitted.push_back(PointP1::infinity(f));
    for (size_t i = 0; i < centers.size(); ++i)
        c.charts.emplace_back("D" + std::to_string(i), f,
                              std::vector<PointP1>{PointP1::finite(centers[i]), PointP1::infinity(f)});
    c.validate();
    return c;
}

FrobLift translate_lifts(const Cover& cover, const std::vector<Wp2Elem>& centers) {
    if (int(centers.size()) != cover.size()) throw ValidationError("one lift center per chart required");
    const Field& f = *cover.field;
    FrobLift F{cover, Divisor{}, {}, {}};
    W2Poly x = W2Poly::x(f), one = W2Poly::constant(Wp2Elem::one(f));
    for (const auto& a : centers)
        F.lift.push_back({(x - W2Poly::constant(a)).pow(f.p()) + W2Poly::constant(a.sigma()), one});
    validate_lift(F);
    return F;
}

FrobLift affine_lift(const Field& f) {
    AffineSetup X = affine_line(f);
    return frobenius_lifts(X.cover, X.divisor, {Wp2Elem::zero(f)});
}

}  // namespace parab
