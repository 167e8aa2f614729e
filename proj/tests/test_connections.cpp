#include <random>

#include "doctest.h"
#include "parab/iso.hpp"
#include "parab/samples.hpp"
#include "parab/serialize.hpp"

using namespace parab;

namespace {

LambdaConn affine_rank1(const Field& f, const Rational& a, const Fq& lambda, const RatFn& m) {
    AffineSetup X = affine_line(f);
    LambdaConn C = zero_conn(trivial_bundle(X.cover, X.divisor, 1, {{a}}), lambda);
    C.conn[0](0, 0) = m;
    return C;
}

LambdaConn affine_O(const Field& f, const Fq& lambda) { return affine_rank1(f, Rational(0), lambda, RatFn::zero(f)); }

}  // namespace

TEST_CASE("para_conn_matrix") {
    const Field& f = Field::get(5);
    RatFn x = RatFn::x(f);
    Rng rng(41);
    // Higgs field with trivial weights: unchanged
    LambdaConn H = random_affine_conn(rng, f, 2, {Rational(0), Rational(0)}, f.zero());
    auto M = para_conn_matrix(H, 0);
    for (int l = 0; l < 2; ++l)
        for (int m = 0; m < 2; ++m) {
            CHECK(M[l][m].coeff == H.conn[0](l, m));
            CHECK(M[l][m].powers.empty());
        }
    // rank 1, weight alpha, zero matrix: -lambda alpha dlog s
    Fq lam = f.of(3);
    auto R = para_conn_matrix(affine_rank1(f, Rational(2, 3), lam, RatFn::zero(f)), 0);
    CHECK(R[0][0].coeff == x.inv() * (-(lam * Rational(2, 3).to_field(f))));
    // weights (2/3, 1/3): admissible matrices give at most simple poles on the parabolic basis
    AffineSetup X = affine_line(f);
    for (int it = 0; it < 10; ++it) {
        LambdaConn C = random_affine_conn(rng, f, 2, {Rational(2, 3), Rational(1, 3)}, f.random(rng));
        auto P = para_conn_matrix(C, 0);
        for (int l = 0; l < 2; ++l)
            for (int m = 0; m < 2; ++m) {
                FormalEntry e = P[l][m];
                e.coeff = e.coeff * x;
                CHECK(formal_order(C.bundle, e, 0) >= Rational(0));
            }
    }
    LambdaConn bad = random_affine_conn(rng, f, 2, {Rational(2, 3), Rational(1, 3)}, f.one());
    bad.conn[0](0, 1) = x.inv();
    CHECK_THROWS_AS(para_conn_matrix(bad, 0), ValidationError);
    CHECK_FALSE(validate_conn(bad).ok);
}

TEST_CASE("residues and classification") {
    const Field& f = Field::get(5);
    RatFn x = RatFn::x(f), xi = x.inv();
    // (O, lambda d)
    LambdaConn O = affine_O(f, f.one());
    CHECK(parabolic_residue(O, 0).is_zero());
    CHECK(ordinary_residue(O, 0).is_zero());
    CHECK(classify(O) == ResidueClass::strong);
    // eigenvalue 1 at trivial weight
    CHECK(classify(affine_rank1(f, Rational(0), f.one(), xi)) == ResidueClass::neither);
    CHECK_FALSE(adjusted_by_eigenvalues(affine_rank1(f, Rational(0), f.one(), xi)));
    // weight 1/2: residue 1/2 is adjusted, with zero parabolic residue
    LambdaConn A = affine_rank1(f, Rational(1, 2), f.one(), xi * Rational(1, 2).to_field(f));
    CHECK(parabolic_residue(A, 0).is_zero());
    // nilpotent upper triangular block at equal weights
    AffineSetup X = affine_line(f);
    LambdaConn N = zero_conn(trivial_bundle(X.cover, X.divisor, 2, {{Rational(1, 2), Rational(1, 2)}}), f.one());
    Fq h = Rational(1, 2).to_field(f);
    N.conn[0](0, 0) = xi * h;
    N.conn[0](1, 1) = xi * h + x;
    N.conn[0](0, 1) = xi * f.of(3);
    REQUIRE(validate_conn(N).ok);
    FqMat R = parabolic_residue(N, 0);
    CHECK_FALSE(R.is_zero());
    CHECK((R * R).is_zero());
    CHECK(classify(N) == ResidueClass::adjusted);
    CHECK(adjusted_by_eigenvalues(N));
    // strong implies adjusted
    Rng rng(42);
    for (int it = 0; it < 30; ++it) {
        LambdaConn C = random_affine_conn(rng, f, 2, {random_weight(rng, 5), random_weight(rng, 5)}, f.random(rng));
        if (classify(C) == ResidueClass::strong) {
            FqMat P = parabolic_residue(C, 0);
            CHECK((P * P).is_zero());
        }
    }
}

TEST_CASE("frobenius_pullback") {
    const Field& f3 = Field::get(3);
    AffineSetup X3 = affine_line(f3);
    RatFn x3 = RatFn::x(f3);
    // trivial weights: ordinary pullback with d
    StandardCover sc = standard_cover_4pts(f3.of(2));
    Rng rng(43);
    ParaBundle V = random_standard_bundle(rng, sc, 2, std::vector<std::vector<Rational>>(4, std::vector<Rational>(2)));
    LambdaConn FV = frobenius_pullback(V);
    CHECK(FV.lambda == f3.one());
    for (const auto& M : FV.conn) CHECK(M.is_zero());
    CHECK(FV.bundle.E(0, 1) == rmat_subs_power(V.E(0, 1), 3));
    // p = 3, alpha = 1/2: twist s^1, weight 1/2, residue 1/2
    ParaBundle L = trivial_bundle(X3.cover, X3.divisor, 1, {{Rational(1, 2)}});
    LambdaConn FL = frobenius_pullback(L);
    CHECK(frobenius_twist_exponents(L)[0][0] == 1);
    CHECK(FL.bundle.weights[0][0] == Rational(1, 2));
    CHECK(ordinary_residue(FL, 0)(0, 0) == Rational(1, 2).to_field(f3));
    CHECK(FL.conn[0](0, 0) == -x3.inv());
    CHECK(classify(FL) != ResidueClass::neither);
    CHECK(p_curvature_vanishes(FL));
    // p = 5, alpha = 2/3: 10/3 = 3 + 1/3
    const Field& f5 = Field::get(5);
    AffineSetup X5 = affine_line(f5);
    ParaBundle L5 = trivial_bundle(X5.cover, X5.divisor, 1, {{Rational(2, 3)}});
    CHECK(frobenius_twist_exponents(L5)[0][0] == 3);
    LambdaConn FL5 = frobenius_pullback(L5);
    CHECK(FL5.bundle.weights[0][0] == Rational(1, 3));
    CHECK(ordinary_residue(FL5, 0)(0, 0) == Rational(1, 3).to_field(f5));
    // random weights on the four-point cover
    for (int it = 0; it < 5; ++it) {
        StandardCover s5 = standard_cover_4pts(f5.of(2 + it % 3));
        ParaBundle W = random_standard_bundle(rng, s5, 2, random_weights(rng, 5, 4, 2));
        LambdaConn C = frobenius_pullback(W);
        CHECK(validate_conn(C).ok);
        CHECK(p_curvature_vanishes(C));
        CHECK(adjusted_by_eigenvalues(C));
    }
}

TEST_CASE("p_curvature") {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        const Field& f = Field::get(p);
        const Field& f2 = Field::get(p, 2);
        CHECK(p_curvature(affine_O(f, f.one()), 0).is_zero());
        for (const auto& c : f.elements())
            CHECK(p_curvature(affine_rank1(f, Rational(0), f.one(), RatFn::x(f).inv() * c), 0).is_zero());
        Rng rng(44);
        for (int it = 0; it < 5; ++it) {
            Fq c = f2.random(rng);
            RMat psi = p_curvature(affine_rank1(f2, Rational(0), f2.one(), RatFn::x(f2).inv() * c), 0);
            CHECK(psi(0, 0) == RatFn::constant(c.pow(p) - c));
        }
    }
    // psi(x d/dx) = x^p psi(d/dx)
    const Field& f = Field::get(3);
    LambdaConn C = affine_rank1(f, Rational(0), f.one(), RatFn::x(f).pow(2));
    CHECK(p_curvature(C, 0) == p_curvature_dx(C, 0).scaled(RatFn::x(f).pow(3)));
}

TEST_CASE("pullback_cyclic") {
    const Field& f = Field::get(5);
    Rng rng(45);
    LambdaConn C = random_affine_conn(rng, f, 2, {Rational(1, 3), Rational(0)}, f.of(2));
    CHECK(same_data(pullback_cyclic(C, 1), C));
    // N = denominator: trivial parabolic structure, twist by N alpha
    LambdaConn L = affine_rank1(f, Rational(2, 3), f.one(), RatFn::zero(f));
    LambdaConn P = pullback_cyclic(L, 3);
    CHECK(P.bundle.weights[0][0] == Rational(0));
    CHECK(P.conn[0](0, 0) == -(RatFn::x(f).inv() * f.of(2)));
    // residue m at y = 0 becomes N m
    Fq m = f.of(3);
    LambdaConn R = pullback_cyclic(affine_rank1(f, Rational(0), f.one(), RatFn::x(f).inv() * m), 4);
    CHECK(R.conn[0](0, 0).residue(f.zero()) == m * f.of(4));
    CHECK_THROWS_AS(pullback_cyclic(L, 5), ValidationError);
}

TEST_CASE("pushforward_cyclic") {
    const Field& f = Field::get(5);
    RatFn x = RatFn::x(f);
    // N = 2, rank 1, weight alpha, dlog coefficient m
    for (const Rational& a : {Rational(0), Rational(1, 3), Rational(3, 4)})
        for (int lam : {0, 1, 3}) {
            Fq m = f.of(2), l = f.of(lam);
            LambdaConn L = affine_rank1(f, a, l, x.inv() * m);
            LambdaConn P = pushforward_cyclic(L, 2);
            CHECK(P.rank() == 2);
            CHECK(P.bundle.weights[0] == std::vector<Rational>{a / Rational(2), (a + Rational(1)) / Rational(2)});
            CHECK(P.conn[0](0, 1).is_zero());
            CHECK(P.conn[0](1, 0).is_zero());
            Fq half = Rational(1, 2).to_field(f);
            Fq mpar = m - l * a.to_field(f);
            FqMat R = parabolic_residue(P, 0);
            CHECK(R(0, 0) == mpar * half);
            CHECK(R(1, 1) == mpar * half);
            CHECK(R(0, 1).is_zero());
            CHECK(R(1, 0).is_zero());
            CHECK(ordinary_residue(P, 0)(0, 0) == m * half);
            CHECK(ordinary_residue(P, 0)(1, 1) == (m + l) * half);
        }
    // structure sheaf: weights t/N
    for (int N : {2, 3, 4, 6}) {
        LambdaConn P = pushforward_cyclic(affine_O(f, f.one()), N);
        for (int t = 0; t < N; ++t) CHECK(P.bundle.weights[0][t] == Rational(t, N));
        CHECK(validate_conn(P).ok);
    }
    // projection formula
    Rng rng(46);
    for (int it = 0; it < 6; ++it) {
        int N = 2 + it % 3;
        Fq lam = f.random(rng);
        std::vector<Rational> w;
        for (int l = 0; l <= it % 2; ++l) w.push_back(random_weight(rng, 5));
        LambdaConn H = random_affine_conn(rng, f, int(w.size()), w, lam);
        CHECK(find_isomorphism(pushforward_cyclic(pullback_cyclic(H, N), N),
                               tensor(H, pushforward_cyclic(affine_O(f, lam), N)))
                  .has_value());
    }
}

TEST_CASE("invariants_cyclic") {
    const Field& f = Field::get(5);
    // trivial G-structure on (O, d)
    EquivConn E{affine_O(f, f.one()), 3, {0}};
    CHECK(same_data(invariants_cyclic(E), affine_O(f, f.one())));
    // weight 1/3 and N = 3
    LambdaConn L = affine_rank1(f, Rational(1, 3), f.one(), RatFn::x(f).inv() * Rational(1, 3).to_field(f));
    EquivConn U = pullback_cyclic_equivariant(L, 3);
    CHECK(U.conn.bundle.weights[0][0] == Rational(0));
    LambdaConn back = invariants_cyclic(U);
    CHECK(back.bundle.weights[0][0] == Rational(1, 3));
    CHECK(find_isomorphism(back, L).has_value());
    // random rank 2
    Rng rng(47);
    for (int it = 0; it < 6; ++it) {
        int N = 2 + it % 3;
        LambdaConn C = random_affine_conn(rng, f, 2, {random_weight(rng, 5), random_weight(rng, 5)}, f.random(rng));
        EquivConn P = pullback_cyclic_equivariant(C, N);
        CHECK(validate_equivariant(P).ok);
        CHECK(find_isomorphism(invariants_cyclic(P), C).has_value());
    }
    // a character that the connection does not respect
    LambdaConn C = random_affine_conn(rng, f, 2, {Rational(0), Rational(0)}, f.one());
    C.conn[0](0, 1) = RatFn::one(f);
    CHECK_FALSE(validate_equivariant(EquivConn{C, 3, {0, 0}}).ok);
}

TEST_CASE("glueing of lambda-connections") {
    const Field& f = Field::get(5);
    StandardCover sc = standard_cover_4pts(f.of(3));
    Rng rng(48);
    ParaBundle V = random_standard_bundle(rng, sc, 2, std::vector<std::vector<Rational>>(4, std::vector<Rational>(2)));
    LambdaConn C = frobenius_pullback(V);
    REQUIRE(validate_conn(C).ok);
    LambdaConn B = C;
    B.conn[1](0, 1) += RatFn::one(f);
    CHECK_FALSE(validate_conn(B).ok);
    // a gauge change keeps the object valid and isomorphic
    RMat g = rmat_identity(f, 2);
    g(0, 1) = RatFn::x(f);
    LambdaConn G = gauge(C, {g, rmat_identity(f, 2)});
    CHECK(validate_conn(G).ok);
}
