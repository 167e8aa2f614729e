#include <random>

#include "doctest.h"
#include "parab/flow.hpp"
#include "parab/samples.hpp"
#include "parab/serialize.hpp"

using namespace parab;

namespace {

// P^1 - inf and P^1 - 0, divisor {1}: the point lies on the overlap
struct Gm {
    Cover cover;
    Divisor divisor;
};

Gm gm(const Field& f) {
    Gm g;
    g.cover.field = &f;
    g.cover.charts.emplace_back("V0", f, std::vector<PointP1>{PointP1::infinity(f)});
    g.cover.charts.emplace_back("V1", f, std::vector<PointP1>{PointP1::finite(f.zero())});
    g.divisor = Divisor({PointP1::finite(f.one())});
    return g;
}

ParaBundle gm_bundle(const Field& f, std::vector<Rational> w, const RMat& E) {
    Gm g = gm(f);
    return make_bundle(g.cover, g.divisor, E.rows(), {std::move(w)}, {rmat_identity(f, E.rows()), E});
}

RMat mat2(const Field& f, RatFn a, RatFn b, RatFn c, RatFn d) {
    RMat m(2, 2, RatFn::zero(f));
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

ParaBundle line_with_weight(const StandardCover& sc, int l, int point, const Rational& a) {
    ParaBundle L = line_bundle(sc, l);
    L.weights.assign(sc.divisor.size(), std::vector<Rational>{Rational(0)});
    L.weights[point][0] = a;
    return L;
}

}  // namespace

TEST_CASE("rank-1 parabolic transition is g (s_j/s_i)^alpha") {
    const Field& f = Field::get(5);
    RatFn x = RatFn::x(f);
    RatFn g = x.pow(2) * f.of(3);
    ParaBundle L = gm_bundle(f, {Rational(2, 3)}, RMat(1, 1, g));
    auto pt = parabolic_transition(L, 0, 1);
    CHECK(pt[0][0].coeff == g);
    REQUIRE(pt[0][0].powers.size() == 2);
    CHECK(pt[0][0].powers[0].chart == 0);
    CHECK(pt[0][0].powers[0].exp == Rational(-2, 3));
    CHECK(pt[0][0].powers[1].chart == 1);
    CHECK(pt[0][0].powers[1].exp == Rational(2, 3));
    CHECK(formal_order(L, pt[0][0], 0) == Rational(0));
    CHECK(validate_bundle(L).ok);
    // a transition vanishing at the point is not a unit there
    CHECK_FALSE(validate_bundle(gm_bundle(f, {Rational(2, 3)}, RMat(1, 1, x - RatFn::one(f)))).ok);
}

TEST_CASE("validate_bundle: divisibility along the divisor") {
    const Field& f = Field::get(5);
    RatFn x = RatFn::x(f), one = RatFn::one(f), zero = RatFn::zero(f);
    // trivial weights: any invertible transition
    CHECK(validate_bundle(gm_bundle(f, {Rational(0), Rational(0)}, mat2(f, x, one, zero, x.inv()))).ok);
    CHECK(validate_bundle(gm_bundle(f, {Rational(0), Rational(0)}, mat2(f, x + one, x, one, one))).ok);
    // alpha_0 > alpha_1: entry (0,1) must vanish at 1
    std::vector<Rational> w{Rational(2, 3), Rational(1, 3)};
    CHECK_FALSE(validate_bundle(gm_bundle(f, w, mat2(f, one, one, zero, one))).ok);
    CHECK(validate_bundle(gm_bundle(f, w, mat2(f, one, x - one, zero, one))).ok);
    CHECK(validate_bundle(gm_bundle(f, w, mat2(f, one, zero, x, one))).ok);
    // not invertible on the overlap
    CHECK_FALSE(validate_bundle(gm_bundle(f, w, mat2(f, one, zero, zero, x - one))).ok);
    // malformed weight tables are refused at construction
    CHECK_THROWS_AS(gm_bundle(f, {Rational(1, 3), Rational(1)}, rmat_identity(f, 2)), ValidationError);
    CHECK_THROWS_AS(gm_bundle(f, {Rational(1, 3), Rational(-1, 2)}, rmat_identity(f, 2)), ValidationError);
    CHECK_THROWS_AS(gm_bundle(f, {Rational(1, 3), Rational(1, 10)}, rmat_identity(f, 2)), ValidationError);
    const Field& f3 = Field::get(3);
    CHECK_THROWS_AS(gm_bundle(f3, {Rational(1, 3)}, rmat_identity(f3, 1)), ValidationError);
}

TEST_CASE("validate_morphism on parabolic line bundles") {
    const Field& f = Field::get(5);
    AffineSetup X = affine_line(f);
    ParaBundle L = trivial_bundle(X.cover, X.divisor, 1, {{Rational(2, 3)}});
    ParaBundle M = trivial_bundle(X.cover, X.divisor, 1, {{Rational(1, 3)}});
    RatFn x = RatFn::x(f);
    CHECK(validate_morphism(identity_morphism(L), L, L).ok);
    CHECK_FALSE(validate_morphism(ParaMorphism{{RMat(1, 1, x + RatFn::one(f))}}, L, M).ok);
    CHECK(validate_morphism(ParaMorphism{{RMat(1, 1, x * (x + RatFn::one(f)))}}, L, M).ok);
    // smaller source weight: units are fine
    CHECK(validate_morphism(ParaMorphism{{RMat(1, 1, RatFn::one(f))}}, M, L).ok);
}

TEST_CASE("tensor of parabolic line bundles") {
    const Field& f = Field::get(5);
    StandardCover sc = standard_cover_4pts(f.of(2));
    // 2/3 + 2/3: underlying L (x) M (D), weight 1/3
    ParaBundle L = line_with_weight(sc, 1, 0, Rational(2, 3));
    ParaBundle M = line_with_weight(sc, 2, 0, Rational(2, 3));
    ParaBundle T = tensor(L, M);
    CHECK(validate_bundle(T).ok);
    CHECK(T.weights[0][0] == Rational(1, 3));
    CHECK(underlying_degree(T) == 1 + 2 + 1);
    // 1/4 + 1/2: underlying L (x) M, weight 3/4
    ParaBundle T2 = tensor(line_with_weight(sc, 1, 0, Rational(1, 4)), line_with_weight(sc, -3, 0, Rational(1, 2)));
    CHECK(T2.weights[0][0] == Rational(3, 4));
    CHECK(underlying_degree(T2) == 1 - 3);
    // unit object
    Rng rng(31);
    ParaBundle V = random_standard_bundle(rng, sc, 2, random_weights(rng, 5, 4, 2));
    ParaBundle O = trivial_bundle(sc.cover, sc.divisor, 1, std::vector<std::vector<Rational>>(4, {Rational(0)}));
    CHECK(same_data(tensor(V, O), V));
}

TEST_CASE("hom_dual") {
    const Field& f = Field::get(3);
    StandardCover sc = standard_cover_4pts(f.of(2));
    ParaBundle L = line_with_weight(sc, 2, 1, Rational(0));
    ParaBundle Ld = hom_dual(L);
    CHECK(Ld.weights[1][0] == Rational(0));
    CHECK(underlying_degree(Ld) == -2);
    // weight alpha > 0: weight 1 - alpha on L^v(-D)
    ParaBundle La = line_with_weight(sc, 2, 1, Rational(1, 4));
    ParaBundle Lad = hom_dual(La);
    CHECK(Lad.weights[1][0] == Rational(3, 4));
    CHECK(underlying_degree(Lad) == -3);
    CHECK(para_degree(Lad) == -para_degree(La));
    Rng rng(32);
    for (int it = 0; it < 5; ++it) {
        ParaBundle V = random_standard_bundle(rng, sc, 2, random_weights(rng, 3, 4, 2));
        CHECK(validate_bundle(hom_dual(V)).ok);
        CHECK(find_bundle_isomorphism(hom_dual(hom_dual(V)), V).has_value());
    }
}

TEST_CASE("para_degree") {
    const Field& f = Field::get(5);
    StandardCover sc = standard_cover_4pts(f.of(3));
    ParaBundle O2 = trivial_bundle(sc.cover, sc.divisor, 2, std::vector<std::vector<Rational>>(4, std::vector<Rational>(2)));
    CHECK(para_degree(O2) == Rational(0));
    CHECK(para_degree(line_with_weight(sc, 1, 2, Rational(1, 2))) == Rational(3, 2));
    Rng rng(33);
    for (int it = 0; it < 20; ++it) {
        int r1 = 1 + it % 2, r2 = 1 + (it / 2) % 2;
        ParaBundle V = random_standard_bundle(rng, sc, r1, random_weights(rng, 5, 4, r1));
        ParaBundle W = random_standard_bundle(rng, sc, r2, random_weights(rng, 5, 4, r2));
        CHECK(para_degree(tensor(V, W)) == Rational(r2) * para_degree(V) + Rational(r1) * para_degree(W));
        CHECK(para_degree(hom(V, W)) == Rational(r1) * para_degree(W) - Rational(r2) * para_degree(V));
    }
}

TEST_CASE("filtration_snapshot") {
    const Field& f = Field::get(5);
    StandardCover sc = standard_cover_4pts(f.of(3));
    // one divisor point: V_t = V_0 for t <= alpha, V_0(-D) beyond
    ParaBundle L = gm_bundle(f, {Rational(1, 3)}, RMat(1, 1, RatFn::x(f).pow(2)));
    i64 d0 = degree(filtration_snapshot(L, Rational(0)));
    CHECK(d0 == underlying_degree(L));
    CHECK(degree(filtration_snapshot(L, Rational(1, 3))) == d0);
    CHECK(degree(filtration_snapshot(L, Rational(1, 2))) == d0 - 1);
    // on the four points the zero weights jump as soon as t > 0
    ParaBundle L4 = line_with_weight(sc, 1, 0, Rational(1, 3));
    CHECK(degree(filtration_snapshot(L4, Rational(1, 3))) == 1 - 3);
    CHECK(degree(filtration_snapshot(L4, Rational(1, 2))) == 1 - 4);
    CHECK_THROWS_AS(filtration_snapshot(L, Rational(1)), ValidationError);
    Rng rng(34);
    for (int it = 0; it < 10; ++it) {
        ParaBundle V = random_standard_bundle(rng, sc, 2, random_weights(rng, 5, 4, 2));
        CHECK(degree(filtration_snapshot(V, Rational(0))) == underlying_degree(V));
        CHECK(weights_from_snapshots(V) == V.weights);
    }
}
