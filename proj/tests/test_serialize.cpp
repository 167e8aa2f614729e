#include "doctest.h"
#include "parab/samples.hpp"
#include "parab/serialize.hpp"

using namespace parab;

TEST_CASE("JSON round trips") {
    Rng rng(71);
    for (std::uint32_t p : {3u, 5u, 7u})
        for (int k : {1, 2}) {
            const Field& f = Field::get(p, k);
            Fq l0 = f.random(rng);
            while (l0.is_zero() || l0.is_one()) l0 = f.random(rng);
            StandardCover sc = standard_cover_4pts(l0);
            ParaBundle V = random_standard_bundle(rng, sc, 2, random_weights(rng, p, 4, 2));
            CHECK(same_data(bundle_from_json(json::parse(to_json(V).dump())), V));
            LambdaConn H = random_nilpotent_higgs(rng, sc, 2, random_weights(rng, p, 4, 2));
            CHECK(same_data(conn_from_json(json::parse(to_json(H).dump())), H));
            LambdaConn A = random_affine_conn(rng, f, 2, {random_weight(rng, p), random_weight(rng, p)}, f.random(rng));
            CHECK(same_data(conn_from_json(to_json(A)), A));
        }
}

TEST_CASE("JSON input is validated") {
    const Field& f = Field::get(5);
    StandardCover sc = standard_cover_4pts(f.of(2));
    Rng rng(72);
    ParaBundle V = random_standard_bundle(rng, sc, 2, random_weights(rng, 5, 4, 2));
    json j = to_json(V);
    json bad = j;
    bad["weights"][0][0] = json::array({1, 5});
    CHECK_THROWS_AS(bundle_from_json(bad), ValidationError);
    bad = j;
    bad["field"]["modulus"] = json::array({1, 1});
    CHECK_THROWS_AS(bundle_from_json(bad), ValidationError);
    bad = j;
    bad["transitions"][0][1][0][0]["num"] = json::array({7});
    CHECK_THROWS_AS(bundle_from_json(bad), ValidationError);
    // a connection that does not glue
    LambdaConn C = frobenius_pullback(V);
    json c = to_json(C);
    c["connection"][1][0][1] = to_json(RatFn::one(f));
    CHECK_THROWS_AS(conn_from_json(c), ValidationError);
    // rational and point encodings
    CHECK(rational_from_json(to_json(Rational(-3, 4))) == Rational(-3, 4));
    CHECK(point_from_json(f, to_json(PointP1::infinity(f))).is_inf());
    CHECK(point_from_json(f, to_json(PointP1::finite(f.of(3)))) == PointP1::finite(f.of(3)));
}
