#include <algorithm>
#include <random>

#include "doctest.h"
#include "parab/p1.hpp"
#include "parab/samples.hpp"

using namespace parab;

namespace {

std::vector<PointP1> union_excluded(const Cover& c) {
    std::vector<PointP1> out;
    for (const auto& ch : c.charts)
        for (const auto& P : ch.excluded())
            if (std::find(out.begin(), out.end(), P) == out.end()) out.push_back(P);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("standard_cover_4pts") {
    const Field& f5 = Field::get(5);
    StandardCover sc = standard_cover_4pts(f5.of(2));
    std::vector<PointP1> expect{PointP1::finite(f5.of(0)), PointP1::finite(f5.of(1)), PointP1::finite(f5.of(2)),
                                PointP1::infinity(f5)};
    auto got = sc.divisor.points();
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    CHECK(got == expect);
    auto ex1 = sc.cover.charts[0].excluded();
    std::sort(ex1.begin(), ex1.end());
    std::vector<PointP1> zero_inf{PointP1::finite(f5.zero()), PointP1::infinity(f5)};
    std::sort(zero_inf.begin(), zero_inf.end());
    CHECK(ex1 == zero_inf);
    CHECK_NOTHROW(sc.cover.validate());

    CHECK_THROWS_AS(standard_cover_4pts(f5.of(1)), ValidationError);
    CHECK_THROWS_AS(standard_cover_4pts(f5.of(0)), ValidationError);

    // the overlap is P^1 minus {0, 1, 3, inf}
    const Field& f7 = Field::get(7);
    StandardCover s7 = standard_cover_4pts(f7.of(3));
    std::vector<PointP1> ov{PointP1::finite(f7.of(0)), PointP1::finite(f7.of(1)), PointP1::finite(f7.of(3)),
                            PointP1::infinity(f7)};
    std::sort(ov.begin(), ov.end());
    CHECK(union_excluded(s7.cover) == ov);
    // every divisor point lies in exactly one chart
    for (const auto& P : s7.divisor.points()) CHECK(s7.cover.charts_containing(P).size() == 1);
}

TEST_CASE("h0_basis") {
    const Field& f = Field::get(3);
    RatFn x = RatFn::x(f);
    CHECK(h0_basis(f, 0) == std::vector<RatFn>{RatFn::one(f)});
    // U1 trivialization: O(2) has sections 1, 1/x, 1/x^2 there
    CHECK(h0_basis(f, 2) == std::vector<RatFn>{RatFn::one(f), x.inv(), x.pow(-2)});
    CHECK(h0_basis(f, -3).empty());
    StandardCover sc = standard_cover_4pts(f.of(2));
    for (int l = 0; l <= 6; ++l) {
        auto b = h0_basis(f, l);
        CHECK(int(b.size()) == l + 1);
        for (const auto& s : b) {
            CHECK(sc.cover.charts[0].is_regular(s));
            CHECK(sc.cover.charts[1].is_regular(transition_scalar(f, -l) * s));
        }
    }
}

TEST_CASE("transition_scalar") {
    for (std::uint32_t p : {3u, 5u}) {
        const Field& f = Field::get(p);
        RatFn x = RatFn::x(f), xm1 = x - RatFn::one(f);
        CHECK(transition_scalar(f, 0) == RatFn::one(f));
        CHECK(transition_scalar(f, 1) == xm1 / x);
        CHECK(transition_scalar(f, -int(p)) == (x / xm1).pow(int(p)));
    }
}

TEST_CASE("h1_reduce examples") {
    const Field& f = Field::get(5);
    StandardCover sc = standard_cover_4pts(f.of(3));
    RatFn x = RatFn::x(f), xm1 = x - RatFn::one(f);
    // coboundary from U1
    auto z = h1_reduce(sc, {-4, x.pow(3)});
    CHECK(z.size() == 3);
    for (const auto& c : z) CHECK(c.is_zero());
    // a basis element
    auto e = h1_reduce(sc, {-4, (x / xm1).pow(2)});
    CHECK(e == std::vector<Fq>{f.zero(), f.one(), f.zero()});
    // two independent computations agree
    CechCocycle c{-3, x / xm1.pow(2)};
    CHECK(h1_reduce(sc, c) == h1_reduce_oracle(sc, c));
}

TEST_CASE("h1_reduce against the linear-system oracle on random cocycles") {
    Rng rng(21);
    for (std::uint32_t p : {3u, 5u, 7u})
        for (int k : {1, 2}) {
            const Field& f = Field::get(p, k);
            for (int it = 0; it < 15; ++it) {
                Fq l0 = f.random(rng);
                while (l0.is_zero() || l0.is_one()) l0 = f.random(rng);
                StandardCover sc = standard_cover_4pts(l0);
                int ell = 2 + it % 5;
                CechCocycle c{-ell, random_overlap_function(rng, sc, 2, 3)};
                auto a = h1_reduce(sc, c);
                CHECK(a == h1_reduce_oracle(sc, c));
                CHECK(h1_dimension_by_rank(sc, ell) == ell - 1);
                // the coboundaries of U2 (x/(x-1))^l R2 reduce to zero
                RatFn u2 = (RatFn::x(f) / (RatFn::x(f) - RatFn::one(f))).pow(ell) *
                           RatFn::linear_power(f.one(), -1 - it % 3) * RatFn::linear_power(l0, -(it % 2));
                for (const auto& v : h1_reduce(sc, {-ell, u2})) CHECK(v.is_zero());
            }
        }
}

TEST_CASE("cover validation refuses gaps") {
    const Field& f = Field::get(3);
    Cover c;
    c.field = &f;
    c.charts.emplace_back("A", f, std::vector<PointP1>{PointP1::infinity(f)});
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c.omitted.push_back(PointP1::infinity(f));
    CHECK_NOTHROW(c.validate());
}
