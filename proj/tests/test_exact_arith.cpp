#include <random>

#include "doctest.h"
#include "parab/matrix.hpp"
#include "parab/rational.hpp"
#include "parab/roots.hpp"
#include "parab/w2poly.hpp"
#include "parab/witt.hpp"

using namespace parab;

TEST_CASE("field construction and rejection of p = 2") {
    CHECK_THROWS_AS(Field::get(2, 1), ValidationError);
    CHECK_THROWS_AS(Field::get(9, 1), ValidationError);
    const Field& f9 = Field::get(3, 2);
    CHECK(f9.q() == 9);
    // x^2 + 1 is the least monic irreducible quadratic over F_3
    CHECK(f9.modulus() == std::vector<std::uint32_t>{1, 0, 1});
    CHECK(&Field::get(3, 2) == &f9);
}

TEST_CASE("field axioms on random samples") {
    std::mt19937_64 rng(11);
    for (auto [p, k] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {7, 2}, {3, 5}, {5, 3}, {7, 9}}) {
        const Field& f = Field::get(p, k);
        for (int it = 0; it < 100; ++it) {
            Fq a = f.random(rng), b = f.random(rng), c = f.random(rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a - a == f.zero());
            if (!a.is_zero()) CHECK(a * a.inv() == f.one());
            CHECK(a.pow(f.q()) == a);
        }
    }
}

TEST_CASE("wp2_from_witt examples") {
    const Field& f3 = Field::get(3);
    CHECK(wp2_from_witt(f3.one(), f3.zero()).code() == 1);
    for (int a1 = 0; a1 < 3; ++a1) CHECK(wp2_from_witt(f3.zero(), f3.of(a1)).code() == u64(3 * a1));
    // 2^3 = 8 mod 9
    u64 expect = 1;
    for (int i = 0; i < 3; ++i) expect = expect * 2 % 9;
    CHECK(wp2_from_witt(f3.of(2), f3.zero()).code() == expect);
}

TEST_CASE("W2 ring axioms, witt roundtrip and Teichmuller multiplicativity") {
    std::mt19937_64 rng(12);
    for (auto [p, k] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}}) {
        const Field& f = Field::get(p, k);
        for (int it = 0; it < 100; ++it) {
            Fq a0 = f.random(rng), a1 = f.random(rng), b0 = f.random(rng), b1 = f.random(rng);
            Wp2Elem x = wp2_from_witt(a0, a1), y = wp2_from_witt(b0, b1), z = wp2_from_witt(a1, b0);
            CHECK(x.reduce() == a0);
            auto [c0, c1] = x.witt();
            CHECK(c0 == a0);
            CHECK(c1 == a1);
            CHECK((x + y) + z == x + (y + z));
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            CHECK(x * y == y * x);
            CHECK(wp2_from_witt(a0 * b0, f.zero()) == wp2_from_witt(a0, f.zero()) * wp2_from_witt(b0, f.zero()));
            if (x.is_unit()) CHECK(x * x.inv() == Wp2Elem::one(f));
            auto [s0, s1] = x.sigma().witt();
            CHECK(s0 == a0.frob());
            CHECK(s1 == a1.frob());
        }
    }
}

TEST_CASE("frac_int_parts") {
    auto [n1, w1] = frac_int_parts(Rational(4, 3), 5);
    CHECK(n1 == 1);
    CHECK(w1.value() == Rational(1, 3));
    auto [n2, w2] = frac_int_parts(Rational(-1, 2), 5);
    CHECK(n2 == -1);
    CHECK(w2.value() == Rational(1, 2));
    auto [n3, w3] = frac_int_parts(Rational(3) * Rational(1, 2), 3);
    CHECK(n3 == 1);
    CHECK(w3.value() == Rational(1, 2));
    CHECK_THROWS_AS(frac_int_parts(Rational(1, 3), 3), ValidationError);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 200; ++it) {
        i64 d = std::uniform_int_distribution<i64>(1, 40)(rng);
        if (d % 7 == 0) continue;
        Rational q(std::uniform_int_distribution<i64>(-500, 500)(rng), d);
        auto [n, w] = frac_int_parts(q, 7);
        CHECK(w.value() >= Rational(0));
        CHECK(w.value() < Rational(1));
        CHECK(Rational(n) + w.value() == q);
    }
}

TEST_CASE("poly_roots_with_multiplicity examples") {
    const Field& f5 = Field::get(5);
    auto r = poly_roots_with_multiplicity(Poly::from_ints(f5, {-1, 0, 1}), 1);
    REQUIRE(r.size() == 2);
    CHECK(r[0].value == f5.of(1));
    CHECK(r[0].multiplicity == 1);
    CHECK(r[1].value == f5.of(4));
    r = poly_roots_with_multiplicity(Poly::from_ints(f5, {1, -2, 1}), 1);
    REQUIRE(r.size() == 1);
    CHECK(r[0].value == f5.of(1));
    CHECK(r[0].multiplicity == 2);

    const Field& f3 = Field::get(3);
    Poly g = Poly::from_ints(f3, {1, 0, 1});
    CHECK(poly_roots_with_multiplicity(g, 1).empty());
    r = poly_roots_with_multiplicity(g, 2);
    REQUIRE(r.size() == 2);
    // brute-force scan of F_9 for roots of x^2 + 1
    const Field& f9 = Field::get(3, 2);
    std::vector<Fq> scan;
    for (const Fq& z : f9.elements())
        if ((z * z + f9.one()).is_zero()) scan.push_back(z);
    REQUIRE(scan.size() == 2);
    CHECK(r[0].value == scan[0]);
    CHECK(r[1].value == scan[1]);
    CHECK(r[0].degree == 2);
    CHECK_THROWS_AS(poly_roots_with_multiplicity(Poly(f3), 1), ValidationError);
}

TEST_CASE("root finding agrees with brute force on random polynomials") {
    std::mt19937_64 rng(21);
    for (int p : {3, 5, 7}) {
        const Field& f = Field::get(p);
        const Field& f2 = Field::get(p, 2);
        for (int it = 0; it < 30; ++it) {
            int d = std::uniform_int_distribution<int>(1, 6)(rng);
            std::vector<u64> c(d + 1);
            for (auto& v : c) v = f.random(rng).code();
            c[d] = 1 + rng() % (p - 1);
            Poly g(f, c);
            // square a random factor in to exercise multiplicities
            if (it % 3 == 0) g = g * Poly::from_ints(f, {i64(rng() % p), 1}).pow(p);
            auto roots = poly_roots_with_multiplicity(g, 2);
            int total = 0;
            for (auto& r : roots) total += r.multiplicity;
            int brute = 0;
            Poly g2 = embed(g, f2);
            for (const Fq& z : f2.elements()) {
                if (!g2.eval(z).is_zero()) continue;
                brute += g2.order_at(z);
            }
            CHECK(total == brute);
            for (auto& r : roots) {
                Poly gr = embed(g, r.value.field());
                CHECK(gr.order_at(r.value) == r.multiplicity);
            }
        }
    }
}

TEST_CASE("a degree-d polynomial over F_p splits within degree d") {
    std::mt19937_64 rng(5);
    const Field& f = Field::get(3);
    for (int it = 0; it < 20; ++it) {
        int d = std::uniform_int_distribution<int>(2, 6)(rng);
        std::vector<u64> c(d + 1);
        for (auto& v : c) v = f.random(rng).code();
        c[d] = 1;
        Poly g(f, c);
        int total = 0;
        for (auto& r : poly_roots_with_multiplicity(g, d)) total += r.multiplicity;
        CHECK(total == d);
    }
}

TEST_CASE("embeddings are ring homomorphisms and restrict inverts them") {
    std::mt19937_64 rng(8);
    const Field& s = Field::get(5, 2);
    const Field& b = Field::get(5, 6);
    for (int it = 0; it < 50; ++it) {
        Fq a = s.random(rng), c = s.random(rng);
        CHECK(embed(a * c, b) == embed(a, b) * embed(c, b));
        CHECK(embed(a + c, b) == embed(a, b) + embed(c, b));
        CHECK(restrict_to(embed(a, b), s) == a);
    }
}

TEST_CASE("ratfn_arith examples") {
    const Field& f = Field::get(5);
    RatFn x = RatFn::x(f);
    RatFn one = RatFn::one(f);
    RatFn a = x / (x - one), b = (x - one) / x;
    CHECK((a * b).is_one());
    CHECK(one / x + one / x == RatFn::constant(f.of(2)) / x);
    CHECK_THROWS_AS(a / RatFn::zero(f), ArithmeticError);

    // f_1 = sum_{i=1}^{p-1} x^i / i over F_3; inverses found by search
    const Field& f3 = Field::get(3);
    RatFn f1 = RatFn::zero(f3);
    for (int i = 1; i <= 2; ++i) {
        int inv = 0;
        for (int t = 1; t < 3; ++t)
            if (i * t % 3 == 1) inv = t;
        f1 += RatFn::x(f3).pow(i) * f3.of(inv);
    }
    CHECK(f1 == RatFn(Poly::from_ints(f3, {0, 1, 2})));
}

TEST_CASE("RatFn canonical form is determined by values") {
    std::mt19937_64 rng(9);
    const Field& f = Field::get(7, 2);
    for (int it = 0; it < 50; ++it) {
        auto rp = [&](int d) {
            std::vector<u64> c(d + 1);
            for (auto& v : c) v = f.random(rng).code();
            c[d] = 1;
            return Poly(f, c);
        };
        Poly n = rp(2), d = rp(2), m = rp(1);
        RatFn a(n * m, d * m), b(n, d);
        CHECK(a == b);
        CHECK(a.den().lc().is_one());
        CHECK(gcd(a.num(), a.den()).is_one());
        // value agreement on many points implies structural equality
        RatFn c = a + RatFn::zero(f);
        int agree = 0;
        for (const Fq& z : f.elements()) {
            if (b.den().eval(z).is_zero()) continue;
            if (c.eval(z) == b.eval(z)) ++agree;
        }
        CHECK(agree >= a.num().deg() + a.den().deg() + 1);
        CHECK(c == b);
    }
    CHECK(RatFn::zero(f) == RatFn(Poly(f), Poly(f, {3})));
}

TEST_CASE("RatFn calculus") {
    const Field& f = Field::get(7);
    RatFn x = RatFn::x(f);
    RatFn one = RatFn::one(f);
    RatFn g = one / (x - one);
    CHECK(g.derivative() == -(one / ((x - one) * (x - one))));
    CHECK(g.residue(f.one()) == f.one());
    CHECK((one / x).residue_inf() == -f.one());
    CHECK(g.order_at(f.one()) == -1);
    CHECK(g.order_at_inf() == 1);
    auto [v, c] = (x * x / (x - one)).laurent(f.one(), 3);
    CHECK(v == -1);
    CHECK(c[0] == f.one());
    CHECK(c[1] == f.of(2));
    CHECK(c[2] == f.one());
    CHECK((x.pow(7) + x.pow(14)).unfrob() == x + x * x);
}

TEST_CASE("W2 polynomials reduce and divide by p") {
    const Field& f = Field::get(5);
    W2Poly x = W2Poly::x(f);
    W2Poly one = W2Poly::constant(Wp2Elem::one(f));
    W2Poly d = (x + one).pow(5) - x.pow(5) - one;
    CHECK(d.reduce().is_zero());
    // ((x+1)^5 - x^5 - 1) / 5 = x^4 + 2x^3 + 2x^2 + x
    CHECK(d.div_p() == Poly::from_ints(f, {0, 1, 2, 2, 1}));
}

TEST_CASE("matrix inverse, det and nullspace") {
    std::mt19937_64 rng(4);
    const Field& f = Field::get(7);
    for (int it = 0; it < 30; ++it) {
        FqMat m(4, 4, f.zero());
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = f.random(rng);
        if (m.det().is_zero()) continue;
        CHECK(m * m.inverse() == fqmat_identity(f, 4));
    }
    std::vector<std::vector<u64>> rows{{1, 2, 3}, {2, 4, 6}};
    auto ns = nullspace(f, rows, 3);
    CHECK(ns.size() == 2);
    for (auto& v : ns) CHECK(f.add(f.add(v[0], f.mul(2, v[1])), f.mul(3, v[2])) == 0);
}
