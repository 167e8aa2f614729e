#include <random>

#include "doctest.h"
#include "parab/flow.hpp"
#include "parab/samples.hpp"

using namespace parab;

namespace {

struct Setup {
    FrobLift F;
    DICocycle kappa;
    GradedHiggsR2 E;
};

Setup setup(const Fq& l0, const Fq& l1) {
    Setup s{frobenius_lifts_4pts(wp2_from_witt(l0, l1)), {}, legendre_family(l0.frob())};
    s.kappa = deligne_illusie(s.F);
    return s;
}

FqMat from_rows(const Field& f, const std::vector<std::vector<int>>& rows) {
    FqMat m = fqmat_zero(f, int(rows.size()), int(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(int(i), int(j)) = f.of(rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("delta_closed_form") {
    const Field& f3 = Field::get(3);
    // worked by hand: Delta0(i,j) = (2 - 2^(3+i-j))/(i-j) mod 3
    CHECK(delta_closed_form_constant(3, f3.of(2)) == from_rows(f3, {{0, 2, 0}, {1, 0, 2}, {0, 1, 0}}));
    for (std::uint32_t p : {3u, 5u, 7u}) {
        const Field& f = Field::get(p);
        for (const auto& l0 : f.elements()) {
            if (l0.is_zero() || l0.is_one()) continue;
            for (const auto& l1 : f.elements()) {
                FqMat D = delta_closed_form(p, l0, l1);
                CHECK(D(0, 0) == l1);
                // first superdiagonal: (l0^p - l0^(p-1))/(p-1), constant along the diagonal
                Fq sup = (l0.pow(p) - l0.pow(p - 1)) / f.of(i64(p) - 1);
                for (int i = 0; i + 1 < int(p); ++i) CHECK(D(i, i + 1) == sup);
                CHECK(D(1, 0) == l0.pow(p) - l0.pow(p + 1));
                CHECK(D(0, int(p) - 1).is_zero());
            }
        }
        CHECK_THROWS_AS(delta_closed_form_constant(p, f.one()), ValidationError);
    }
}

TEST_CASE("boundary_delta equals the closed form") {
    Rng rng(61);
    for (std::uint32_t p : {3u, 5u}) {
        const Field& f = Field::get(p);
        for (const auto& l0 : f.elements()) {
            if (l0.is_zero() || l0.is_one()) continue;
            for (const auto& l1 : f.elements()) {
                Setup s = setup(l0, l1);
                FqMat D = boundary_delta(s.E, s.kappa);
                CHECK(D.rows() == int(p));
                CHECK(D == delta_closed_form(p, l0, l1));
            }
        }
        const Field& f2 = Field::get(p, 2);
        for (int it = 0; it < 3; ++it) {
            Fq l0 = f2.random(rng);
            while (l0.in_prime_field()) l0 = f2.random(rng);
            Fq l1 = f2.random(rng);
            Setup s = setup(l0, l1);
            CHECK(boundary_delta(s.E, s.kappa) == delta_closed_form(p, l0, l1));
        }
    }
    CHECK(h0_basis(Field::get(5), 4).size() == 5);
}

TEST_CASE("extension_class") {
    const Field& f3 = Field::get(3);
    // a = 1, lambda = (2, 1): against the linear-system reduction of the literal product
    Setup s = setup(f3.of(2), f3.of(1));
    ExtClass e = extension_class(s.E, s.kappa);
    StandardCover X = standard_cover_4pts(f3.of(2));
    CechCocycle lit{-6, s.E.theta.subs_power(3) * di_closed_form(wp2_from_witt(f3.of(2), f3.of(1)))};
    CHECK(e.coords == h1_reduce_oracle(X, lit));
    CHECK(e.coords.size() == 5);
    // theta = 0: split
    for (const auto& c : extension_class(legendre_family(f3.of(2), f3.zero()), s.kappa).coords) CHECK(c.is_zero());
    // a = 0: H^1(O) = 0
    GradedHiggsR2 E0 = s.E;
    E0.a = 0;
    CHECK(extension_class(E0, s.kappa).coords.empty());
    // linear in theta
    Rng rng(62);
    const Field& f5 = Field::get(5);
    Setup t = setup(f5.of(3), f5.of(4));
    for (int it = 0; it < 5; ++it) {
        Fq a = f5.random(rng), b = f5.random(rng);
        auto ca = extension_class(legendre_family(f5.of(3), a), t.kappa).coords;
        auto cb = extension_class(legendre_family(f5.of(3), b), t.kappa).coords;
        auto cab = extension_class(legendre_family(f5.of(3), a + b), t.kappa).coords;
        for (size_t i = 0; i < cab.size(); ++i) CHECK(cab[i] == ca[i] + cb[i]);
    }
}

TEST_CASE("det_poly_lambda1") {
    const Field& f3 = Field::get(3);
    // t^3 + 2t
    CHECK(det_poly_lambda1(3, f3.of(2)) == Poly(f3, {0, 2, 0, 1}));
    Rng rng(63);
    for (std::uint32_t p : {3u, 5u, 7u}) {
        const Field& f = Field::get(p);
        for (const auto& l0 : f.elements()) {
            if (l0.is_zero() || l0.is_one()) continue;
            Poly d = det_poly_lambda1(p, l0);
            CHECK(d.deg() == int(p));
            CHECK(d.lc().is_one());
            CHECK(d.coeff(0) == delta_closed_form_constant(p, l0).det());
            for (const auto& l1 : f.elements()) CHECK(d.eval(l1) == delta_closed_form(p, l0, l1).det());
        }
        // Galois conjugation
        const Field& f2 = Field::get(p, 2);
        Fq l0 = f2.random(rng);
        while (l0.in_prime_field()) l0 = f2.random(rng);
        CHECK(det_poly_lambda1(p, l0.frob()) == det_poly_lambda1(p, l0).map_coeffs_frob(1));
    }
}

TEST_CASE("periodicity_roots") {
    const Field& f3 = Field::get(3);
    RootTable t = periodicity_roots(3, f3.of(2), 1);
    REQUIRE(t.roots.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(t.roots[i].value == f3.of(i));
        CHECK(t.roots[i].multiplicity == 1);
        CHECK(t.roots[i].degree == 1);
    }
    CHECK(t.total_multiplicity == 3);
    CHECK(t.distinct_count == 3);
    // p = 5, lambda0 = 2: three roots in F_5, two more in F_25
    const Field& f5 = Field::get(5);
    RootTable u = periodicity_roots(5, f5.of(2), 2);
    int deg1 = 0, deg2 = 0;
    for (const auto& r : u.roots) (r.degree == 1 ? deg1 : deg2) += r.multiplicity;
    CHECK(deg1 == 3);
    CHECK(deg2 == 2);
    CHECK(u.total_multiplicity == 5);
    CHECK(u.found_multiplicity == 5);
    for (int v : {0, 3}) CHECK_FALSE(u.det.eval(f5.of(v)).is_zero());
    // roots of the conjugate are the conjugate roots
    Rng rng(64);
    const Field& f9 = Field::get(3, 2);
    for (int it = 0; it < 3; ++it) {
        Fq l0 = f9.random(rng);
        while (l0.in_prime_field()) l0 = f9.random(rng);
        RootTable a = periodicity_roots(3, l0, 3), b = periodicity_roots(3, l0.frob(), 3);
        CHECK(a.total_multiplicity == 3);
        REQUIRE(a.roots.size() == b.roots.size());
        for (const auto& r : a.roots) {
            bool found = false;
            for (const auto& s : b.roots) found = found || (s.value == r.value.frob() && s.multiplicity == r.multiplicity);
            CHECK(found);
        }
    }
}

TEST_CASE("hn_type and the brute-force Hom dimension") {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        const Field& f = Field::get(p);
        for (const auto& l0 : f.elements()) {
            if (l0.is_zero() || l0.is_one()) continue;
            Poly d = det_poly_lambda1(p, l0);
            for (const auto& l1 : f.elements()) {
                Setup s = setup(l0, l1);
                int k = kernel_dimension(boundary_delta(s.E, s.kappa));
                CHECK(k <= 1);
                int a = hn_type(s.E, s.kappa);
                CHECK(a == k);
                CHECK((a == 1) == d.eval(l1).is_zero());
                if (p <= 5) CHECK(hom_from_O1_dimension(s.E, s.F) == a);
                // invariant under scaling theta
                CHECK(hn_type(legendre_family(l0.frob(), f.of(2)), s.kappa) == a);
            }
        }
    }
}

TEST_CASE("flow_step") {
    const Field& f3 = Field::get(3);
    // every lambda1 in F_3 is a root for lambda0 = 2
    for (int b = 0; b < 3; ++b) {
        Setup s = setup(f3.of(2), f3.of(b));
        FlowStep st = flow_step(s.E, s.F);
        CHECK(st.graded.a == 1);
        CHECK_FALSE(st.graded.theta.is_zero());
        CHECK(is_period_one(st));
        CHECK(validate_conn(st.deRham).ok);
    }
    // non-roots from F_9
    const Field& f9 = Field::get(3, 2);
    Fq l0 = embed(f3.of(2), f9);
    int seen = 0;
    for (const auto& l1 : f9.elements()) {
        if (l1.in_prime_field()) continue;
        Setup s = setup(l0, l1);
        CHECK(hn_type(s.E, s.kappa) == 0);
        CHECK_THROWS_AS(flow_step(s.E, s.F), NonPeriodicError);
        if (++seen == 3) break;
    }
    // p = 5, lambda0 = 2: roots 1, 2, 4 periodic; 0 and 3 not
    const Field& f5 = Field::get(5);
    for (int b = 0; b < 5; ++b) {
        Setup s = setup(f5.of(2), f5.of(b));
        bool root = det_poly_lambda1(5, f5.of(2)).eval(f5.of(b)).is_zero();
        CHECK(root == (b != 0 && b != 3));
        if (root)
            CHECK(is_period_one(flow_step(s.E, s.F)));
        else
            CHECK_THROWS_AS(flow_step(s.E, s.F), NonPeriodicError);
    }
}
