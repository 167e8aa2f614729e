#pragma once

#include <stdexcept>
#include <vector>

#include "parab/cartier.hpp"
#include "parab/iso.hpp"
#include "parab/roots.hpp"

namespace parab {

struct NonPeriodicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// O(a) + O(-a) on the standard cover with theta: L1 -> L2 (x) Omega(log D), U1 coefficient against dx.
struct GradedHiggsR2 {
    StandardCover sc;
    int a = 1;
    RatFn theta;
    // per divisor point, weights of (e1, e2); empty means trivial
    std::vector<std::vector<Rational>> weights;
};

// theta = c x/((x-1)(x-lambda)) with c = lambda(lambda-1) times the given scale.
GradedHiggsR2 legendre_family(const Fq& lambda, const Fq& scale);
GradedHiggsR2 legendre_family(const Fq& lambda);
LambdaConn to_higgs(const GradedHiggsR2& E);
// Transition of O(l) from U1 to U2: (x/(x-1))^l.
ParaBundle line_bundle(const StandardCover& sc, int l);

struct ExtClass {
    CechCocycle cocycle;
    std::vector<Fq> coords;  // h1_reduce coordinates
};
// E lives on the Frobenius twist; kappa on the curve itself.
ExtClass extension_class(const GradedHiggsR2& E, const DICocycle& kappa);

// Matrix of sigma -> [xi sigma], sigma in the basis x^-j of H^0(O(p-1)),
// coordinates given by the residue pairing with x^(i-p-1) dx.
FqMat boundary_delta(const GradedHiggsR2& E, const DICocycle& kappa);
// Delta_ii = lambda1, Delta_ij = (l0^p - l0^(p+i-j))/(i-j).
FqMat delta_closed_form(std::uint32_t p, const Fq& lambda0, const Fq& lambda1);
// Delta0 with Delta = lambda1 I + Delta0.
FqMat delta_closed_form_constant(std::uint32_t p, const Fq& lambda0);

// Characteristic polynomial det(t I - A) via Hessenberg reduction.
Poly charpoly(const FqMat& A);
// det(lambda1 I + Delta0) = charpoly(-Delta0)(lambda1).
Poly det_poly_lambda1(std::uint32_t p, const Fq& lambda0);

struct RootTable {
    Poly det;
    std::vector<Root> roots;                   // up to the requested extension degree
    std::vector<std::pair<int, int>> factors;  // (degree, multiplicity) of irreducible factors
    int total_multiplicity = 0;                // over the splitting field
    int distinct_count = 0;                    // over the splitting field
    int found_multiplicity = 0;                // counted among the listed roots
};
RootTable periodicity_roots(std::uint32_t p, const Fq& lambda0, int max_ext_degree);

int kernel_dimension(const FqMat& A);
// 1 when dim ker delta = 1, 0 when it is 0.
int hn_type(const GradedHiggsR2& E, const DICocycle& kappa);
// Brute force: dim Hom(O(1), C^-1(E)) by solving the glueing system.
int hom_from_O1_dimension(const GradedHiggsR2& E, const FrobLift& F);

struct FlowStep {
    LambdaConn deRham;       // C^-1(E)
    ParaMorphism iota;       // O(1) -> H
    LambdaConn filtered;     // H in the basis adapted to O(1) in H
    GradedHiggsR2 graded;    // Gr(H), on the curve itself
};
FlowStep flow_step(const GradedHiggsR2& E, const FrobLift& F);
// Isomorphism between the graded output and the family member on the curve.
bool is_period_one(const FlowStep& s);

}  // namespace parab
