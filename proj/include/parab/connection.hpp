#pragma once

#include <vector>

#include "parab/parabolic.hpp"

namespace parab {

// A lambda-connection on the original bases: nabla e_i = conn[i] e_i dx (row convention).
// lambda = 0 gives a Higgs field, lambda = 1 a connection.
struct LambdaConn {
    ParaBundle bundle;
    Fq lambda;
    std::vector<RMat> conn;

    const Field& field() const { return *bundle.field; }
    int rank() const { return bundle.rank; }
};

LambdaConn zero_conn(const ParaBundle& V, const Fq& lambda);

// s / s' : turns a dx-coefficient into a dlog s coefficient
RatFn dlog_factor(const RatFn& s);

// Glueing M_i = E M_j E^-1 + lambda dE E^-1, logarithmic poles, admissibility.
ValidationReport validate_conn(const LambdaConn& C);

// New bases e'_i = g_i e_i (weights unchanged).
LambdaConn gauge(const LambdaConn& C, const std::vector<RMat>& g);

// Connection matrix on the formal parabolic bases of a chart, as dx-coefficients
// times powers of the chart's sections: entry (l,m) carries s^(alpha_m - alpha_l).
std::vector<std::vector<FormalEntry>> para_conn_matrix(const LambdaConn& C, int chart);
// Residue on the local parabolic basis at divisor point d.
FqMat parabolic_residue(const LambdaConn& C, int d);
// Ordinary residue of the dlog coefficient on the original basis of the first chart through d.
FqMat ordinary_residue(const LambdaConn& C, int d);

enum class ResidueClass { strong, adjusted, neither };
const char* to_string(ResidueClass c);
ResidueClass classify(const LambdaConn& C);
// Eigenvalue form: each equal-weight block of the ordinary residue has the single eigenvalue lambda*alpha.
bool adjusted_by_eigenvalues(const LambdaConn& C);

// psi(x d/dx) and psi(d/dx) on the original basis of a chart; lambda must be 1.
RMat p_curvature(const LambdaConn& C, int chart);
RMat p_curvature_dx(const LambdaConn& C, int chart);
bool p_curvature_vanishes(const LambdaConn& C);

// V on a cover of X'; the result lives on the untwisted cover of X.
LambdaConn frobenius_pullback(const ParaBundle& V);
// Exponents [p alpha] used for the twist of F*e on each chart.
std::vector<std::vector<i64>> frobenius_twist_exponents(const ParaBundle& V);

// Tensor product of two lambda-connections with the same lambda.
LambdaConn tensor(const LambdaConn& A, const LambdaConn& B);

// Cyclic covers y = x^N over the affine line with divisor {0}.
struct AffineSetup {
    Cover cover;
    Divisor divisor;
};
AffineSetup affine_line(const Field& f);
bool is_affine_setup(const ParaBundle& V);

// mu_N-equivariant object: basis vector l transforms by zeta^chi[l].
struct EquivConn {
    LambdaConn conn;
    int N = 1;
    std::vector<int> chi;
};
ValidationReport validate_equivariant(const EquivConn& E);

LambdaConn pullback_cyclic(const LambdaConn& C, int N);
EquivConn pullback_cyclic_equivariant(const LambdaConn& C, int N);
// Basis e_l x^t is index l*N + t.
LambdaConn pushforward_cyclic(const LambdaConn& C, int N);
LambdaConn invariants_cyclic(const EquivConn& E);

}  // namespace parab
