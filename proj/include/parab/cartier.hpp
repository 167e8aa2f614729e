#pragma once

#include <vector>

#include "parab/connection.hpp"
#include "parab/w2poly.hpp"

namespace parab {

// Per-chart lifts X~ -> X~' of the relative Frobenius, preserving the divisor points of each chart.
struct FrobLift {
    Cover cover;       // on X
    Divisor divisor;   // on X
    std::vector<Wp2Elem> point_lifts;  // per divisor point (unused for infinity)
    std::vector<W2RatFn> lift;         // per chart
};

// Picks x^p, (x - a)^p + sigma(a), or the two-point interpolating lift depending on
// which finite divisor points the chart contains.
FrobLift frobenius_lifts(const Cover& cover, const Divisor& D, const std::vector<Wp2Elem>& point_lifts);
// Standard four-point cover of lambda = lam mod p.
FrobLift frobenius_lifts_4pts(const Wp2Elem& lam);
// Reduction is x^p and every divisor point a~ of a chart maps to sigma(a~).
void validate_lift(const FrobLift& F);

struct DICocycle {
    std::vector<std::vector<RatFn>> h;  // h[i][j] = (F_i - F_j)/p
};
DICocycle deligne_illusie(const FrobLift& F);
// The closed form (f_l0(x)(x^p - 1) - f_1(x)(x^p - l0^p)) / (l0^p - 1).
RatFn di_closed_form(const Wp2Elem& lam);
// dF~_i/p as a dx-coefficient, per chart.
std::vector<RatFn> lift_differentials(const FrobLift& F);

// sum_{k<p} A^k/k!; requires A^p = 0.
RMat truncated_exp(const RMat& A);

// Higgs object (lambda = 0) on the twist of F.cover -> flat connection on F.cover.
LambdaConn inverse_cartier(const LambdaConn& higgs, const FrobLift& F);

struct Descent {
    ParaBundle bundle;                   // on the Frobenius twist
    std::vector<RMat> frames;            // rows: horizontal sections on each chart
    std::vector<RMat> inverse;           // frames^-1
    std::vector<std::vector<i64>> ell;   // shift per divisor point and basis vector
};
// Row vector v -> sum_w (-y)^w/w! nabla_{d/dy}^w v with y the chart coordinate.
std::vector<RatFn> apply_P(const LambdaConn& C, int chart, const std::vector<RatFn>& v);
std::vector<RatFn> apply_nabla_dy(const LambdaConn& C, int chart, const std::vector<RatFn>& v);
// Minimal l >= 0 with p | (numerator + l * denominator).
i64 descent_shift(const Rational& gamma, std::uint32_t p);
Descent cartier_descend(const LambdaConn& C);

// nabla' = nabla + zeta psi, glued by exp(h psi).
LambdaConn exp_twist(const LambdaConn& C, const FrobLift& F);
LambdaConn cartier(const LambdaConn& C, const FrobLift& F);
// psi' + psi M - M psi = 0
bool is_parallel(const RMat& psi, const RMat& M);

}  // namespace parab
