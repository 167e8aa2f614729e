#pragma once

#include <random>
#include <vector>

#include "parab/cartier.hpp"
#include "parab/flow.hpp"

namespace parab {

using Rng = std::mt19937_64;

// Uniform in [0, 1) with denominator at most max_den and prime to p.
Rational random_weight(Rng& rng, std::uint32_t p, int max_den = 6);
std::vector<std::vector<Rational>> random_weights(Rng& rng, std::uint32_t p, int npoints, int rank,
                                                  int max_den = 6);
// A random element of the overlap ring of the standard cover: sum of c x^i (x-1)^j (x-lambda0)^k.
RatFn random_overlap_function(Rng& rng, const StandardCover& sc, int max_exp = 1, int terms = 2);
// Random unit of the overlap ring.
RatFn random_overlap_unit(Rng& rng, const StandardCover& sc, int max_exp = 1);

// Random parabolic bundle on the standard cover (no divisor point lies on the overlap,
// so any invertible transition is admissible).
ParaBundle random_standard_bundle(Rng& rng, const StandardCover& sc, int rank,
                                  const std::vector<std::vector<Rational>>& weights);

// Nilpotent Higgs field on a random bundle: rank 1 gives theta = 0, rank 2 an upper triangular
// transition with theta: e0 -> t e1.
LambdaConn random_nilpotent_higgs(Rng& rng, const StandardCover& sc, int rank,
                                  const std::vector<std::vector<Rational>>& weights);

// Random logarithmic lambda-connection on the affine line with divisor {0}; entries are
// c x^k / x with k in [0, max_deg] (k >= 1 where the weights force it).
LambdaConn random_affine_conn(Rng& rng, const Field& f, int rank, const std::vector<Rational>& weights,
                              const Fq& lambda, int max_deg = 2);
// Strictly upper triangular Higgs field on the affine line.
LambdaConn random_affine_nilpotent_higgs(Rng& rng, const Field& f, int rank, const std::vector<Rational>& weights,
                                         int max_deg = 2);
// Random mu_N-equivariant object on the affine line.
EquivConn random_equivariant(Rng& rng, const Field& f, int rank, int N, const Fq& lambda, int max_deg = 2);

// A^1 covered by the principal opens A^1 - {c_i}.
Cover principal_open_cover(const Field& f, const std::vector<Fq>& centers);
// Chart i lifted by (x - c_i)^p + sigma(c_i); no divisor.
FrobLift translate_lifts(const Cover& cover, const std::vector<Wp2Elem>& centers);
// Frobenius lift x^p on the affine line.
FrobLift affine_lift(const Field& f);

}  // namespace parab
