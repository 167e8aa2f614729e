#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "parab/connection.hpp"

namespace parab {

// Parabolic morphisms A -> B with entries in the truncated chart rings of the given bound.
// With connections the morphisms are also required to be horizontal.
std::vector<ParaMorphism> bundle_morphism_space(const ParaBundle& A, const ParaBundle& B, int bound);
std::vector<ParaMorphism> morphism_space(const LambdaConn& A, const LambdaConn& B, int bound);

bool is_horizontal(const ParaMorphism& f, const LambdaConn& A, const LambdaConn& B);
// Invertible on every chart with a parabolic inverse.
bool is_bundle_isomorphism(const ParaMorphism& f, const ParaBundle& A, const ParaBundle& B);

// Bounds 0, 1, 2, 4, ... up to max_bound (default 4p); 0 means default.
std::optional<ParaMorphism> find_bundle_isomorphism(const ParaBundle& A, const ParaBundle& B, int max_bound = 0,
                                                    std::uint64_t seed = 1);
std::optional<ParaMorphism> find_isomorphism(const LambdaConn& A, const LambdaConn& B, int max_bound = 0,
                                             std::uint64_t seed = 1);

}  // namespace parab
