#pragma once

#include <vector>

#include "parab/poly.hpp"

namespace parab {

struct Root {
    Fq value;          // lives in the field of the given degree over the base field
    int multiplicity;
    int degree;        // degree of the root's field over the base field
};

// (factor, multiplicity) with monic square-free factors.
std::vector<std::pair<Poly, int>> squarefree_factorization(const Poly& f);
// For a monic square-free f: (product of irreducible factors of degree d, d).
std::vector<std::pair<Poly, int>> distinct_degree_factorization(const Poly& f, int max_degree);
// All roots of f, which must split into distinct linear factors over its field.
std::vector<Fq> split_roots(const Poly& f);

// The embedding F_{p^k} -> F_{p^K} (k | K) sending t to the least root of the
// defining polynomial of F_{p^k}.
Fq embed(const Fq& a, const Field& big);
Poly embed(const Poly& f, const Field& big);
// Inverse of embed on the image; throws if a is not in the subfield.
Fq restrict_to(const Fq& a, const Field& small);

// Roots in the extensions of degree <= max_ext_degree over the coefficient field,
// sorted by degree then encoding. Zero polynomial rejected.
std::vector<Root> poly_roots_with_multiplicity(const Poly& f, int max_ext_degree);

}  // namespace parab
