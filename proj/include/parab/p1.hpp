#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parab/matrix.hpp"
#include "parab/ratfn.hpp"

namespace parab {

class PointP1 {
public:
    static PointP1 finite(const Fq& a) { return PointP1(false, a); }
    static PointP1 infinity(const Field& f) { return PointP1(true, f.zero()); }

    bool is_inf() const { return inf_; }
    const Fq& coord() const;
    const Field& field() const { return a_.field(); }
    bool operator==(const PointP1& o) const { return inf_ == o.inf_ && (inf_ || a_ == o.a_); }
    bool operator!=(const PointP1& o) const { return !(*this == o); }
    bool operator<(const PointP1& o) const;
    // image under the Frobenius twist a -> a^p
    PointP1 twist() const { return inf_ ? *this : finite(a_.frob()); }
    // inverse of twist
    PointP1 untwist() const;
    std::string str() const { return inf_ ? "inf" : a_.str(); }

private:
    PointP1(bool inf, const Fq& a) : inf_(inf), a_(a) {}
    bool inf_;
    Fq a_;
};

// order of f at P and value at P
int order_at(const RatFn& f, const PointP1& P);
Fq value_at(const RatFn& f, const PointP1& P);

class Divisor {
public:
    Divisor() = default;
    explicit Divisor(std::vector<PointP1> pts);
    const std::vector<PointP1>& points() const { return pts_; }
    int size() const { return int(pts_.size()); }
    bool contains(const PointP1& P) const;
    int index_of(const PointP1& P) const;

private:
    std::vector<PointP1> pts_;
};

// P^1 minus a finite nonempty set of rational points.
class Chart {
public:
    Chart(std::string id, const Field& f, std::vector<PointP1> excluded);

    const std::string& id() const { return id_; }
    const Field& field() const { return *f_; }
    const std::vector<PointP1>& excluded() const { return excl_; }
    bool contains(const PointP1& P) const;
    bool excludes_inf() const;
    // First excluded finite point (used when infinity lies in the chart).
    const Fq& base_point() const;

    // Chart coordinate: x when infinity is excluded, else 1/(x - b).
    RatFn coordinate() const;
    // Defining section of a point in the chart (simple zero there, unit elsewhere).
    RatFn section(const PointP1& P) const;
    void set_section(const PointP1& P, const RatFn& s);

    bool is_regular(const RatFn& f) const;
    bool is_unit(const RatFn& f) const;
    bool is_regular(const RMat& m) const;
    // Truncated basis of O(U): monomials up to the given bound at each excluded point.
    std::vector<RatFn> ring_basis(int bound) const;
    // The same chart on the Frobenius twist.
    Chart twist() const;
    Chart untwist() const;

private:
    std::string id_;
    const Field* f_;
    std::vector<PointP1> excl_;
    std::vector<std::pair<PointP1, RatFn>> sections_;
};

struct Cover {
    const Field* field = nullptr;
    std::vector<Chart> charts;
    // points of P^1 deliberately left out (the curve is P^1 minus these)
    std::vector<PointP1> omitted;

    int size() const { return int(charts.size()); }
    // charts are required to cover P^1
    void validate() const;
    std::vector<int> charts_containing(const PointP1& P) const;
    // a point outside the overlap of charts i and j, used to test regularity there
    bool overlap_regular(int i, int j, const RatFn& f) const;
    bool overlap_unit(int i, int j, const RatFn& f) const;
    Cover twist() const;
    Cover untwist() const;
};

Divisor twist(const Divisor& D);
Divisor untwist(const Divisor& D);

// U1 = P^1 - {0, inf}, U2 = P^1 - {1, lambda0}; divisor {0, 1, lambda0, inf}.
struct StandardCover {
    Cover cover;
    Divisor divisor;
    Fq lambda0;
};
StandardCover standard_cover_4pts(const Fq& lambda0);

// O(l) in the U1 trivialization: sections f on U1 with ((x-1)/x)^(-l) f regular on U2.
std::vector<RatFn> h0_basis(const Field& f, int ell);
// ((x-1)/x)^l
RatFn transition_scalar(const Field& f, int ell);

struct CechCocycle {
    int degree;  // the bundle O(degree)
    RatFn rep;   // on U1 n U2, in the U1 trivialization
};

// Coordinates of the class in H^1(O(-l)) in the basis (x/(x-1))^j, j = 1..l-1.
std::vector<Fq> h1_reduce(const StandardCover& sc, const CechCocycle& c);
// Independent computation by solving a truncated linear system.
std::vector<Fq> h1_reduce_oracle(const StandardCover& sc, const CechCocycle& c);
// Residue pairing with x^(i-l) dx, i = 0..l-2, summed over the points 1 and lambda0.
std::vector<Fq> serre_coordinates(const StandardCover& sc, const CechCocycle& c);
// The matrix A with serre_coordinates = A * h1_reduce.
FqMat serre_pairing_matrix(const StandardCover& sc, int ell);
// Reduction map rank on a spanning set of the overlap ring, for dimension checks.
int h1_dimension_by_rank(const StandardCover& sc, int ell);

}  // namespace parab
