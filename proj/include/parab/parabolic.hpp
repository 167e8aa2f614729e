#pragma once

#include <functional>
#include <string>
#include <vector>

#include "parab/p1.hpp"
#include "parab/rational.hpp"

namespace parab {

struct ValidationReport {
    bool ok = true;
    std::string first_violation;
    std::vector<std::string> notes;

    void fail(const std::string& msg) {
        if (ok) first_violation = msg;
        ok = false;
    }
};

// A vector bundle on P^1 given by a cover, transition matrices on the
// original bases (row convention e_i = E_ij e_j) and weights at divisor points.
struct ParaBundle {
    const Field* field = nullptr;
    Cover cover;
    Divisor divisor;
    int rank = 0;
    // weights[d][l]: weight of basis vector l at divisor point d
    std::vector<std::vector<Rational>> weights;
    // trans[i][j] = E_ij; trans[i][i] = identity
    std::vector<std::vector<RMat>> trans;

    int charts() const { return cover.size(); }
    const RMat& E(int i, int j) const { return trans[i][j]; }
    // Divisor point indices lying in chart i.
    std::vector<int> points_in_chart(int i) const;
    // diag(prod over divisor points P in chart i of s_P^expo(P, l))
    RMat section_diag(int i, const std::function<i64(int, int)>& expo) const;
    RatFn section(int i, int d) const { return cover.charts[i].section(divisor.points()[d]); }
};

// Transitions from E_0j (base[0] is ignored): E_ij = E_0i^-1 E_0j.
ParaBundle make_bundle(const Cover& cover, const Divisor& D, int rank, std::vector<std::vector<Rational>> weights,
                       const std::vector<RMat>& base);
// Trivial bundle of the given rank with all transitions the identity.
ParaBundle trivial_bundle(const Cover& cover, const Divisor& D, int rank, std::vector<std::vector<Rational>> weights);

// Formal entry f * prod s^e, each s the section of a divisor point on some chart.
struct FormalEntry {
    struct Power {
        int chart;
        int point;
        Rational exp;
    };
    RatFn coeff;
    std::vector<Power> powers;
};
// p_ij = diag(s_i^-alpha) E_ij diag(s_j^alpha) as formal entries.
std::vector<std::vector<FormalEntry>> parabolic_transition(const ParaBundle& V, int i, int j);
// Order of a formal entry at divisor point d.
Rational formal_order(const ParaBundle& V, const FormalEntry& e, int d);

ValidationReport validate_bundle(const ParaBundle& V);

// Per-chart maps phi(e_i^l) = sum_m u_i[l][m] f_i^m.
struct ParaMorphism {
    std::vector<RMat> u;
};
ValidationReport validate_morphism(const ParaMorphism& f, const ParaBundle& V, const ParaBundle& W);
ParaMorphism identity_morphism(const ParaBundle& V);

ParaBundle tensor(const ParaBundle& V, const ParaBundle& W);
ParaBundle hom_dual(const ParaBundle& V);
ParaBundle hom(const ParaBundle& V, const ParaBundle& W);
i64 underlying_degree(const ParaBundle& V);
Rational para_degree(const ParaBundle& V);

// V_t: basis s*e^l where alpha_l < t, e^l otherwise.
struct OrdinaryBundle {
    Cover cover;
    int rank = 0;
    std::vector<std::vector<RMat>> trans;
    // twisted[d][l]: whether basis vector l is multiplied by s at point d
    std::vector<std::vector<bool>> twisted;
};
OrdinaryBundle filtration_snapshot(const ParaBundle& V, const Rational& t);
i64 degree(const OrdinaryBundle& B);
// Reconstructs the weight table from the snapshots at the given candidate values.
std::vector<std::vector<Rational>> weights_from_snapshots(const ParaBundle& V);

bool same_cover(const Cover& a, const Cover& b);

}  // namespace parab
