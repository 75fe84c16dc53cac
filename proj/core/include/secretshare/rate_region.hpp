#ifndef SECRETSHARE_RATE_REGION_HPP
#define SECRETSHARE_RATE_REGION_HPP

#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "secretshare/access_structure.hpp"
#include "secretshare/source_model.hpp"
#include "secretshare/subsets.hpp"

namespace secretshare {

/// Auxiliary-rate elimination by linear feasibility caps the dealer count.
inline constexpr int kMaxDealers = 8;

inline constexpr double kUnconstrained = std::numeric_limits<double>::infinity();

/// One rate per sub-dealer, bits per source symbol.
struct RatePoint {
    std::vector<double> rates;

    int D() const { return static_cast<int>(rates.size()); }
    double subset_sum(SubsetMask s) const {
        double total = 0.0;
        for (int d : subset_elements(s)) total += rates.at(d);
        return total;
    }
};

/// Polyhedron { R >= 0 : sum_{d in S} R_d <= bound(S) for every nonempty S }.
/// Bounds are reported raw (possibly negative); +infinity marks a facet the
/// source/access structure leaves unconstrained.
struct SubsetBoundRegion {
    int D = 0;
    std::map<SubsetMask, double> bound;

    bool contains(const RatePoint& r, double margin = 0.0) const;

    /// View with negative bounds clamped to 0 (the region intersected with R+^D).
    SubsetBoundRegion effective() const;
};

/// Constraint system of the general inner bound, over auxiliary rates R':
///   R'_S >= lower(S)  and  R'_S + R_S <= upper(S)  for all nonempty S.
struct AuxFeasibilitySystem {
    int D = 0;
    std::map<SubsetMask, double> lower;
    std::map<SubsetMask, double> upper;
};

/// Real-valued set function on subsets of the D dealers, normalized at the
/// empty set. values[mask] is the function value.
struct SetFunction {
    int D = 0;
    std::vector<double> values;

    double operator()(SubsetMask s) const { return values.at(s); }
    void validate() const;
};

// --- General access structures ---

/// Outer-bound facets: c(S) = min_{A in A} min_{U in U} I(Y_S ; X_A Y_{S^c} | X_U).
SubsetBoundRegion outer_general(const JointSource& src, const AccessStructure& a);

/// Lower/upper maps of the general inner bound before aux-rate elimination.
AuxFeasibilitySystem inner_aux_system(const JointSource& src, const AccessStructure& a);

/// True iff some nonnegative auxiliary rate vector satisfies the system with
/// the given rate point (region shrunk by `margin` on every constraint).
bool inner_general_membership(const AuxFeasibilitySystem& sys, const RatePoint& r,
                              double margin = 0.0);
bool inner_general_membership(const JointSource& src, const AccessStructure& a,
                              const RatePoint& r, double margin = 0.0);

/// Largest achievable sum-rate over S in the inner region; nullopt when the
/// auxiliary system is infeasible (empty region), +infinity when unbounded.
std::optional<double> inner_general_facet(const AuxFeasibilitySystem& sys, SubsetMask s);

/// Two-dealer inner bound in closed form (Fourier-Motzkin eliminated).
struct InnerRegionD2 {
    double r1_bound = 0.0;
    double r2_bound = 0.0;
    double sum_bounds[3] = {0.0, 0.0, 0.0};

    double sum_bound() const;
    bool contains(const RatePoint& r, double margin = 0.0) const;
};

InnerRegionD2 inner_d2_fm(const JointSource& src, const AccessStructure& a);

/// Single-dealer capacity bounds; lower is clamped at 0.
struct D1Bounds {
    double lower = 0.0;
    double upper = 0.0;
};

D1Bounds d1_bounds(const JointSource& src, const AccessStructure& a);

// --- All-or-nothing access structure ---

/// Inner facets: c(S) = min over strict participant subsets T of I(Y_S ; X_L | X_T).
SubsetBoundRegion aon_inner(const JointSource& src);

/// Outer facets: c(S) = min over strict T of I(Y_S ; X_L Y_{S^c} | X_T).
SubsetBoundRegion aon_outer(const JointSource& src);

/// Scalar bound of the helper region R(S|V):
///   min over strict T of [ I(Y_S ; X_L) - I(Y_S ; Y_V X_T) ].
double aon_conditional_rate(const JointSource& src, SubsetMask s, SubsetMask v);

/// Successive two-dealer inner region: union of two product regions and the
/// joint region. Membership is decidable even when the positivity hypothesis
/// fails; the flag records it.
struct SuccessiveInnerD2 {
    bool hypothesis_met = false;
    double r1 = 0.0;           // R({1})
    double r2 = 0.0;           // R({2})
    double r2_given_1 = 0.0;   // R({2}|{1})
    double r1_given_2 = 0.0;   // R({1}|{2})
    double r12 = 0.0;          // R({1,2}) sum bound

    bool contains(const RatePoint& r, double margin = 0.0) const;
};

SuccessiveInnerD2 aon_successive_inner_d2(const JointSource& src);

struct AonSumRates {
    double r1_sum = 0.0;
    double r2_sum = 0.0;
    double r3_sum = 0.0;
    double best = 0.0;
};

AonSumRates aon_sum_rates_d2(const JointSource& src);

/// True when the joint rate R({1,2}) is no larger than R({1}) + R({2}), in
/// which case the first sum-rate is optimal against the outer bound.
bool sum_rate_optimality(const JointSource& src);

// --- Threshold structures with pairwise keys ---

struct ThresholdCapacity {
    SubsetBoundRegion region;  // c(S) = |S| (t - z)
    double corner_rate = 0.0;  // achievable R*_d = t - z
};

ThresholdCapacity threshold_capacity_region(int L, int D, ThresholdParams params);

// --- Submodular feasibility ---

bool is_submodular(const SetFunction& f);

struct SubmodularFeasibility {
    bool feasible = false;
    bool used_lp_fallback = false;  // set when an input was not submodular
};

/// Feasibility of -g(S) <= sum_{d in S} x_d <= f(S), x >= 0. For submodular
/// f and g this reduces to the pointwise condition -g <= f; otherwise the
/// direct linear program decides and the fallback is flagged.
SubmodularFeasibility submodular_feasible(const SetFunction& f, const SetFunction& g);

/// LP route for the same system, usable as an independent cross-check.
bool subset_sum_system_feasible(const SetFunction& f, const SetFunction& g);

}  // namespace secretshare

#endif
