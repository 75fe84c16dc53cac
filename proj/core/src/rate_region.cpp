#include "secretshare/rate_region.hpp"

#include <algorithm>
#include <cmath>

#include "secretshare/linprog.hpp"

namespace secretshare {

namespace {

constexpr double kTol = 1e-9;

void check_region_inputs(const JointSource& src, const AccessStructure& a) {
    if (a.L != src.num_participants())
        throw ValidationError("access structure is over " + std::to_string(a.L) +
                              " participants, source has " +
                              std::to_string(src.num_participants()));
    if (a.authorized.empty()) throw ValidationError("authorized family is empty");
    if (src.num_dealers() > kMaxDealers)
        throw GuardExceeded("region computations support at most " +
                            std::to_string(kMaxDealers) + " dealers, source has " +
                            std::to_string(src.num_dealers()));
}

GroupSelector dealers(SubsetMask s) { return GroupSelector::of_dealers(s); }
GroupSelector participants(SubsetMask s) { return GroupSelector::of_participants(s); }

}  // namespace

void SetFunction::validate() const {
    if (D < 0 || D > kMaxDealers) throw ValidationError("set function dimension out of range");
    if (values.size() != (std::size_t{1} << D))
        throw ValidationError("set function table has wrong size");
    if (std::abs(values[0]) > 0.0)
        throw ValidationError("set function must vanish on the empty set");
}

bool SubsetBoundRegion::contains(const RatePoint& r, double margin) const {
    if (r.D() != D) throw ValidationError("rate point dimension mismatch");
    for (const auto& [s, c] : bound) {
        if (c == kUnconstrained) continue;
        if (r.subset_sum(s) > c - margin + kTol) return false;
    }
    return true;
}

SubsetBoundRegion SubsetBoundRegion::effective() const {
    SubsetBoundRegion out = *this;
    for (auto& [s, c] : out.bound) c = std::max(c, 0.0);
    return out;
}

SubsetBoundRegion outer_general(const JointSource& src, const AccessStructure& a) {
    check_region_inputs(src, a);
    const int D = src.num_dealers();
    SubsetBoundRegion region;
    region.D = D;
    const SubsetMask all_dealers = full_mask(D);
    for (SubsetMask s : nonempty_subsets(D)) {
        double best = kUnconstrained;
        for (SubsetMask A : a.authorized) {
            for (SubsetMask U : a.unauthorized) {
                GroupSelector b = participants(A) | dealers(all_dealers & ~s);
                double v = src.conditional_mutual_information(dealers(s), b, participants(U));
                best = std::min(best, v);
            }
        }
        region.bound[s] = best;
    }
    return region;
}

AuxFeasibilitySystem inner_aux_system(const JointSource& src, const AccessStructure& a) {
    check_region_inputs(src, a);
    const int D = src.num_dealers();
    AuxFeasibilitySystem sys;
    sys.D = D;
    const SubsetMask all_dealers = full_mask(D);
    for (SubsetMask s : nonempty_subsets(D)) {
        double lo = 0.0;
        for (SubsetMask A : a.authorized) {
            GroupSelector cond = dealers(all_dealers & ~s) | participants(A);
            lo = std::max(lo, src.conditional_entropy(dealers(s), cond));
        }
        double hi = kUnconstrained;
        for (SubsetMask U : a.unauthorized)
            hi = std::min(hi, src.conditional_entropy(dealers(s), participants(U)));
        sys.lower[s] = lo;
        sys.upper[s] = hi;
    }
    return sys;
}

bool inner_general_membership(const AuxFeasibilitySystem& sys, const RatePoint& r,
                              double margin) {
    if (r.D() != sys.D) throw ValidationError("rate point dimension mismatch");
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (const auto& [s, lo] : sys.lower) {
        std::vector<double> row(sys.D, 0.0);
        for (int d : subset_elements(s)) row[d] = -1.0;
        A.push_back(row);
        b.push_back(-(lo + margin));
    }
    for (const auto& [s, hi] : sys.upper) {
        if (hi == kUnconstrained) continue;
        std::vector<double> row(sys.D, 0.0);
        for (int d : subset_elements(s)) row[d] = 1.0;
        A.push_back(row);
        b.push_back(hi - r.subset_sum(s) - margin);
    }
    return lp_feasible(A, b);
}

bool inner_general_membership(const JointSource& src, const AccessStructure& a,
                              const RatePoint& r, double margin) {
    return inner_general_membership(inner_aux_system(src, a), r, margin);
}

std::optional<double> inner_general_facet(const AuxFeasibilitySystem& sys, SubsetMask s) {
    // Variables: R_1..R_D then R'_1..R'_D.
    const int D = sys.D;
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (const auto& [t, lo] : sys.lower) {
        std::vector<double> row(2 * D, 0.0);
        for (int d : subset_elements(t)) row[D + d] = -1.0;
        A.push_back(row);
        b.push_back(-lo);
    }
    for (const auto& [t, hi] : sys.upper) {
        if (hi == kUnconstrained) continue;
        std::vector<double> row(2 * D, 0.0);
        for (int d : subset_elements(t)) {
            row[d] = 1.0;
            row[D + d] = 1.0;
        }
        A.push_back(row);
        b.push_back(hi);
    }
    std::vector<double> c(2 * D, 0.0);
    for (int d : subset_elements(s)) c[d] = 1.0;

    LpResult res = solve_lp(A, b, c);
    if (res.status == LpStatus::Infeasible) return std::nullopt;
    if (res.status == LpStatus::Unbounded) return kUnconstrained;
    return res.value;
}

double InnerRegionD2::sum_bound() const {
    return std::min({sum_bounds[0], sum_bounds[1], sum_bounds[2]});
}

bool InnerRegionD2::contains(const RatePoint& r, double margin) const {
    if (r.D() != 2) throw ValidationError("two-dealer region needs a two-dealer rate point");
    return r.rates[0] <= r1_bound - margin + kTol && r.rates[1] <= r2_bound - margin + kTol &&
           r.rates[0] + r.rates[1] <= sum_bound() - margin + kTol;
}

InnerRegionD2 inner_d2_fm(const JointSource& src, const AccessStructure& a) {
    check_region_inputs(src, a);
    if (src.num_dealers() != 2) throw ValidationError("inner_d2_fm requires exactly two dealers");

    InnerRegionD2 out;
    if (a.unauthorized.empty()) {
        out.r1_bound = out.r2_bound = kUnconstrained;
        out.sum_bounds[0] = out.sum_bounds[1] = out.sum_bounds[2] = kUnconstrained;
        return out;
    }
    const SubsetMask y1 = 1u, y2 = 2u, yboth = 3u;

    auto min_over_A = [&](auto&& f) {
        double v = kUnconstrained;
        for (SubsetMask A : a.authorized) v = std::min(v, f(A));
        return v;
    };
    auto max_over_U = [&](auto&& f) {
        double v = -kUnconstrained;
        for (SubsetMask U : a.unauthorized) v = std::max(v, f(U));
        return v;
    };

    GroupSelector none;
    double i_y1_y2xa = min_over_A([&](SubsetMask A) {
        return src.conditional_mutual_information(dealers(y1), dealers(y2) | participants(A), none);
    });
    double i_y2_y1xa = min_over_A([&](SubsetMask A) {
        return src.conditional_mutual_information(dealers(y2), dealers(y1) | participants(A), none);
    });
    double i_yd_xa = min_over_A([&](SubsetMask A) {
        return src.conditional_mutual_information(dealers(yboth), participants(A), none);
    });
    double i_y2_xa_given_y1 = min_over_A([&](SubsetMask A) {
        return src.conditional_mutual_information(dealers(y2), participants(A), dealers(y1));
    });
    double i_y1_xu = max_over_U([&](SubsetMask U) {
        return src.conditional_mutual_information(dealers(y1), participants(U), none);
    });
    double i_y2_xu = max_over_U([&](SubsetMask U) {
        return src.conditional_mutual_information(dealers(y2), participants(U), none);
    });
    double i_yd_xu = max_over_U([&](SubsetMask U) {
        return src.conditional_mutual_information(dealers(yboth), participants(U), none);
    });
    double i_y1_y2 = src.conditional_mutual_information(dealers(y1), dealers(y2), none);

    out.r1_bound = i_y1_y2xa - i_y1_xu;
    out.r2_bound = i_y2_y1xa - i_y2_xu;
    out.sum_bounds[0] = i_yd_xa - i_yd_xu;
    out.sum_bounds[1] = i_y1_y2xa + i_y2_xa_given_y1 - i_yd_xu;
    out.sum_bounds[2] = i_yd_xa - i_y1_xu - i_y2_xu + i_y1_y2;
    return out;
}

D1Bounds d1_bounds(const JointSource& src, const AccessStructure& a) {
    check_region_inputs(src, a);
    if (src.num_dealers() != 1) throw ValidationError("d1_bounds requires exactly one dealer");

    D1Bounds out;
    if (a.unauthorized.empty()) {
        out.lower = out.upper = kUnconstrained;
        return out;
    }
    GroupSelector none;
    GroupSelector y = dealers(1u);
    double min_a = kUnconstrained;
    for (SubsetMask A : a.authorized)
        min_a = std::min(min_a, src.conditional_mutual_information(y, participants(A), none));
    double max_u = -kUnconstrained;
    for (SubsetMask U : a.unauthorized)
        max_u = std::max(max_u, src.conditional_mutual_information(y, participants(U), none));
    out.lower = std::max(0.0, min_a - max_u);

    out.upper = kUnconstrained;
    for (SubsetMask A : a.authorized)
        for (SubsetMask U : a.unauthorized)
            out.upper = std::min(out.upper, src.conditional_mutual_information(
                                                y, participants(A), participants(U)));
    return out;
}

namespace {

SubsetBoundRegion aon_region(const JointSource& src, bool with_genie) {
    const int L = src.num_participants();
    const int D = src.num_dealers();
    if (D > kMaxDealers)
        throw GuardExceeded("region computations support at most " + std::to_string(kMaxDealers) +
                            " dealers, source has " + std::to_string(D));
    SubsetBoundRegion region;
    region.D = D;
    const SubsetMask all_participants = full_mask(L);
    const SubsetMask all_dealers = full_mask(D);
    for (SubsetMask s : nonempty_subsets(D)) {
        double best = kUnconstrained;
        GroupSelector b = participants(all_participants);
        if (with_genie) b = b | dealers(all_dealers & ~s);
        for (SubsetMask t = 0; t < all_participants; ++t) {
            double v = src.conditional_mutual_information(dealers(s), b, participants(t));
            best = std::min(best, v);
        }
        region.bound[s] = best;
    }
    return region;
}

}  // namespace

SubsetBoundRegion aon_inner(const JointSource& src) { return aon_region(src, false); }

SubsetBoundRegion aon_outer(const JointSource& src) { return aon_region(src, true); }

double aon_conditional_rate(const JointSource& src, SubsetMask s, SubsetMask v) {
    const int L = src.num_participants();
    if (s == 0) throw ValidationError("aon_conditional_rate needs a nonempty dealer subset");
    GroupSelector none;
    double i_full =
        src.conditional_mutual_information(dealers(s), participants(full_mask(L)), none);
    double best = kUnconstrained;
    for (SubsetMask t = 0; t < full_mask(L); ++t) {
        double leak =
            src.conditional_mutual_information(dealers(s), dealers(v) | participants(t), none);
        best = std::min(best, i_full - leak);
    }
    return best;
}

bool SuccessiveInnerD2::contains(const RatePoint& r, double margin) const {
    if (r.D() != 2) throw ValidationError("two-dealer region needs a two-dealer rate point");
    double a = r.rates[0], b = r.rates[1];
    bool piece1 = a <= r1 - margin + kTol && b <= r2_given_1 - margin + kTol;
    bool piece2 = a <= r1_given_2 - margin + kTol && b <= r2 - margin + kTol;
    bool piece3 = a <= r1 - margin + kTol && b <= r2 - margin + kTol &&
                  a + b <= r12 - margin + kTol;
    return piece1 || piece2 || piece3;
}

SuccessiveInnerD2 aon_successive_inner_d2(const JointSource& src) {
    if (src.num_dealers() != 2)
        throw ValidationError("aon_successive_inner_d2 requires exactly two dealers");
    const int L = src.num_participants();

    SuccessiveInnerD2 out;
    out.r1 = aon_conditional_rate(src, 1u, 0u);
    out.r2 = aon_conditional_rate(src, 2u, 0u);
    out.r2_given_1 = aon_conditional_rate(src, 2u, 1u);
    out.r1_given_2 = aon_conditional_rate(src, 1u, 2u);
    out.r12 = aon_conditional_rate(src, 3u, 0u);

    double hyp = kUnconstrained;
    for (SubsetMask d : {SubsetMask{1u}, SubsetMask{2u}})
        for (SubsetMask t = 0; t < full_mask(L); ++t)
            hyp = std::min(hyp, src.conditional_mutual_information(
                                    dealers(d), participants(full_mask(L)), participants(t)));
    out.hypothesis_met = hyp > 1e-12;
    return out;
}

AonSumRates aon_sum_rates_d2(const JointSource& src) {
    SuccessiveInnerD2 reg = aon_successive_inner_d2(src);
    AonSumRates out;
    out.r1_sum = std::min(reg.r12, reg.r1 + reg.r2);
    out.r2_sum = reg.r1 + reg.r2_given_1;
    out.r3_sum = reg.r2 + reg.r1_given_2;
    out.best = std::max({out.r1_sum, out.r2_sum, out.r3_sum});
    return out;
}

bool sum_rate_optimality(const JointSource& src) {
    SuccessiveInnerD2 reg = aon_successive_inner_d2(src);
    return reg.r12 <= reg.r1 + reg.r2 + kTol;
}

ThresholdCapacity threshold_capacity_region(int L, int D, ThresholdParams params) {
    params.validate(L);
    if (D < 1 || D > kMaxDealers) throw ValidationError("dealer count out of range");
    ThresholdCapacity out;
    out.region.D = D;
    for (SubsetMask s : nonempty_subsets(D))
        out.region.bound[s] = static_cast<double>(subset_size(s) * (params.t - params.z));
    out.corner_rate = static_cast<double>(params.t - params.z);
    return out;
}

bool is_submodular(const SetFunction& f) {
    f.validate();
    const SubsetMask full = full_mask(f.D);
    for (SubsetMask s = 0; s <= full; ++s) {
        for (SubsetMask t = s; t <= full; ++t) {
            if (f(s) + f(t) < f(s | t) + f(s & t) - kTol) return false;
            if (t == full) break;
        }
        if (s == full) break;
    }
    return true;
}

bool subset_sum_system_feasible(const SetFunction& f, const SetFunction& g) {
    f.validate();
    g.validate();
    if (f.D != g.D) throw ValidationError("set function dimensions differ");
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (SubsetMask s : nonempty_subsets(f.D)) {
        std::vector<double> up(f.D, 0.0), lo(f.D, 0.0);
        for (int d : subset_elements(s)) {
            up[d] = 1.0;
            lo[d] = -1.0;
        }
        A.push_back(up);
        b.push_back(f(s));
        A.push_back(lo);
        b.push_back(g(s));
    }
    return lp_feasible(A, b);
}

SubmodularFeasibility submodular_feasible(const SetFunction& f, const SetFunction& g) {
    SubmodularFeasibility out;
    if (!is_submodular(f) || !is_submodular(g)) {
        out.used_lp_fallback = true;
        out.feasible = subset_sum_system_feasible(f, g);
        return out;
    }
    out.feasible = true;
    for (SubsetMask s : nonempty_subsets(f.D)) {
        if (-g(s) > f(s) + kTol) {
            out.feasible = false;
            break;
        }
    }
    return out;
}

}  // namespace secretshare
