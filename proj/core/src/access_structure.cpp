#include "secretshare/access_structure.hpp"

#include <algorithm>
#include <set>

namespace secretshare {

void ThresholdParams::validate(int L) const {
    if (L < 1 || L > kMaxParticipants)
        throw ValidationError("participant count " + std::to_string(L) + " out of range [1," +
                              std::to_string(kMaxParticipants) + "]");
    if (t < 1 || t > L) throw ValidationError("threshold t must satisfy 1 <= t <= L");
    if (z < 0 || z > t - 1) throw ValidationError("privacy threshold z must satisfy 0 <= z <= t-1");
}

bool AccessStructure::is_authorized(SubsetMask s) const {
    return std::find(authorized.begin(), authorized.end(), s) != authorized.end();
}

bool AccessStructure::is_unauthorized(SubsetMask s) const {
    return std::find(unauthorized.begin(), unauthorized.end(), s) != unauthorized.end();
}

AccessStructure monotone_closure(const std::vector<SubsetMask>& min_sets, int L) {
    if (L < 1 || L > kMaxParticipants)
        throw ValidationError("participant count " + std::to_string(L) + " out of range [1," +
                              std::to_string(kMaxParticipants) + "]");
    if (min_sets.empty()) throw ValidationError("generator list is empty");
    const SubsetMask full = full_mask(L);
    for (SubsetMask g : min_sets)
        if (g & ~full) throw ValidationError("generator set has an out-of-range participant");

    AccessStructure out;
    out.L = L;
    for (SubsetMask s = 0;; ++s) {
        bool in = false;
        for (SubsetMask g : min_sets)
            if (is_subset_of(g, s)) {
                in = true;
                break;
            }
        (in ? out.authorized : out.unauthorized).push_back(s);
        if (s == full) break;
    }
    return out;
}

AccessStructure threshold_structure(int L, ThresholdParams params) {
    params.validate(L);
    AccessStructure out;
    out.L = L;
    for (SubsetMask s = 0;; ++s) {
        int k = subset_size(s);
        if (k >= params.t) out.authorized.push_back(s);
        if (k <= params.z) out.unauthorized.push_back(s);
        if (s == full_mask(L)) break;
    }
    return out;
}

AccessStructure all_or_nothing(int L) {
    return monotone_closure({full_mask(L)}, L);
}

AccessDiagnostics validate(const AccessStructure& a) {
    AccessDiagnostics diag;
    if (a.L < 1 || a.L > kMaxParticipants) {
        diag.violations.push_back("participant count out of range");
        return diag;
    }
    if (a.authorized.empty()) diag.violations.push_back("authorized family is empty");

    std::set<SubsetMask> auth(a.authorized.begin(), a.authorized.end());
    std::set<SubsetMask> unauth(a.unauthorized.begin(), a.unauthorized.end());

    for (SubsetMask s : auth)
        if (unauth.count(s))
            diag.violations.push_back("set " + subset_to_string(s) +
                                      " is both authorized and unauthorized");

    // Monotonicity: supersets of authorized sets must be authorized.
    const SubsetMask full = full_mask(a.L);
    for (SubsetMask s : auth) {
        SubsetMask rest = full & ~s;
        // enumerate supersets of s
        for (SubsetMask extra = rest;; extra = (extra - 1) & rest) {
            if (!auth.count(s | extra))
                diag.violations.push_back("monotonicity violated: " + subset_to_string(s) +
                                          " authorized but superset " + subset_to_string(s | extra) +
                                          " is not");
            if (extra == 0) break;
        }
    }

    std::size_t covered = 0;
    for (SubsetMask s = 0;; ++s) {
        if (auth.count(s) || unauth.count(s)) ++covered;
        if (s == full) break;
    }
    diag.coverage_gap = (std::size_t{1} << a.L) - covered;
    return diag;
}

}  // namespace secretshare
