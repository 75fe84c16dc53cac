#ifndef SECRETSHARE_ACCESS_STRUCTURE_HPP
#define SECRETSHARE_ACCESS_STRUCTURE_HPP

#include <string>
#include <vector>

#include "secretshare/errors.hpp"
#include "secretshare/subsets.hpp"

namespace secretshare {

/// Exhaustive subset enumeration caps the number of participants.
inline constexpr int kMaxParticipants = 16;

struct ThresholdParams {
    int t = 1;  // reconstruction threshold
    int z = 0;  // privacy threshold, z = 0 allowed as a degenerate extension

    void validate(int L) const;
    bool degenerate() const { return z == 0; }
};

/// Monotone family of authorized participant subsets plus the unauthorized
/// family. The two families are carried separately: threshold structures
/// leave the "ramp gap" sizes in (z, t) in neither family.
struct AccessStructure {
    int L = 0;
    std::vector<SubsetMask> authorized;    // the family A
    std::vector<SubsetMask> unauthorized;  // the family U

    bool is_authorized(SubsetMask s) const;
    bool is_unauthorized(SubsetMask s) const;
};

struct AccessDiagnostics {
    std::vector<std::string> violations;
    /// Subsets in neither family. Legitimate for ramp (t, z) structures,
    /// so reported separately from violations.
    std::size_t coverage_gap = 0;
    bool ok() const { return violations.empty(); }
};

/// Upward closure of the generator sets; U is the complement family.
AccessStructure monotone_closure(const std::vector<SubsetMask>& min_sets, int L);

/// Threshold family: authorized = subsets of size >= t, unauthorized = size <= z
/// (the empty set included). Sizes strictly between z and t are in neither family.
AccessStructure threshold_structure(int L, ThresholdParams params);

/// All-or-nothing: only the full participant set reconstructs.
AccessStructure all_or_nothing(int L);

/// Reports monotonicity violations, A/U overlaps and coverage gaps.
AccessDiagnostics validate(const AccessStructure& a);

}  // namespace secretshare

#endif
