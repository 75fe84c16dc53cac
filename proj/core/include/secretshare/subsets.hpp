#ifndef SECRETSHARE_SUBSETS_HPP
#define SECRETSHARE_SUBSETS_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace secretshare {

/// Subsets of a ground set of at most 32 indexed elements, encoded as bitmasks.
/// Element i (0-based) is in the subset iff bit i is set.
using SubsetMask = std::uint32_t;

inline int subset_size(SubsetMask s) { return std::popcount(s); }

inline bool subset_contains(SubsetMask s, int element) { return (s >> element) & 1u; }

inline bool is_subset_of(SubsetMask a, SubsetMask b) { return (a & ~b) == 0; }

inline SubsetMask full_mask(int n) {
    return n >= 32 ? ~SubsetMask{0} : ((SubsetMask{1} << n) - 1u);
}

/// All subsets of the ground set [0, n), in increasing mask order (starts with 0 = empty set).
inline std::vector<SubsetMask> all_subsets(int n) {
    std::vector<SubsetMask> out;
    out.reserve(std::size_t{1} << n);
    for (SubsetMask s = 0; s <= full_mask(n); ++s) {
        out.push_back(s);
        if (s == full_mask(n)) break;
    }
    return out;
}

inline std::vector<SubsetMask> nonempty_subsets(int n) {
    auto out = all_subsets(n);
    out.erase(out.begin());
    return out;
}

inline std::vector<int> subset_elements(SubsetMask s) {
    std::vector<int> out;
    while (s) {
        int i = std::countr_zero(s);
        out.push_back(i);
        s &= s - 1;
    }
    return out;
}

/// "{1,3,4}" with 1-based element labels, "{}" for the empty set.
inline std::string subset_to_string(SubsetMask s) {
    std::string out = "{";
    bool first = true;
    for (int i : subset_elements(s)) {
        if (!first) out += ',';
        out += std::to_string(i + 1);
        first = false;
    }
    out += '}';
    return out;
}

}  // namespace secretshare

#endif
