#ifndef SECRETSHARE_SOURCE_MODEL_HPP
#define SECRETSHARE_SOURCE_MODEL_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "secretshare/errors.hpp"
#include "secretshare/subsets.hpp"

namespace secretshare {

/// Dense pmf tables are refused above 2^24 cells.
inline constexpr std::size_t kDenseTableGuard = std::size_t{1} << 24;

/// Normalization tolerance for pmf tables.
inline constexpr double kPmfTolerance = 1e-12;

struct Alphabet {
    std::string name;
    std::vector<std::string> symbols;

    int size() const { return static_cast<int>(symbols.size()); }
    void validate() const;
};

/// Selects a group of variables: a subset of the D sub-dealers and/or a subset
/// of the L participants. Used for marginalization and conditioning.
struct GroupSelector {
    SubsetMask participants = 0;
    SubsetMask dealers = 0;

    static GroupSelector none() { return {}; }
    static GroupSelector of_participants(SubsetMask p) { return {p, 0}; }
    static GroupSelector of_dealers(SubsetMask d) { return {0, d}; }

    bool empty() const { return participants == 0 && dealers == 0; }

    friend GroupSelector operator|(GroupSelector a, GroupSelector b) {
        return {a.participants | b.participants, a.dealers | b.dealers};
    }
    friend bool operator==(GroupSelector a, GroupSelector b) {
        return a.participants == b.participants && a.dealers == b.dealers;
    }
};

/// n i.i.d. draws from a joint source; one symbol-index sequence per variable
/// (participants first, then dealers).
struct SampleBlock {
    int n = 0;
    std::vector<std::vector<int>> sequences;
    std::uint64_t seed = 0;
};

/// Discrete memoryless source over the product of L participant alphabets and
/// D sub-dealer alphabets. The pmf is one dense table in mixed-radix order:
/// participants are the low digits (participant 0 lowest), dealers above them.
/// All Shannon quantities are computed exactly from this table, in bits.
class JointSource {
  public:
    JointSource(std::vector<Alphabet> participant_alphabets,
                std::vector<Alphabet> dealer_alphabets,
                std::vector<double> pmf);

    int num_participants() const { return L_; }
    int num_dealers() const { return D_; }
    int num_variables() const { return L_ + D_; }

    const Alphabet& participant_alphabet(int l) const { return participant_alphabets_.at(l); }
    const Alphabet& dealer_alphabet(int d) const { return dealer_alphabets_.at(d); }

    /// Alphabet size of variable `v` in the flat order (participants, then dealers).
    int alphabet_size(int v) const { return sizes_.at(v); }

    const std::vector<double>& pmf() const { return pmf_; }
    std::size_t table_size() const { return pmf_.size(); }

    /// Smallest positive probability in the table (the paper's mu).
    double min_positive_probability() const { return mu_; }

    /// Flat table index of a full symbol-index assignment.
    std::size_t cell_index(const std::vector<int>& symbols) const;
    /// Inverse of cell_index.
    std::vector<int> cell_symbols(std::size_t index) const;

    /// Marginal pmf of the selected variables, mixed-radix over the selected
    /// variables in increasing flat-variable order.
    std::vector<double> marginal(SubsetMask variables) const;

    /// H(variables) in bits, memoized.
    double entropy(SubsetMask variables) const;

    /// H(target | given) in bits. Overlapping selectors are fine: H(A|A) = 0.
    double conditional_entropy(GroupSelector target, GroupSelector given) const;

    /// I(a ; b | given) in bits, always >= 0 up to rounding.
    double conditional_mutual_information(GroupSelector a, GroupSelector b,
                                          GroupSelector given) const;

    /// Letter-typicality of the block restricted to `group`: every joint
    /// symbol tuple deviates from its marginal probability by at most eps*p,
    /// and zero-probability tuples do not occur.
    bool is_typical(const SampleBlock& block, double eps, GroupSelector group) const;

    /// n i.i.d. draws; identical seed gives an identical block.
    SampleBlock sample_block(int n, std::uint64_t seed) const;

    /// Flat variable mask of a selector.
    SubsetMask selector_mask(GroupSelector g) const;

  private:
    int L_;
    int D_;
    std::vector<Alphabet> participant_alphabets_;
    std::vector<Alphabet> dealer_alphabets_;
    std::vector<int> sizes_;            // per flat variable
    std::vector<std::size_t> strides_;  // per flat variable
    std::vector<double> pmf_;
    double mu_;

    struct EntropyMemo {
        std::mutex mutex;
        std::map<SubsetMask, double> values;
    };
    // Shared on copy: copies have the same pmf, so memoized values stay valid.
    std::shared_ptr<EntropyMemo> memo_ = std::make_shared<EntropyMemo>();
};

/// The Theorem-7 source: participant l and sub-dealer d share an independent
/// uniform key bit; X_l collects l's row of key bits, Y_d collects d's column.
/// Key bit (l, d) sits at bit position d of X_l's symbol index and at bit
/// position l of Y_d's symbol index.
JointSource pairwise_key_source(int L, int D);

/// Entropy of a raw pmf table, in bits (0 log 0 = 0).
double table_entropy(const std::vector<double>& pmf);

}  // namespace secretshare

#endif
