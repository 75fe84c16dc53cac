#ifndef SECRETSHARE_BINNING_HPP
#define SECRETSHARE_BINNING_HPP

#include <cstdint>
#include <vector>

#include "secretshare/source_model.hpp"
#include "secretshare/subsets.hpp"

namespace secretshare {

/// Exhaustive typicality decoding caps the candidate sequence space.
inline constexpr std::uint64_t kSequenceGuard = std::uint64_t{1} << 22;

/// Finite-n execution parameters. delta is the reconciliation slack, xi the
/// hash-budget slack; delta_eps / delta_n are the finite-n surrogates for the
/// vanishing terms of the asymptotic budget (default 0, in which case
/// security rests on the exact-leakage oracle rather than the bound).
struct ProtocolParams {
    int n = 1;
    int B = 1;
    double eps = 0.1;
    double delta = 0.0;
    double xi = 0.0;
    double delta_eps = 0.0;
    double delta_n = 0.0;

    void validate() const;
};

struct DealerRates {
    double secret_rate = 0.0;  // R_d, secret index
    double public_rate = 0.0;  // R'_d, public message
};

/// Number of bins [1, ceil(2^{n R})] for a per-symbol rate R at blocklength n.
std::uint64_t bin_count(int n, double rate);

/// Mixed-radix rank of a length-n symbol sequence over an alphabet of the
/// given size (position 0 is the lowest digit).
std::uint64_t sequence_rank(const std::vector<int>& seq, int alphabet_size);
std::vector<int> sequence_from_rank(std::uint64_t rank, int alphabet_size, int n);

/// Joint random binning of Appendix-A type: per dealer d, two uniform seeded
/// assignments g_d (public) and h_d (secret) over Y_d^n, realized as a keyed
/// PRF per sequence so codes stay reproducible without table storage.
class BinningCode {
  public:
    BinningCode(const JointSource& src, int n, std::vector<DealerRates> rates,
                std::uint64_t seed);

    const JointSource& source() const { return src_; }
    int block_length() const { return n_; }
    int num_dealers() const { return static_cast<int>(rates_.size()); }
    std::uint64_t seed() const { return seed_; }
    const DealerRates& rates(int d) const { return rates_.at(d); }

    std::uint64_t num_public_bins(int d) const { return public_bins_.at(d); }
    std::uint64_t num_secret_bins(int d) const { return secret_bins_.at(d); }

    std::uint64_t public_bin(int d, const std::vector<int>& y_seq) const;   // g_d
    std::uint64_t secret_bin(int d, const std::vector<int>& y_seq) const;   // h_d

  private:
    JointSource src_;
    int n_;
    std::vector<DealerRates> rates_;
    std::uint64_t seed_;
    std::vector<std::uint64_t> public_bins_;
    std::vector<std::uint64_t> secret_bins_;
};

struct EncodedBlock {
    std::vector<std::uint64_t> public_messages;  // m_d
    std::vector<std::uint64_t> secret_indices;   // s_d
};

/// m_d = g_d(y_d^n), s_d = h_d(y_d^n) for every dealer.
EncodedBlock encode_app_a(const BinningCode& code, const std::vector<std::vector<int>>& y);

struct DecodeResult {
    std::vector<std::vector<int>> y;  // per dealer; canonical sequence on failure
    bool failed = false;
};

/// Exhaustive unique-joint-typicality decoding for the participant group:
/// the estimate must match every public bin and be jointly typical with the
/// observed participant sequences. Zero or multiple candidates fall back to
/// the canonical all-first-symbol sequence with the failure flag set.
DecodeResult decode_app_a(const BinningCode& code,
                          const std::vector<std::uint64_t>& public_messages,
                          SubsetMask participant_group,
                          const std::vector<std::vector<int>>& x_sequences, double eps);

/// Reconciliation rate schedule of one dealer: 2^D + 1 nested layers with
/// thresholds sorted increasingly over dealer subsets.
class NestedBinningSchedule {
  public:
    NestedBinningSchedule(const JointSource& src, int dealer, double delta, double eps);

    /// Uses the default slack 3 eps H(Y_i | Y_{1:i-1} X_L) + eps.
    NestedBinningSchedule(const JointSource& src, int dealer, double eps);

    int dealer() const { return dealer_; }
    double delta() const { return delta_; }
    double eps() const { return eps_; }
    int num_layers() const { return static_cast<int>(layer_rates_.size()); }

    const std::vector<double>& layer_rates() const { return layer_rates_; }          // R_{i,j}
    const std::vector<double>& sorted_thresholds() const { return thresholds_; }     // Rbar_{i,j}
    const std::vector<SubsetMask>& threshold_subsets() const { return subsets_; }    // S_j

    /// Sum of all layer rates; equals (1+eps) H(Y_i|Y_{1:i-1} X_L) + eps
    /// whenever the top threshold is not clamped at zero.
    double total_rate() const;

  private:
    void build(const JointSource& src, double delta, double eps);

    int dealer_;
    double delta_;
    double eps_;
    std::vector<double> layer_rates_;
    std::vector<double> thresholds_;
    std::vector<SubsetMask> subsets_;
};

/// The schedule bound to a blocklength and seed: evaluatable layer maps b_{i,j}.
class NestedBinningCode {
  public:
    NestedBinningCode(const JointSource& src, NestedBinningSchedule schedule, int n,
                      std::uint64_t seed);

    const JointSource& source() const { return src_; }
    const NestedBinningSchedule& schedule() const { return schedule_; }
    int block_length() const { return n_; }
    std::uint64_t layer_bins(int layer) const { return bins_.at(layer); }
    std::uint64_t layer_bin(int layer, const std::vector<int>& y_seq) const;

    /// All layer values for one sequence.
    std::vector<std::uint64_t> encode(const std::vector<int>& y_seq) const;

  private:
    JointSource src_;
    NestedBinningSchedule schedule_;
    int n_;
    std::uint64_t seed_;
    std::vector<std::uint64_t> bins_;
};

/// Dealers decoded in index order, each reusing the previously decoded
/// sequences; per-dealer exhaustive unique decoding against all layer bins.
DecodeResult successive_decode(const std::vector<NestedBinningCode>& codes,
                               const std::vector<std::vector<std::uint64_t>>& messages,
                               const std::vector<std::vector<int>>& x_sequences, double eps);

}  // namespace secretshare

#endif
