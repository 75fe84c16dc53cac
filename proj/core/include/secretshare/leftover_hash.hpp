#ifndef SECRETSHARE_LEFTOVER_HASH_HPP
#define SECRETSHARE_LEFTOVER_HASH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "secretshare/access_structure.hpp"
#include "secretshare/binning.hpp"
#include "secretshare/source_model.hpp"
#include "secretshare/subsets.hpp"

namespace secretshare {

/// Right-hand side of the distributed leftover hash lemma:
///   sqrt( sum over nonempty S of 2^( r(S) - hmin(S) ) ),
/// evaluated in the log domain so tiny terms do not underflow.
double lhl_rhs(const std::map<SubsetMask, double>& hash_bits,
               const std::map<SubsetMask, double>& min_entropy_bits);

/// Smoothing loss delta_S(n) = log2(card + 3) * sqrt( (2/n) (D + log2(1/eps)) ).
double smoothing_delta(std::uint64_t cardinality, int n, int D, double eps);

/// Min-entropy smoothing of an i.i.d. source: the result of dropping, per
/// conditioning sequence, the dealer sequences whose conditional probability
/// is too large for any dealer subset. The kept-set indicator together with
/// the product pmf determines the subnormalized function w <= q.
class SmoothedFunction {
  public:
    /// src encodes the single-letter joint: dealers are the Y variables, the
    /// (single) participant is the conditioning variable Z.
    SmoothedFunction(const JointSource& src, int n, double eps);

    int block_length() const { return n_; }
    double eps() const { return eps_; }

    double variational_distance() const { return vdist_; }
    double total_mass() const { return mass_; }

    /// H_infinity(w_{Y_S Z} | q_Z) in bits for a nonempty dealer subset.
    double min_entropy(SubsetMask s) const { return min_entropy_.at(s); }
    /// The guaranteed floor n H(Y_S | Z) - n delta_S(n).
    double min_entropy_floor(SubsetMask s) const { return floor_.at(s); }
    double delta(SubsetMask s) const { return delta_.at(s); }

    bool kept(std::uint64_t y_rank, std::uint64_t z_rank) const;
    double q_value(std::uint64_t y_rank, std::uint64_t z_rank) const;
    double w_value(std::uint64_t y_rank, std::uint64_t z_rank) const;

    /// Both Lemma-2 postconditions: V(q, w) <= eps and every min-entropy at
    /// or above its floor.
    bool postconditions_hold(double tol = 1e-9) const;

  private:
    JointSource src_;
    int n_;
    double eps_;
    double vdist_ = 0.0;
    double mass_ = 0.0;
    std::uint64_t y_space_ = 1;
    std::uint64_t z_space_ = 1;
    std::vector<bool> kept_;
    std::map<SubsetMask, double> min_entropy_;
    std::map<SubsetMask, double> floor_;
    std::map<SubsetMask, double> delta_;
};

SmoothedFunction smooth_truncate(const JointSource& src, int n, double eps);

/// Per-subset privacy-amplification budgets and the symmetric integer
/// per-dealer hash length they admit.
struct HashBudget {
    std::map<SubsetMask, double> subset_budget_bits;
    std::vector<std::uint64_t> per_dealer_bits;
    SubsetMask binding_subset = 0;
    bool capped_by_input_length = false;
    std::string diagnostic;
};

/// r(S) <= min over U of n B I(Y_S ; X_L | X_U) - n B delta_eps - B delta_n
///          - B delta_S(n, B) - n xi, with delta_S(n, B) from the combined
/// lemma. Picks the largest equal per-dealer integer length consistent with
/// every subset constraint and reports the binding subset.
HashBudget hash_length_budget(const JointSource& src, const AccessStructure& a,
                              const ProtocolParams& params);

}  // namespace secretshare

#endif
