#ifndef SECRETSHARE_RAMP_HPP
#define SECRETSHARE_RAMP_HPP

#include <cstdint>
#include <vector>

#include "secretshare/gf2m.hpp"
#include "secretshare/subsets.hpp"

namespace secretshare {

/// Uniform key material shared between every participant l and sub-dealer d,
/// with one-time-pad usage accounting: no key bit is ever consumed twice.
class PairwiseKeys {
  public:
    PairwiseKeys(int L, int D, std::size_t bits_per_pair, std::uint64_t seed);

    int num_participants() const { return L_; }
    int num_dealers() const { return D_; }
    std::size_t bits_per_pair() const { return bits_; }
    std::uint64_t seed() const { return seed_; }

    const std::vector<std::uint8_t>& key_bits(int l, int d) const;

    /// Bits consumed so far for the pair (l, d).
    std::size_t used(int l, int d) const;

    /// Consume `count` fresh bits for (l, d); returns the offset of the
    /// consumed prefix. Throws on exhaustion.
    std::size_t consume(int l, int d, std::size_t count);

  private:
    int L_, D_;
    std::size_t bits_;
    std::uint64_t seed_;
    std::vector<std::vector<std::uint8_t>> keys_;  // [l * D + d] -> bit vector
    std::vector<std::size_t> used_;
};

/// Shares of a (t, z) linear ramp scheme over GF(2^m): each block encodes
/// t - z secret field elements as the low coefficients of a degree < t
/// polynomial whose top z coefficients are uniformly random; participant l
/// holds the evaluations at point l+1.
struct RampShareSet {
    int L = 0;
    int t = 0;
    int z = 0;
    int field_degree = 0;
    std::vector<std::uint32_t> points;               // L distinct nonzero elements
    std::vector<std::vector<std::uint32_t>> shares;  // [l][block]

    int blocks() const { return points.empty() ? 0 : static_cast<int>(shares.at(0).size()); }
};

/// secret holds (t - z) field elements per block, concatenated over blocks.
RampShareSet ramp_share(const std::vector<std::uint32_t>& secret, int t, int z, int L,
                        const FieldSpec& field, std::uint64_t seed);

/// Interpolates from at least t (point, per-block share) pairs; exact.
/// Returns the t - z secret elements per block, concatenated.
std::vector<std::uint32_t> ramp_reconstruct(const std::vector<std::uint32_t>& points,
                                            const std::vector<std::vector<std::uint32_t>>& shares,
                                            int t, int z, const FieldSpec& field);

/// One dealer's public messages: each participant's serialized share XORed
/// with a fresh prefix of the pairwise key.
struct DealerBroadcast {
    int dealer = 0;
    std::size_t key_offset = 0;
    std::vector<std::vector<std::uint8_t>> ciphertexts;  // [l] -> OTP'd share bits
};

DealerBroadcast dealer_broadcast(PairwiseKeys& keys, int dealer, const RampShareSet& shares,
                                 const FieldSpec& field);

/// Participants in `group` (|group| >= t) unmask their shares of one dealer's
/// broadcast and pool them; returns the reconstructed secret elements.
std::vector<std::uint32_t> participant_recover(const DealerBroadcast& broadcast,
                                               const PairwiseKeys& keys, SubsetMask group,
                                               int t, int z, const RampShareSet& share_layout,
                                               const FieldSpec& field);

/// Secret bits produced per pairwise key bit consumed; equals t - z for the
/// ramp + one-time-pad construction.
double achieved_rate(int t, int z, int blocks, std::size_t key_bits_used_per_pair);

/// Big-endian fixed-width serialization of field elements, m bits each.
std::vector<std::uint8_t> serialize_field_elements(const std::vector<std::uint32_t>& elems,
                                                   int m);
std::vector<std::uint32_t> deserialize_field_elements(const std::vector<std::uint8_t>& bits,
                                                      int m);

}  // namespace secretshare

#endif
