#ifndef SECRETSHARE_PUSHFORWARD_HPP
#define SECRETSHARE_PUSHFORWARD_HPP

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "secretshare/source_model.hpp"

namespace secretshare {

/// Weighted enumerated domain with deterministic maps into (secret, message,
/// eavesdropper-view) labels. Exact distributions follow by accumulation.
struct PushforwardSpec {
    std::uint64_t domain_size = 0;
    std::function<double(std::uint64_t)> weight;
    std::function<std::uint64_t(std::uint64_t)> secret;
    std::function<std::uint64_t(std::uint64_t)> message;
    std::function<std::uint64_t(std::uint64_t)> eavesdropper;
};

/// Exact joint pmf of (S, M, E) accumulated by full enumeration.
class JointPushforward {
  public:
    static JointPushforward accumulate(const PushforwardSpec& spec);

    /// I(S ; M, E) in bits, exact.
    double leakage_bits() const;
    /// H(S) in bits.
    double secret_entropy() const;
    /// log2 |S-space| - H(S); the secret-space size is supplied because
    /// unreached labels still count.
    double uniformity_deficit(double log2_secret_space) const;

    double total_mass() const { return total_; }
    std::size_t support_size() const { return cells_.size(); }

    /// Conditional secret distributions: for an independent cross-check,
    /// sums p(m,e) * || p(s | m,e) - p(s) ||_1 over the (m, e) support.
    double average_conditional_secret_distance() const;

  private:
    struct Key {
        std::uint64_t s, m, e;
        bool operator==(const Key& o) const { return s == o.s && m == o.m && e == o.e; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = k.s * 0x9e3779b97f4a7c15ull;
            h ^= k.m + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h ^= k.e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            return static_cast<std::size_t>(h);
        }
    };

    std::unordered_map<Key, double, KeyHash> cells_;
    double total_ = 0.0;
};

/// Exhaustive view of n i.i.d. copies of a joint source: domain index ->
/// per-variable length-n symbol sequences with the product weight.
class SourceBlockView {
  public:
    SourceBlockView(const JointSource& src, int n);

    std::uint64_t domain_size() const { return size_; }
    double weight(std::uint64_t idx) const;
    /// Sequences per flat variable (participants then dealers).
    std::vector<std::vector<int>> sequences(std::uint64_t idx) const;
    int block_length() const { return n_; }

  private:
    const JointSource& src_;
    int n_;
    std::uint64_t size_;
};

}  // namespace secretshare

#endif
