#include "secretshare/binning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "secretshare/errors.hpp"
#include "secretshare/rng.hpp"

namespace secretshare {

void ProtocolParams::validate() const {
    if (n < 1) throw ValidationError("block length n must be >= 1");
    if (B < 1) throw ValidationError("repetition count B must be >= 1");
    if (eps <= 0.0) throw ValidationError("eps must be positive");
    if (delta < 0.0 || xi < 0.0 || delta_eps < 0.0 || delta_n < 0.0)
        throw ValidationError("slack parameters must be nonnegative");
}

std::uint64_t bin_count(int n, double rate) {
    if (rate < 0.0) throw ValidationError("binning rate must be nonnegative");
    double v = std::exp2(static_cast<double>(n) * rate);
    if (v > 9e15) throw GuardExceeded("bin count 2^(n R) = " + std::to_string(v) +
                                      " too large to index");
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(v - 1e-9)));
}

std::uint64_t sequence_rank(const std::vector<int>& seq, int alphabet_size) {
    std::uint64_t rank = 0;
    for (std::size_t i = seq.size(); i-- > 0;) {
        rank = rank * static_cast<std::uint64_t>(alphabet_size) +
               static_cast<std::uint64_t>(seq[i]);
    }
    return rank;
}

std::vector<int> sequence_from_rank(std::uint64_t rank, int alphabet_size, int n) {
    std::vector<int> seq(n);
    for (int i = 0; i < n; ++i) {
        seq[i] = static_cast<int>(rank % static_cast<std::uint64_t>(alphabet_size));
        rank /= static_cast<std::uint64_t>(alphabet_size);
    }
    return seq;
}

namespace {

std::uint64_t pow_u64_guarded(int base, int n, const char* what) {
    std::uint64_t v = 1;
    for (int i = 0; i < n; ++i) {
        if (v > kSequenceGuard / static_cast<std::uint64_t>(base))
            throw GuardExceeded(std::string(what) + " space exceeds " +
                                std::to_string(kSequenceGuard) + " sequences");
        v *= static_cast<std::uint64_t>(base);
    }
    return v;
}

}  // namespace

BinningCode::BinningCode(const JointSource& src, int n, std::vector<DealerRates> rates,
                         std::uint64_t seed)
    : src_(src), n_(n), rates_(std::move(rates)), seed_(seed) {
    if (n < 1) throw ValidationError("block length must be >= 1");
    if (static_cast<int>(rates_.size()) != src_.num_dealers())
        throw ValidationError("need one rate pair per dealer");
    for (int d = 0; d < src_.num_dealers(); ++d) {
        pow_u64_guarded(src_.dealer_alphabet(d).size(), n, "dealer sequence");
        public_bins_.push_back(bin_count(n, rates_[d].public_rate));
        secret_bins_.push_back(bin_count(n, rates_[d].secret_rate));
    }
}

std::uint64_t BinningCode::public_bin(int d, const std::vector<int>& y_seq) const {
    std::uint64_t rank = sequence_rank(y_seq, src_.dealer_alphabet(d).size());
    return keyed_prf(seed_, 2 * static_cast<std::uint64_t>(d), rank) % public_bins_.at(d);
}

std::uint64_t BinningCode::secret_bin(int d, const std::vector<int>& y_seq) const {
    std::uint64_t rank = sequence_rank(y_seq, src_.dealer_alphabet(d).size());
    return keyed_prf(seed_, 2 * static_cast<std::uint64_t>(d) + 1, rank) % secret_bins_.at(d);
}

EncodedBlock encode_app_a(const BinningCode& code, const std::vector<std::vector<int>>& y) {
    const int D = code.num_dealers();
    if (static_cast<int>(y.size()) != D)
        throw ValidationError("need one sequence per dealer");
    EncodedBlock out;
    for (int d = 0; d < D; ++d) {
        out.public_messages.push_back(code.public_bin(d, y[d]));
        out.secret_indices.push_back(code.secret_bin(d, y[d]));
    }
    return out;
}

DecodeResult decode_app_a(const BinningCode& code,
                          const std::vector<std::uint64_t>& public_messages,
                          SubsetMask participant_group,
                          const std::vector<std::vector<int>>& x_sequences, double eps) {
    const JointSource& src = code.source();
    const int D = src.num_dealers();
    const int L = src.num_participants();
    const int n = code.block_length();
    if (static_cast<int>(public_messages.size()) != D)
        throw ValidationError("need one public message per dealer");

    std::uint64_t space = 1;
    std::vector<std::uint64_t> dealer_space(static_cast<std::size_t>(D));
    for (int d = 0; d < D; ++d) {
        std::uint64_t dsz = pow_u64_guarded(src.dealer_alphabet(d).size(), n, "dealer sequence");
        dealer_space[static_cast<std::size_t>(d)] = dsz;
        if (space > kSequenceGuard / dsz)
            throw GuardExceeded("joint dealer sequence space exceeds " +
                                std::to_string(kSequenceGuard) + " candidates");
        space *= dsz;
    }

    SampleBlock block;
    block.n = n;
    block.sequences.assign(static_cast<std::size_t>(L + D), std::vector<int>(n, 0));
    for (int l : subset_elements(participant_group)) block.sequences[l] = x_sequences.at(l);
    GroupSelector group{participant_group, full_mask(D)};

    DecodeResult result;
    bool found = false;
    std::vector<std::vector<int>> candidate(D);
    for (std::uint64_t idx = 0; idx < space; ++idx) {
        std::uint64_t rest = idx;
        bool bins_match = true;
        for (int d = 0; d < D; ++d) {
            std::uint64_t rank = rest % dealer_space[static_cast<std::size_t>(d)];
            rest /= dealer_space[static_cast<std::size_t>(d)];
            candidate[d] = sequence_from_rank(rank, src.dealer_alphabet(d).size(), n);
            if (code.public_bin(d, candidate[d]) != public_messages[d]) {
                bins_match = false;
                break;
            }
        }
        if (!bins_match) continue;
        for (int d = 0; d < D; ++d) block.sequences[static_cast<std::size_t>(L + d)] = candidate[d];
        if (!src.is_typical(block, eps, group)) continue;
        if (found) {  // second candidate: ambiguous
            found = false;
            break;
        }
        found = true;
        result.y = candidate;
    }

    if (!found) {
        result.failed = true;
        result.y.assign(static_cast<std::size_t>(D), std::vector<int>(n, 0));
    }
    return result;
}

NestedBinningSchedule::NestedBinningSchedule(const JointSource& src, int dealer, double delta,
                                             double eps)
    : dealer_(dealer), delta_(delta), eps_(eps) {
    build(src, delta, eps);
}

namespace {

double default_slack(const JointSource& src, int dealer, double eps) {
    SubsetMask predecessors = full_mask(dealer);  // dealers 0..dealer-1
    GroupSelector cond{full_mask(src.num_participants()), predecessors};
    double h = src.conditional_entropy(GroupSelector::of_dealers(SubsetMask{1} << dealer), cond);
    return 3.0 * eps * h + eps;
}

}  // namespace

NestedBinningSchedule::NestedBinningSchedule(const JointSource& src, int dealer, double eps)
    : NestedBinningSchedule(src, dealer, default_slack(src, dealer, eps), eps) {}

void NestedBinningSchedule::build(const JointSource& src, double delta, double eps) {
    const int D = src.num_dealers();
    if (dealer_ < 0 || dealer_ >= D) throw ValidationError("dealer index out of range");
    if (eps <= 0.0) throw ValidationError("eps must be positive");
    if (delta < 0.0) throw ValidationError("delta must be nonnegative");

    const SubsetMask predecessors = full_mask(dealer_);
    const GroupSelector target = GroupSelector::of_dealers(SubsetMask{1} << dealer_);
    const GroupSelector base_cond{full_mask(src.num_participants()), predecessors};

    // Thresholds over all dealer subsets, clamped at zero, sorted increasingly
    // (ties broken by subset mask so the schedule is deterministic).
    std::vector<std::pair<double, SubsetMask>> entries;
    for (SubsetMask s : all_subsets(D)) {
        GroupSelector cond = base_cond | GroupSelector::of_dealers(s);
        double h = src.conditional_entropy(target, cond);
        double thr = std::max(0.0, h - delta);
        if (h <= 1e-12) thr = 0.0;
        entries.emplace_back(thr, s);
    }
    std::sort(entries.begin(), entries.end());

    thresholds_.clear();
    subsets_.clear();
    layer_rates_.clear();
    for (const auto& [thr, s] : entries) {
        thresholds_.push_back(thr);
        subsets_.push_back(s);
    }
    for (std::size_t j = 0; j < thresholds_.size(); ++j)
        layer_rates_.push_back(j == 0 ? thresholds_[0] : thresholds_[j] - thresholds_[j - 1]);

    double h_top = src.conditional_entropy(target, base_cond);
    layer_rates_.push_back(delta + eps * h_top + eps);
}

double NestedBinningSchedule::total_rate() const {
    double total = 0.0;
    for (double r : layer_rates_) total += r;
    return total;
}

NestedBinningCode::NestedBinningCode(const JointSource& src, NestedBinningSchedule schedule,
                                     int n, std::uint64_t seed)
    : src_(src), schedule_(std::move(schedule)), n_(n), seed_(seed) {
    if (n < 1) throw ValidationError("block length must be >= 1");
    pow_u64_guarded(src_.dealer_alphabet(schedule_.dealer()).size(), n, "dealer sequence");
    for (int j = 0; j < schedule_.num_layers(); ++j)
        bins_.push_back(bin_count(n, schedule_.layer_rates()[static_cast<std::size_t>(j)]));
}

std::uint64_t NestedBinningCode::layer_bin(int layer, const std::vector<int>& y_seq) const {
    std::uint64_t rank =
        sequence_rank(y_seq, src_.dealer_alphabet(schedule_.dealer()).size());
    std::uint64_t tag = (static_cast<std::uint64_t>(schedule_.dealer()) << 16) |
                        static_cast<std::uint64_t>(layer);
    return keyed_prf(seed_, tag, rank) % bins_.at(layer);
}

std::vector<std::uint64_t> NestedBinningCode::encode(const std::vector<int>& y_seq) const {
    std::vector<std::uint64_t> out;
    for (int j = 0; j < schedule_.num_layers(); ++j) out.push_back(layer_bin(j, y_seq));
    return out;
}

DecodeResult successive_decode(const std::vector<NestedBinningCode>& codes,
                               const std::vector<std::vector<std::uint64_t>>& messages,
                               const std::vector<std::vector<int>>& x_sequences, double eps) {
    if (codes.empty()) throw ValidationError("no dealer codes");
    const JointSource& src = codes.front().source();
    const int D = src.num_dealers();
    const int L = src.num_participants();
    const int n = codes.front().block_length();
    if (static_cast<int>(codes.size()) != D || static_cast<int>(messages.size()) != D)
        throw ValidationError("need one code and message vector per dealer");
    if (static_cast<int>(x_sequences.size()) != L)
        throw ValidationError("successive decoding needs all participant sequences");

    DecodeResult result;
    result.y.assign(static_cast<std::size_t>(D), std::vector<int>(n, 0));

    SampleBlock block;
    block.n = n;
    block.sequences.assign(static_cast<std::size_t>(L + D), std::vector<int>(n, 0));
    for (int l = 0; l < L; ++l) block.sequences[l] = x_sequences[l];

    for (int i = 0; i < D; ++i) {
        if (codes[i].schedule().dealer() != i)
            throw ValidationError("codes must be ordered by dealer index");
        const int asz = src.dealer_alphabet(i).size();
        std::uint64_t space = 1;
        for (int k = 0; k < n; ++k) space *= static_cast<std::uint64_t>(asz);

        GroupSelector group{full_mask(L), full_mask(i + 1)};
        bool found = false;
        bool ambiguous = false;
        std::vector<int> chosen;
        for (std::uint64_t rank = 0; rank < space; ++rank) {
            std::vector<int> cand = sequence_from_rank(rank, asz, n);
            bool match = true;
            for (int j = 0; j < codes[i].schedule().num_layers(); ++j) {
                if (codes[i].layer_bin(j, cand) != messages[i].at(static_cast<std::size_t>(j))) {
                    match = false;
                    break;
                }
            }
            if (!match) continue;
            block.sequences[static_cast<std::size_t>(L + i)] = cand;
            if (!src.is_typical(block, eps, group)) continue;
            if (found) {
                ambiguous = true;
                break;
            }
            found = true;
            chosen = cand;
        }
        if (found && !ambiguous) {
            result.y[static_cast<std::size_t>(i)] = std::move(chosen);
        } else {
            result.failed = true;  // canonical all-first-symbol fallback
        }
        // decoded estimate (or fallback) feeds the next dealer's typicality check
        block.sequences[static_cast<std::size_t>(L + i)] = result.y[static_cast<std::size_t>(i)];
    }
    return result;
}

}  // namespace secretshare
