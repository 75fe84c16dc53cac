#include "secretshare/source_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "secretshare/rng.hpp"

namespace secretshare {

void Alphabet::validate() const {
    if (symbols.empty()) throw ValidationError("alphabet '" + name + "' is empty");
    std::set<std::string> seen(symbols.begin(), symbols.end());
    if (seen.size() != symbols.size())
        throw ValidationError("alphabet '" + name + "' has duplicate symbols");
}

double table_entropy(const std::vector<double>& pmf) {
    double h = 0.0;
    for (double p : pmf) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

JointSource::JointSource(std::vector<Alphabet> participant_alphabets,
                         std::vector<Alphabet> dealer_alphabets,
                         std::vector<double> pmf)
    : L_(static_cast<int>(participant_alphabets.size())),
      D_(static_cast<int>(dealer_alphabets.size())),
      participant_alphabets_(std::move(participant_alphabets)),
      dealer_alphabets_(std::move(dealer_alphabets)),
      pmf_(std::move(pmf)) {
    if (L_ < 1) throw ValidationError("need at least one participant");
    if (D_ < 1) throw ValidationError("need at least one sub-dealer");

    std::size_t cells = 1;
    for (const auto& a : participant_alphabets_) {
        a.validate();
        sizes_.push_back(a.size());
    }
    for (const auto& a : dealer_alphabets_) {
        a.validate();
        sizes_.push_back(a.size());
    }
    strides_.resize(sizes_.size());
    for (std::size_t v = 0; v < sizes_.size(); ++v) {
        strides_[v] = cells;
        if (cells > kDenseTableGuard / static_cast<std::size_t>(sizes_[v]))
            throw GuardExceeded("dense pmf table would exceed " +
                                std::to_string(kDenseTableGuard) + " cells");
        cells *= static_cast<std::size_t>(sizes_[v]);
    }
    if (pmf_.size() != cells)
        throw ValidationError("pmf has " + std::to_string(pmf_.size()) +
                              " entries, product space has " + std::to_string(cells));

    double total = 0.0;
    mu_ = 1.0;
    for (double p : pmf_) {
        if (p < 0.0) throw ValidationError("pmf entry is negative");
        total += p;
        if (p > 0.0) mu_ = std::min(mu_, p);
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw ValidationError("pmf sums to " + std::to_string(total) + ", not 1");
}

std::size_t JointSource::cell_index(const std::vector<int>& symbols) const {
    std::size_t idx = 0;
    for (std::size_t v = 0; v < sizes_.size(); ++v) {
        if (symbols[v] < 0 || symbols[v] >= sizes_[v])
            throw ValidationError("symbol index out of range for variable " + std::to_string(v));
        idx += strides_[v] * static_cast<std::size_t>(symbols[v]);
    }
    return idx;
}

std::vector<int> JointSource::cell_symbols(std::size_t index) const {
    std::vector<int> out(sizes_.size());
    for (std::size_t v = 0; v < sizes_.size(); ++v) {
        out[v] = static_cast<int>(index % static_cast<std::size_t>(sizes_[v]));
        index /= static_cast<std::size_t>(sizes_[v]);
    }
    return out;
}

SubsetMask JointSource::selector_mask(GroupSelector g) const {
    if (g.participants & ~full_mask(L_))
        throw ValidationError("participant selector index out of range");
    if (g.dealers & ~full_mask(D_))
        throw ValidationError("dealer selector index out of range");
    return g.participants | (g.dealers << L_);
}

std::vector<double> JointSource::marginal(SubsetMask variables) const {
    std::size_t out_size = 1;
    std::vector<std::size_t> out_stride(sizes_.size(), 0);
    for (int v = 0; v < static_cast<int>(sizes_.size()); ++v) {
        if (subset_contains(variables, v)) {
            out_stride[v] = out_size;
            out_size *= static_cast<std::size_t>(sizes_[v]);
        }
    }
    std::vector<double> out(out_size, 0.0);

    // Odometer walk over the full table, maintaining the marginal index.
    std::vector<int> digits(sizes_.size(), 0);
    std::size_t out_idx = 0;
    for (std::size_t cell = 0; cell < pmf_.size(); ++cell) {
        out[out_idx] += pmf_[cell];
        for (std::size_t v = 0; v < sizes_.size(); ++v) {
            if (++digits[v] < sizes_[v]) {
                out_idx += out_stride[v];
                break;
            }
            digits[v] = 0;
            out_idx -= out_stride[v] * static_cast<std::size_t>(sizes_[v] - 1);
        }
    }
    return out;
}

double JointSource::entropy(SubsetMask variables) const {
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        auto it = memo_->values.find(variables);
        if (it != memo_->values.end()) return it->second;
    }
    double h = table_entropy(marginal(variables));
    std::lock_guard<std::mutex> lock(memo_->mutex);
    memo_->values.emplace(variables, h);
    return h;
}

double JointSource::conditional_entropy(GroupSelector target, GroupSelector given) const {
    SubsetMask t = selector_mask(target);
    SubsetMask g = selector_mask(given);
    return entropy(t | g) - entropy(g);
}

double JointSource::conditional_mutual_information(GroupSelector a, GroupSelector b,
                                                   GroupSelector given) const {
    SubsetMask ma = selector_mask(a);
    SubsetMask mb = selector_mask(b);
    SubsetMask mc = selector_mask(given);
    return entropy(ma | mc) + entropy(mb | mc) - entropy(ma | mb | mc) - entropy(mc);
}

bool JointSource::is_typical(const SampleBlock& block, double eps, GroupSelector group) const {
    if (eps <= 0.0) throw ValidationError("typicality requires eps > 0");
    SubsetMask vars = selector_mask(group);
    auto elems = subset_elements(vars);
    if (elems.empty()) return true;

    std::size_t space = 1;
    std::vector<std::size_t> stride(elems.size());
    for (std::size_t k = 0; k < elems.size(); ++k) {
        stride[k] = space;
        space *= static_cast<std::size_t>(sizes_[elems[k]]);
    }
    std::vector<double> counts(space, 0.0);
    const int n = block.n;
    for (int i = 0; i < n; ++i) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < elems.size(); ++k) {
            int sym = block.sequences[elems[k]][i];
            if (sym < 0 || sym >= sizes_[elems[k]])
                throw ValidationError("block symbol out of range");
            idx += stride[k] * static_cast<std::size_t>(sym);
        }
        counts[idx] += 1.0;
    }

    std::vector<double> p = marginal(vars);
    for (std::size_t j = 0; j < space; ++j) {
        double freq = counts[j] / n;
        if (std::abs(freq - p[j]) > eps * p[j]) return false;  // p == 0 forbids occurrence
    }
    return true;
}

SampleBlock JointSource::sample_block(int n, std::uint64_t seed) const {
    if (n < 1) throw ValidationError("block length must be >= 1");
    SampleBlock block;
    block.n = n;
    block.seed = seed;
    block.sequences.assign(sizes_.size(), std::vector<int>(n));

    // Inverse-cdf sampling over the dense table.
    std::vector<double> cdf(pmf_.size());
    double acc = 0.0;
    for (std::size_t c = 0; c < pmf_.size(); ++c) {
        acc += pmf_[c];
        cdf[c] = acc;
    }
    Prng rng(seed);
    for (int i = 0; i < n; ++i) {
        double u = rng.next_real() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t cell = std::min<std::size_t>(it - cdf.begin(), pmf_.size() - 1);
        auto symbols = cell_symbols(cell);
        for (std::size_t v = 0; v < sizes_.size(); ++v) block.sequences[v][i] = symbols[v];
    }
    return block;
}

JointSource pairwise_key_source(int L, int D) {
    if (L < 1 || D < 1) throw ValidationError("pairwise key source needs L >= 1, D >= 1");
    if (L * D > 20)
        throw GuardExceeded("pairwise key source with " + std::to_string(L * D) +
                            " key bits exceeds the 20-bit guard");

    auto bit_labels = [](int bits) {
        std::vector<std::string> labels(std::size_t{1} << bits);
        for (std::size_t v = 0; v < labels.size(); ++v) {
            std::string s(bits, '0');
            for (int b = 0; b < bits; ++b)
                if ((v >> b) & 1u) s[bits - 1 - b] = '1';
            labels[v] = s;
        }
        return labels;
    };

    std::vector<Alphabet> parts, dealers;
    for (int l = 0; l < L; ++l) parts.push_back({"X" + std::to_string(l + 1), bit_labels(D)});
    for (int d = 0; d < D; ++d) dealers.push_back({"Y" + std::to_string(d + 1), bit_labels(L)});

    std::size_t cells = std::size_t{1} << (2 * L * D);  // (2^D)^L * (2^L)^D
    if (cells > kDenseTableGuard)
        throw GuardExceeded("pairwise key source needs " + std::to_string(cells) +
                            " pmf cells, guard is " + std::to_string(kDenseTableGuard));

    std::vector<double> pmf(cells, 0.0);
    std::size_t keyspace = std::size_t{1} << (L * D);
    double mass = 1.0 / static_cast<double>(keyspace);
    for (std::size_t key = 0; key < keyspace; ++key) {
        // key bit (l, d) at position l*D + d
        std::size_t idx = 0;
        std::size_t stride = 1;
        for (int l = 0; l < L; ++l) {
            std::size_t x = 0;
            for (int d = 0; d < D; ++d)
                x |= ((key >> (l * D + d)) & 1u) << d;
            idx += stride * x;
            stride <<= D;
        }
        for (int d = 0; d < D; ++d) {
            std::size_t y = 0;
            for (int l = 0; l < L; ++l)
                y |= ((key >> (l * D + d)) & 1u) << l;
            idx += stride * y;
            stride <<= L;
        }
        pmf[idx] += mass;
    }
    return JointSource(std::move(parts), std::move(dealers), std::move(pmf));
}

}  // namespace secretshare
