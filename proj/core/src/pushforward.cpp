#include "secretshare/pushforward.hpp"

#include <cmath>
#include <map>
#include <string>

#include "secretshare/errors.hpp"

namespace secretshare {

JointPushforward JointPushforward::accumulate(const PushforwardSpec& spec) {
    if (spec.domain_size == 0) throw ValidationError("empty pushforward domain");
    if (spec.domain_size > kDenseTableGuard)
        throw GuardExceeded("pushforward domain has " + std::to_string(spec.domain_size) +
                            " states, guard is " + std::to_string(kDenseTableGuard));
    JointPushforward out;
    for (std::uint64_t i = 0; i < spec.domain_size; ++i) {
        double w = spec.weight(i);
        if (w <= 0.0) continue;
        Key k{spec.secret(i), spec.message(i), spec.eavesdropper(i)};
        out.cells_[k] += w;
        out.total_ += w;
    }
    return out;
}

double JointPushforward::leakage_bits() const {
    // I(S; M, E) = H(S) + H(M, E) - H(S, M, E)
    std::map<std::uint64_t, double> ps;
    std::map<std::pair<std::uint64_t, std::uint64_t>, double> pme;
    double h_joint = 0.0;
    for (const auto& [k, p] : cells_) {
        ps[k.s] += p;
        pme[{k.m, k.e}] += p;
        if (p > 0.0) h_joint -= p * std::log2(p);
    }
    double h_s = 0.0;
    for (const auto& [s, p] : ps)
        if (p > 0.0) h_s -= p * std::log2(p);
    double h_me = 0.0;
    for (const auto& [me, p] : pme)
        if (p > 0.0) h_me -= p * std::log2(p);
    return h_s + h_me - h_joint;
}

double JointPushforward::secret_entropy() const {
    std::map<std::uint64_t, double> ps;
    for (const auto& [k, p] : cells_) ps[k.s] += p;
    double h = 0.0;
    for (const auto& [s, p] : ps)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

double JointPushforward::uniformity_deficit(double log2_secret_space) const {
    return log2_secret_space - secret_entropy();
}

double JointPushforward::average_conditional_secret_distance() const {
    std::map<std::uint64_t, double> ps;
    std::map<std::pair<std::uint64_t, std::uint64_t>, double> pme;
    for (const auto& [k, p] : cells_) {
        ps[k.s] += p;
        pme[{k.m, k.e}] += p;
    }
    // sum over (m,e): p(m,e) * sum_s |p(s|m,e) - p(s)|. Secrets absent from a
    // conditional contribute p(s) each; folding their total (1 - present
    // mass) in lets one pass over the joint cells suffice.
    std::map<std::pair<std::uint64_t, std::uint64_t>, double> l1;
    for (const auto& [k, p] : cells_) {
        auto me = std::make_pair(k.m, k.e);
        double cond = p / pme.at(me);
        l1[me] += std::abs(cond - ps.at(k.s)) - ps.at(k.s);
    }
    double total = 0.0;
    for (const auto& [me, p] : pme) total += p * (l1[me] + 1.0);
    return total;
}

SourceBlockView::SourceBlockView(const JointSource& src, int n) : src_(src), n_(n) {
    if (n < 1) throw ValidationError("blocklength must be >= 1");
    std::uint64_t size = 1;
    for (int i = 0; i < n; ++i) {
        if (size > kDenseTableGuard / src.table_size())
            throw GuardExceeded("i.i.d. block space (" + std::to_string(src.table_size()) +
                                ")^" + std::to_string(n) + " exceeds " +
                                std::to_string(kDenseTableGuard) + " states");
        size *= src.table_size();
    }
    size_ = size;
}

double SourceBlockView::weight(std::uint64_t idx) const {
    double w = 1.0;
    for (int i = 0; i < n_; ++i) {
        w *= src_.pmf()[static_cast<std::size_t>(idx % src_.table_size())];
        idx /= src_.table_size();
    }
    return w;
}

std::vector<std::vector<int>> SourceBlockView::sequences(std::uint64_t idx) const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(src_.num_variables()),
                                      std::vector<int>(n_));
    for (int i = 0; i < n_; ++i) {
        auto symbols = src_.cell_symbols(static_cast<std::size_t>(idx % src_.table_size()));
        idx /= src_.table_size();
        for (int v = 0; v < src_.num_variables(); ++v) out[static_cast<std::size_t>(v)][i] = symbols[static_cast<std::size_t>(v)];
    }
    return out;
}

}  // namespace secretshare
