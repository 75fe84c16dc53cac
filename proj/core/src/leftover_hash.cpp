#include "secretshare/leftover_hash.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "secretshare/errors.hpp"
#include "secretshare/hashing.hpp"

namespace secretshare {

double lhl_rhs(const std::map<SubsetMask, double>& hash_bits,
               const std::map<SubsetMask, double>& min_entropy_bits) {
    if (hash_bits.empty()) return 0.0;
    double max_exp = -kDenseTableGuard;  // any very negative starting point
    std::vector<double> exponents;
    for (const auto& [s, r] : hash_bits) {
        if (s == 0) throw ValidationError("hash-bit map must be over nonempty subsets");
        auto it = min_entropy_bits.find(s);
        if (it == min_entropy_bits.end())
            throw ValidationError("min-entropy missing for subset " + subset_to_string(s));
        double e = r - it->second;
        exponents.push_back(e);
        max_exp = std::max(max_exp, e);
    }
    double sum = 0.0;
    for (double e : exponents) sum += std::exp2(e - max_exp);
    return std::exp2(max_exp / 2.0) * std::sqrt(sum);
}

double smoothing_delta(std::uint64_t cardinality, int n, int D, double eps) {
    if (cardinality < 1) throw ValidationError("alphabet cardinality must be >= 1");
    if (n < 1) throw ValidationError("blocklength must be >= 1");
    if (D < 0) throw ValidationError("dealer count must be >= 0");
    if (eps <= 0.0 || eps > 1.0) throw ValidationError("eps must lie in (0, 1]");
    double radicand = (2.0 / n) * (static_cast<double>(D) + std::log2(1.0 / eps));
    return std::log2(static_cast<double>(cardinality) + 3.0) * std::sqrt(radicand);
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, int n, const char* what) {
    std::uint64_t v = 1;
    for (int i = 0; i < n; ++i) {
        if (base != 0 && v > kDenseTableGuard / base)
            throw GuardExceeded(std::string(what) + " space exceeds " +
                                std::to_string(kDenseTableGuard) + " cells");
        v *= base;
    }
    return v;
}

}  // namespace

SmoothedFunction::SmoothedFunction(const JointSource& src, int n, double eps)
    : src_(src), n_(n), eps_(eps) {
    if (src.num_participants() != 1)
        throw ValidationError("smoothing expects exactly one conditioning variable");
    if (n < 1) throw ValidationError("blocklength must be >= 1");
    if (eps <= 0.0 || eps > 1.0) throw ValidationError("eps must lie in (0, 1]");

    const int D = src.num_dealers();
    const int L = 1;
    const int zsz = src.participant_alphabet(0).size();
    std::uint64_t ysz = 1;
    std::vector<int> dealer_sizes(D);
    for (int d = 0; d < D; ++d) {
        dealer_sizes[d] = src.dealer_alphabet(d).size();
        ysz *= static_cast<std::uint64_t>(dealer_sizes[d]);
    }
    y_space_ = checked_pow(ysz, n, "dealer sequence");
    z_space_ = checked_pow(static_cast<std::uint64_t>(zsz), n, "conditioning sequence");
    if (y_space_ > kDenseTableGuard / std::max<std::uint64_t>(z_space_, 1))
        throw GuardExceeded("smoothing table needs " + std::to_string(y_space_) + " x " +
                            std::to_string(z_space_) + " cells, guard is " +
                            std::to_string(kDenseTableGuard));

    // Single-letter tables: joint over (y-super-symbol, z) plus marginals.
    const SubsetMask all_dealers = full_mask(D);
    std::vector<double> joint = src.marginal(src.selector_mask({full_mask(L), all_dealers}));
    std::vector<double> pz = src.marginal(src.selector_mask({full_mask(L), 0}));

    auto subsets = nonempty_subsets(D);
    const std::size_t nsub = subsets.size();

    // Per subset: projected sub-symbol of each y-super-symbol and the
    // single-letter conditional -log2 q(y_S | z).
    std::vector<std::uint64_t> proj(nsub * ysz, 0);
    std::vector<std::uint64_t> proj_size(nsub, 1);
    for (std::size_t si = 0; si < nsub; ++si) {
        SubsetMask s = subsets[si];
        for (std::uint64_t y = 0; y < ysz; ++y) {
            std::uint64_t stride = 1, p = 0, rest = y;
            for (int d = 0; d < D; ++d) {
                std::uint64_t digit = rest % static_cast<std::uint64_t>(dealer_sizes[d]);
                rest /= static_cast<std::uint64_t>(dealer_sizes[d]);
                if (subset_contains(s, d)) {
                    p += stride * digit;
                    stride *= static_cast<std::uint64_t>(dealer_sizes[d]);
                }
            }
            proj[si * ysz + y] = p;
            proj_size[si] = stride;
        }
    }
    std::vector<std::vector<double>> nll(nsub);  // [si][ysub * zsz + z]
    for (std::size_t si = 0; si < nsub; ++si) {
        std::vector<double> marg(proj_size[si] * static_cast<std::uint64_t>(zsz), 0.0);
        for (std::uint64_t y = 0; y < ysz; ++y)
            for (int z = 0; z < zsz; ++z)
                marg[proj[si * ysz + y] * zsz + static_cast<std::uint64_t>(z)] +=
                    joint[static_cast<std::size_t>(z) + zsz * y];
        nll[si].assign(marg.size(), 0.0);
        for (std::uint64_t j = 0; j < marg.size(); ++j) {
            int z = static_cast<int>(j % static_cast<std::uint64_t>(zsz));
            double cond = pz[static_cast<std::size_t>(z)] > 0.0
                              ? marg[j] / pz[static_cast<std::size_t>(z)]
                              : 0.0;
            nll[si][j] = cond > 0.0 ? -std::log2(cond)
                                    : std::numeric_limits<double>::infinity();
        }
    }

    // Floors n H(Y_S | Z) - n delta_S(n).
    for (std::size_t si = 0; si < nsub; ++si) {
        SubsetMask s = subsets[si];
        double h = src.conditional_entropy(GroupSelector::of_dealers(s),
                                           GroupSelector::of_participants(1u));
        double d = smoothing_delta(proj_size[si], n, D, eps);
        delta_[s] = d;
        floor_[s] = n * h - n * d;
    }

    // One pass over all sequence pairs: keep/drop, mass accounting and the
    // marginal tables for the min-entropies.
    kept_.assign(static_cast<std::size_t>(y_space_ * z_space_), false);
    std::vector<std::vector<double>> wmarg(nsub);
    std::vector<std::uint64_t> sub_space(nsub, 1);
    for (std::size_t si = 0; si < nsub; ++si) {
        sub_space[si] = checked_pow(proj_size[si], n, "subset sequence");
        if (subsets[si] != all_dealers)
            wmarg[si].assign(sub_space[si] * z_space_, 0.0);
    }
    double max_full_ratio = 0.0;

    std::vector<double> pz_seq(z_space_, 0.0);
    std::vector<int> zdig(static_cast<std::size_t>(n), 0);
    for (std::uint64_t zr = 0; zr < z_space_; ++zr) {
        std::uint64_t rest = zr;
        double p = 1.0;
        for (int i = 0; i < n; ++i) {
            zdig[static_cast<std::size_t>(i)] =
                static_cast<int>(rest % static_cast<std::uint64_t>(zsz));
            rest /= static_cast<std::uint64_t>(zsz);
            p *= pz[static_cast<std::size_t>(zdig[static_cast<std::size_t>(i)])];
        }
        pz_seq[zr] = p;
        if (p <= 0.0) continue;

        std::vector<std::uint64_t> ydig(static_cast<std::size_t>(n), 0);
        for (std::uint64_t yr = 0; yr < y_space_; ++yr) {
            std::uint64_t yrest = yr;
            double cell = 1.0;  // q(y^n, z^n)
            for (int i = 0; i < n; ++i) {
                ydig[static_cast<std::size_t>(i)] = yrest % ysz;
                yrest /= ysz;
                cell *= joint[static_cast<std::size_t>(zdig[static_cast<std::size_t>(i)]) +
                              static_cast<std::size_t>(zsz) * ydig[static_cast<std::size_t>(i)]];
            }
            bool keep = true;
            for (std::size_t si = 0; si < nsub && keep; ++si) {
                double acc = 0.0;
                for (int i = 0; i < n; ++i) {
                    acc += nll[si][proj[si * ysz + ydig[static_cast<std::size_t>(i)]] * zsz +
                                   static_cast<std::uint64_t>(
                                       zdig[static_cast<std::size_t>(i)])];
                    if (std::isinf(acc)) break;
                }
                if (acc < floor_.at(subsets[si])) keep = false;
            }
            if (!keep) {
                vdist_ += cell;
                continue;
            }
            kept_[static_cast<std::size_t>(yr * z_space_ + zr)] = true;
            mass_ += cell;
            if (cell <= 0.0) continue;
            for (std::size_t si = 0; si < nsub; ++si) {
                if (subsets[si] == all_dealers) continue;
                std::uint64_t sidx = 0, stride = 1;
                for (int i = 0; i < n; ++i) {
                    sidx += stride * proj[si * ysz + ydig[static_cast<std::size_t>(i)]];
                    stride *= proj_size[si];
                }
                wmarg[si][sidx * z_space_ + zr] += cell;
            }
            max_full_ratio = std::max(max_full_ratio, cell / p);
        }
    }

    for (std::size_t si = 0; si < nsub; ++si) {
        SubsetMask s = subsets[si];
        double ratio = 0.0;
        if (s == all_dealers) {
            ratio = max_full_ratio;
        } else {
            for (std::uint64_t j = 0; j < wmarg[si].size(); ++j) {
                std::uint64_t zr = j % z_space_;
                if (pz_seq[zr] > 0.0) ratio = std::max(ratio, wmarg[si][j] / pz_seq[zr]);
            }
        }
        min_entropy_[s] =
            ratio > 0.0 ? -std::log2(ratio) : std::numeric_limits<double>::infinity();
    }
}

bool SmoothedFunction::kept(std::uint64_t y_rank, std::uint64_t z_rank) const {
    return kept_.at(static_cast<std::size_t>(y_rank * z_space_ + z_rank));
}

double SmoothedFunction::q_value(std::uint64_t y_rank, std::uint64_t z_rank) const {
    const int n = n_;
    const int zsz = src_.participant_alphabet(0).size();
    std::uint64_t ysz = 1;
    for (int d = 0; d < src_.num_dealers(); ++d)
        ysz *= static_cast<std::uint64_t>(src_.dealer_alphabet(d).size());
    std::vector<double> joint =
        src_.marginal(src_.selector_mask({1u, full_mask(src_.num_dealers())}));
    double q = 1.0;
    for (int i = 0; i < n; ++i) {
        std::uint64_t y = y_rank % ysz;
        y_rank /= ysz;
        std::uint64_t z = z_rank % static_cast<std::uint64_t>(zsz);
        z_rank /= static_cast<std::uint64_t>(zsz);
        q *= joint[static_cast<std::size_t>(z) + static_cast<std::size_t>(zsz) * y];
    }
    return q;
}

double SmoothedFunction::w_value(std::uint64_t y_rank, std::uint64_t z_rank) const {
    return kept(y_rank, z_rank) ? q_value(y_rank, z_rank) : 0.0;
}

bool SmoothedFunction::postconditions_hold(double tol) const {
    if (vdist_ > eps_ + tol) return false;
    for (const auto& [s, h] : min_entropy_)
        if (h < floor_.at(s) - tol) return false;
    return true;
}

SmoothedFunction smooth_truncate(const JointSource& src, int n, double eps) {
    return SmoothedFunction(src, n, eps);
}

HashBudget hash_length_budget(const JointSource& src, const AccessStructure& a,
                              const ProtocolParams& params) {
    params.validate();
    if (a.L != src.num_participants())
        throw ValidationError("access structure and source disagree on participant count");
    const int D = src.num_dealers();
    const int n = params.n;
    const int B = params.B;

    HashBudget out;
    double best_per_dealer = std::numeric_limits<double>::infinity();
    for (SubsetMask s : nonempty_subsets(D)) {
        double imin = std::numeric_limits<double>::infinity();
        for (SubsetMask u : a.unauthorized) {
            double v = src.conditional_mutual_information(
                GroupSelector::of_dealers(s),
                GroupSelector::of_participants(full_mask(a.L)),
                GroupSelector::of_participants(u));
            imin = std::min(imin, v);
        }
        double budget;
        if (std::isinf(imin)) {
            budget = std::numeric_limits<double>::infinity();
        } else {
            // log2(|Y_S|^n + 3), stable for large exponents
            double bits_ys = 0.0;
            for (int d : subset_elements(s))
                bits_ys += std::log2(static_cast<double>(src.dealer_alphabet(d).size()));
            double alog = static_cast<double>(n) * bits_ys;
            double log_card =
                alog > 50.0 ? alog : std::log2(std::exp2(alog) + 3.0);
            double delta_snb =
                log_card * std::sqrt((2.0 / B) * (D + std::log2(1.0 / params.eps)));
            budget = static_cast<double>(n) * B * imin -
                     static_cast<double>(n) * B * params.delta_eps -
                     static_cast<double>(B) * params.delta_n -
                     static_cast<double>(B) * delta_snb - static_cast<double>(n) * params.xi;
        }
        out.subset_budget_bits[s] = budget;
        double per_dealer = budget / subset_size(s);
        if (per_dealer < best_per_dealer) {
            best_per_dealer = per_dealer;
            out.binding_subset = s;
        }
    }

    double r = std::isinf(best_per_dealer) ? std::numeric_limits<double>::infinity()
                                           : std::floor(best_per_dealer);
    if (r <= 0.0) {
        out.per_dealer_bits.assign(static_cast<std::size_t>(D), 0);
        if (best_per_dealer <= 0.0)
            out.diagnostic = "budget nonpositive for subset " +
                             subset_to_string(out.binding_subset) + "; no extractable bits";
        return out;
    }
    out.per_dealer_bits.resize(static_cast<std::size_t>(D));
    for (int d = 0; d < D; ++d) {
        double input_bits = static_cast<double>(n) * B *
                            bits_per_symbol(src.dealer_alphabet(d).size());
        double rd = r;
        if (rd > input_bits) {
            rd = input_bits;
            out.capped_by_input_length = true;
        }
        out.per_dealer_bits[static_cast<std::size_t>(d)] = static_cast<std::uint64_t>(rd);
    }
    return out;
}

}  // namespace secretshare
