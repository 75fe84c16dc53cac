#include "secretshare/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "secretshare/errors.hpp"
#include "secretshare/gf2m.hpp"
#include "secretshare/hashing.hpp"
#include "secretshare/leftover_hash.hpp"
#include "secretshare/ramp.hpp"
#include "secretshare/rng.hpp"

namespace secretshare {

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::AppABinning: return "appA-binning";
        case Scheme::NestedReconciliationPA: return "nested-reconciliation+PA";
        case Scheme::ThresholdRamp: return "threshold-ramp";
    }
    throw ValidationError("unknown scheme");
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "appA-binning") return Scheme::AppABinning;
    if (name == "nested-reconciliation+PA") return Scheme::NestedReconciliationPA;
    if (name == "threshold-ramp") return Scheme::ThresholdRamp;
    throw ValidationError("unknown scheme '" + name + "'");
}

void ProtocolSpec::validate() const {
    if (scheme == Scheme::ThresholdRamp) {
        ThresholdParams tp{t, z};
        tp.validate(L);
        if (z < 1) throw ValidationError("threshold-ramp needs z >= 1");
        if (field_degree < 1 || field_degree > 16)
            throw ValidationError("field degree outside [1,16]");
        if (L >= (1 << field_degree))
            throw ValidationError("field too small for " + std::to_string(L) + " points");
        if (blocks < 1) throw ValidationError("blocks must be >= 1");
        if (D < 1) throw ValidationError("need at least one dealer");
        return;
    }
    if (!source) throw ValidationError("source-based scheme needs a source");
    if (!access) throw ValidationError("source-based scheme needs an access structure");
    params.validate();
    if (scheme == Scheme::AppABinning &&
        static_cast<int>(rates.size()) != source->num_dealers())
        throw ValidationError("appA binning needs one rate pair per dealer");
}

double wilson_upper_95(std::uint64_t k, std::uint64_t n) {
    if (n == 0) return 1.0;
    const double zq = 1.959963984540054;
    double phat = static_cast<double>(k) / n;
    double z2 = zq * zq;
    double denom = 1.0 + z2 / n;
    double center = phat + z2 / (2.0 * n);
    double rad = zq * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return std::min(1.0, (center + rad) / denom);
}

namespace {

// ---------- threshold-ramp ----------

struct RampInstance {
    int L, D, t, z, m, blocks;
    FieldSpec field;
    int k;                     // t - z secret elements per block
    int secret_elems;          // k * blocks
    int rand_elems;            // z * blocks
    std::uint64_t secret_space, rand_space, key_space_per_dealer;
    int bits_per_pair;         // m * blocks

    explicit RampInstance(const ProtocolSpec& spec)
        : L(spec.L),
          D(spec.D),
          t(spec.t),
          z(spec.z),
          m(spec.field_degree),
          blocks(spec.blocks),
          field(spec.field_degree),
          k(spec.t - spec.z) {
        secret_elems = k * blocks;
        rand_elems = z * blocks;
        secret_space = std::uint64_t{1} << (m * secret_elems);
        rand_space = std::uint64_t{1} << (m * rand_elems);
        key_space_per_dealer = std::uint64_t{1} << (m * blocks * L);
        bits_per_pair = m * blocks;
    }

    std::vector<std::uint32_t> unpack_elems(std::uint64_t rank, int count) const {
        std::vector<std::uint32_t> out(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) {
            out[static_cast<std::size_t>(i)] =
                static_cast<std::uint32_t>(rank & (field.order() - 1));
            rank >>= m;
        }
        return out;
    }

    // Shares of one dealer for explicit secret/randomness ranks.
    RampShareSet shares_for(std::uint64_t secret_rank, std::uint64_t rand_rank) const {
        auto secret = unpack_elems(secret_rank, secret_elems);
        auto rnd = unpack_elems(rand_rank, rand_elems);
        RampShareSet out;
        out.L = L;
        out.t = t;
        out.z = z;
        out.field_degree = m;
        for (int l = 0; l < L; ++l) out.points.push_back(static_cast<std::uint32_t>(l + 1));
        out.shares.assign(static_cast<std::size_t>(L),
                          std::vector<std::uint32_t>(static_cast<std::size_t>(blocks)));
        for (int blk = 0; blk < blocks; ++blk) {
            std::vector<std::uint32_t> coeff(static_cast<std::size_t>(t));
            for (int i = 0; i < k; ++i)
                coeff[static_cast<std::size_t>(i)] = secret[static_cast<std::size_t>(blk * k + i)];
            for (int i = 0; i < z; ++i)
                coeff[static_cast<std::size_t>(k + i)] =
                    rnd[static_cast<std::size_t>(blk * z + i)];
            for (int l = 0; l < L; ++l) {
                std::uint32_t x = out.points[static_cast<std::size_t>(l)];
                std::uint32_t acc = 0;
                for (int i = t - 1; i >= 0; --i) acc = field.add(field.mul(acc, x), coeff[static_cast<std::size_t>(i)]);
                out.shares[static_cast<std::size_t>(l)][static_cast<std::size_t>(blk)] = acc;
            }
        }
        return out;
    }

    // Ciphertext bits of participant l for given shares and key rank: the
    // key rank packs L key pads of m*blocks bits each.
    std::uint64_t ciphertext_bits(const RampShareSet& shares, std::uint64_t key_rank,
                                  int l) const {
        std::uint64_t share_bits = 0;
        for (int blk = 0; blk < blocks; ++blk)
            share_bits = (share_bits << m) |
                         shares.shares[static_cast<std::size_t>(l)][static_cast<std::size_t>(blk)];
        std::uint64_t pad =
            (key_rank >> (static_cast<std::uint64_t>(l) * bits_per_pair)) &
            ((std::uint64_t{1} << bits_per_pair) - 1);
        return share_bits ^ pad;
    }
};

VerificationReport verify_threshold_ramp(const ProtocolSpec& spec) {
    RampInstance inst(spec);
    inst.field.verify_tables();
    AccessStructure acc = threshold_structure(spec.L, ThresholdParams{spec.t, spec.z});

    VerificationReport report;
    report.scheme = scheme_name(spec.scheme);
    report.exact = true;

    // Reliability: reconstruction is algebraically key-independent (the pad
    // cancels), so enumerating (secret, randomness) pairs, dealers and
    // authorized sets is exhaustive. Keys enter via one concrete registry to
    // exercise the full unmask path.
    double max_err = 0.0;
    for (SubsetMask a : acc.authorized) {
        double err_mass = 0.0;
        for (int d = 0; d < spec.D; ++d) {
            for (std::uint64_t sr = 0; sr < inst.secret_space; ++sr) {
                for (std::uint64_t rr = 0; rr < inst.rand_space; ++rr) {
                    RampShareSet shares = inst.shares_for(sr, rr);
                    PairwiseKeys keys(spec.L, spec.D,
                                      static_cast<std::size_t>(inst.bits_per_pair), spec.seed);
                    DealerBroadcast bc = dealer_broadcast(keys, d, shares, inst.field);
                    auto rec =
                        participant_recover(bc, keys, a, spec.t, spec.z, shares, inst.field);
                    auto expect = inst.unpack_elems(sr, inst.secret_elems);
                    if (rec != expect) err_mass += 1.0;
                }
            }
        }
        double denom =
            static_cast<double>(inst.secret_space) * inst.rand_space * spec.D;
        report.error_by_group.push_back({a, err_mass / denom, 0.0});
        max_err = std::max(max_err, err_mass / denom);
    }
    report.max_error = max_err;

    // Leakage and uniformity: exact per-dealer pushforward over
    // (secret, randomness, keys); dealers are independent by construction
    // (disjoint key material, independent draws), so totals add.
    std::uint64_t per_dealer_bits =
        static_cast<std::uint64_t>(inst.m) * inst.blocks * (inst.t + inst.L);
    bool full_joint = static_cast<std::uint64_t>(spec.D) * per_dealer_bits <= 20;
    report.method = full_joint ? "exhaustive-enumeration" : "per-dealer-composition";

    report.leakage_available = true;
    if (acc.unauthorized.empty()) {
        report.leakage_vacuous = true;
    }
    double max_leak = 0.0;
    double deficit_total = 0.0;
    for (SubsetMask u : acc.unauthorized) {
        auto members = subset_elements(u);
        double leak_total = 0.0;
        if (full_joint) {
            // one enumeration over all dealers jointly
            std::uint64_t domain = std::uint64_t{1} << (spec.D * per_dealer_bits);
            PushforwardSpec pf;
            pf.domain_size = domain;
            double w = 1.0 / static_cast<double>(domain);
            pf.weight = [w](std::uint64_t) { return w; };
            auto split = [&](std::uint64_t idx, int dealer) {
                std::uint64_t chunk =
                    (idx >> (static_cast<std::uint64_t>(dealer) * per_dealer_bits)) &
                    ((std::uint64_t{1} << per_dealer_bits) - 1);
                std::uint64_t sr = chunk & (inst.secret_space - 1);
                chunk >>= inst.m * inst.secret_elems;
                std::uint64_t rr = chunk & (inst.rand_space - 1);
                chunk >>= inst.m * inst.rand_elems;
                return std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>(sr, rr, chunk);
            };
            pf.secret = [&](std::uint64_t idx) {
                std::uint64_t s = 0;
                for (int d = 0; d < spec.D; ++d)
                    s = (s << (inst.m * inst.secret_elems)) | std::get<0>(split(idx, d));
                return s;
            };
            pf.message = [&](std::uint64_t idx) {
                std::uint64_t mlab = 0;
                for (int d = 0; d < spec.D; ++d) {
                    auto [sr, rr, kr] = split(idx, d);
                    RampShareSet shares = inst.shares_for(sr, rr);
                    for (int l = 0; l < spec.L; ++l)
                        mlab = (mlab << inst.bits_per_pair) |
                               inst.ciphertext_bits(shares, kr, l);
                }
                return mlab;
            };
            pf.eavesdropper = [&](std::uint64_t idx) {
                std::uint64_t e = 0;
                for (int d = 0; d < spec.D; ++d) {
                    auto [sr, rr, kr] = split(idx, d);
                    (void)sr;
                    (void)rr;
                    for (int l : members)
                        e = (e << inst.bits_per_pair) |
                            ((kr >> (static_cast<std::uint64_t>(l) * inst.bits_per_pair)) &
                             ((std::uint64_t{1} << inst.bits_per_pair) - 1));
                }
                return e;
            };
            JointPushforward joint = JointPushforward::accumulate(pf);
            leak_total = joint.leakage_bits();
            if (u == 0)
                deficit_total = joint.uniformity_deficit(
                    static_cast<double>(spec.D) * inst.m * inst.secret_elems);
        } else {
            // identical dealers: one exact single-dealer enumeration, scaled
            std::uint64_t domain = std::uint64_t{1} << per_dealer_bits;
            PushforwardSpec pf;
            pf.domain_size = domain;
            double w = 1.0 / static_cast<double>(domain);
            pf.weight = [w](std::uint64_t) { return w; };
            auto split = [&](std::uint64_t idx) {
                std::uint64_t sr = idx & (inst.secret_space - 1);
                idx >>= inst.m * inst.secret_elems;
                std::uint64_t rr = idx & (inst.rand_space - 1);
                idx >>= inst.m * inst.rand_elems;
                return std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>(sr, rr, idx);
            };
            pf.secret = [&](std::uint64_t idx) { return std::get<0>(split(idx)); };
            pf.message = [&](std::uint64_t idx) {
                auto [sr, rr, kr] = split(idx);
                RampShareSet shares = inst.shares_for(sr, rr);
                std::uint64_t mlab = 0;
                for (int l = 0; l < spec.L; ++l)
                    mlab = (mlab << inst.bits_per_pair) | inst.ciphertext_bits(shares, kr, l);
                return mlab;
            };
            pf.eavesdropper = [&](std::uint64_t idx) {
                auto [sr, rr, kr] = split(idx);
                (void)sr;
                (void)rr;
                std::uint64_t e = 0;
                for (int l : members)
                    e = (e << inst.bits_per_pair) |
                        ((kr >> (static_cast<std::uint64_t>(l) * inst.bits_per_pair)) &
                         ((std::uint64_t{1} << inst.bits_per_pair) - 1));
                return e;
            };
            JointPushforward joint = JointPushforward::accumulate(pf);
            leak_total = static_cast<double>(spec.D) * joint.leakage_bits();
            if (u == 0)
                deficit_total =
                    static_cast<double>(spec.D) *
                    joint.uniformity_deficit(static_cast<double>(inst.m) * inst.secret_elems);
        }
        report.leakage_by_group.push_back({u, leak_total, 0.0});
        max_leak = std::max(max_leak, leak_total);
    }
    report.max_leakage_bits = max_leak;
    report.uniformity_deficit_bits = deficit_total;
    report.rate_per_dealer.assign(
        static_cast<std::size_t>(spec.D),
        achieved_rate(spec.t, spec.z, spec.blocks,
                      static_cast<std::size_t>(inst.bits_per_pair)));
    return report;
}

// ---------- Appendix-A binning ----------

struct AppAContext {
    const JointSource& src;
    BinningCode code;
    SourceBlockView view;
    int n;

    AppAContext(const ProtocolSpec& spec)
        : src(*spec.source),
          code(src, spec.params.n, spec.rates, spec.seed),
          view(src, spec.params.n),
          n(spec.params.n) {
        // packed labels must stay injective in 64 bits
        double bits = 0.0;
        for (int d = 0; d < src.num_dealers(); ++d)
            bits += std::log2(static_cast<double>(code.num_public_bins(d))) +
                    std::log2(static_cast<double>(code.num_secret_bins(d)));
        if (bits > 62.0)
            throw GuardExceeded("packed bin labels need " + std::to_string(bits) +
                                " bits; limit is 62");
    }

    std::uint64_t pack_secret(const std::vector<std::vector<int>>& y) const {
        std::uint64_t s = 0;
        for (int d = 0; d < src.num_dealers(); ++d)
            s = s * code.num_secret_bins(d) + code.secret_bin(d, y[static_cast<std::size_t>(d)]);
        return s;
    }
    std::uint64_t pack_message(const std::vector<std::vector<int>>& y) const {
        std::uint64_t m = 0;
        for (int d = 0; d < src.num_dealers(); ++d)
            m = m * code.num_public_bins(d) + code.public_bin(d, y[static_cast<std::size_t>(d)]);
        return m;
    }
    /// Injective rank of the selected participants' sequences.
    std::uint64_t pack_participants(const std::vector<std::vector<int>>& all,
                                    SubsetMask group) const {
        std::uint64_t e = 0;
        for (int l : subset_elements(group)) {
            std::uint64_t space = 1;
            for (int i = 0; i < n; ++i)
                space *= static_cast<std::uint64_t>(src.participant_alphabet(l).size());
            e = e * space + sequence_rank(all[static_cast<std::size_t>(l)],
                                          src.participant_alphabet(l).size());
        }
        return e;
    }
    std::vector<std::vector<int>> dealer_rows(const std::vector<std::vector<int>>& all) const {
        std::vector<std::vector<int>> y;
        for (int d = 0; d < src.num_dealers(); ++d)
            y.push_back(all[static_cast<std::size_t>(src.num_participants() + d)]);
        return y;
    }
    double log2_secret_space() const {
        double v = 0.0;
        for (int d = 0; d < src.num_dealers(); ++d)
            v += std::log2(static_cast<double>(code.num_secret_bins(d)));
        return v;
    }
};

VerificationReport verify_app_a(const ProtocolSpec& spec) {
    AppAContext ctx(spec);
    const AccessStructure& acc = *spec.access;
    const double eps = spec.params.eps;

    VerificationReport report;
    report.scheme = scheme_name(spec.scheme);
    report.exact = true;
    report.method = "exhaustive-enumeration";

    // Reliability per authorized set, with decode results cached per exact
    // (message, observed participant sequences) pair.
    double max_err = 0.0;
    for (SubsetMask a : acc.authorized) {
        std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> cache;
        double err = 0.0;
        for (std::uint64_t idx = 0; idx < ctx.view.domain_size(); ++idx) {
            double w = ctx.view.weight(idx);
            if (w <= 0.0) continue;
            auto all = ctx.view.sequences(idx);
            auto y = ctx.dealer_rows(all);
            std::uint64_t m = ctx.pack_message(y);
            std::uint64_t s = ctx.pack_secret(y);

            auto key = std::make_pair(m, ctx.pack_participants(all, a));
            auto it = cache.find(key);
            std::uint64_t shat;
            if (it != cache.end()) {
                shat = it->second;
            } else {
                std::vector<std::uint64_t> msgs;
                for (int d = 0; d < ctx.src.num_dealers(); ++d)
                    msgs.push_back(ctx.code.public_bin(d, y[static_cast<std::size_t>(d)]));
                // the canonical fallback sequence is the decoder's output on
                // failure, exactly as the error event is defined
                DecodeResult dec = decode_app_a(ctx.code, msgs, a, all, eps);
                shat = ctx.pack_secret(dec.y);
                cache.emplace(key, shat);
            }
            if (shat != s) err += w;
        }
        report.error_by_group.push_back({a, err, 0.0});
        max_err = std::max(max_err, err);
    }
    report.max_error = max_err;

    // Exact leakage per unauthorized set and secret uniformity.
    report.leakage_available = true;
    report.leakage_vacuous = acc.unauthorized.empty();
    double max_leak = 0.0;
    bool deficit_done = false;
    for (SubsetMask u : acc.unauthorized) {
        PushforwardSpec pf;
        pf.domain_size = ctx.view.domain_size();
        pf.weight = [&](std::uint64_t idx) { return ctx.view.weight(idx); };
        pf.secret = [&](std::uint64_t idx) { return ctx.pack_secret(ctx.dealer_rows(ctx.view.sequences(idx))); };
        pf.message = [&](std::uint64_t idx) { return ctx.pack_message(ctx.dealer_rows(ctx.view.sequences(idx))); };
        pf.eavesdropper = [&](std::uint64_t idx) {
            return ctx.pack_participants(ctx.view.sequences(idx), u);
        };
        JointPushforward joint = JointPushforward::accumulate(pf);
        double leak = joint.leakage_bits();
        report.leakage_by_group.push_back({u, leak, 0.0});
        max_leak = std::max(max_leak, leak);
        if (!deficit_done) {
            report.uniformity_deficit_bits = joint.uniformity_deficit(ctx.log2_secret_space());
            deficit_done = true;
        }
    }
    if (!deficit_done) {
        PushforwardSpec pf;
        pf.domain_size = ctx.view.domain_size();
        pf.weight = [&](std::uint64_t idx) { return ctx.view.weight(idx); };
        pf.secret = [&](std::uint64_t idx) { return ctx.pack_secret(ctx.dealer_rows(ctx.view.sequences(idx))); };
        pf.message = [](std::uint64_t) { return 0; };
        pf.eavesdropper = [](std::uint64_t) { return 0; };
        report.uniformity_deficit_bits =
            JointPushforward::accumulate(pf).uniformity_deficit(ctx.log2_secret_space());
    }
    report.max_leakage_bits = max_leak;
    for (int d = 0; d < ctx.src.num_dealers(); ++d)
        report.rate_per_dealer.push_back(spec.rates[static_cast<std::size_t>(d)].secret_rate);
    return report;
}

// ---------- nested reconciliation + privacy amplification ----------

struct NestedContext {
    const JointSource& src;
    std::vector<NestedBinningSchedule> schedules;
    std::vector<NestedBinningCode> codes;
    std::vector<ToeplitzHash> hashes;
    std::vector<std::uint64_t> r_bits;
    int n, B;

    NestedContext(const ProtocolSpec& spec) : src(*spec.source), n(spec.params.n), B(spec.params.B) {
        for (int d = 0; d < src.num_dealers(); ++d) {
            if (spec.params.delta > 0.0)
                schedules.emplace_back(src, d, spec.params.delta, spec.params.eps);
            else
                schedules.emplace_back(src, d, spec.params.eps);
            codes.emplace_back(src, schedules.back(), n, Prng(spec.seed).child(100 + d).seed());
        }
        if (!spec.hash_bits.empty()) {
            r_bits = spec.hash_bits;
        } else {
            HashBudget budget = hash_length_budget(src, *spec.access, spec.params);
            r_bits = budget.per_dealer_bits;
        }
        for (int d = 0; d < src.num_dealers(); ++d) {
            int in_bits = n * B * bits_per_symbol(src.dealer_alphabet(d).size());
            hashes.push_back(ToeplitzHash::sample(
                in_bits, static_cast<int>(r_bits[static_cast<std::size_t>(d)]),
                Prng(spec.seed).child(200 + d).seed()));
        }
        double label_bits = 0.0;
        for (int d = 0; d < src.num_dealers(); ++d) {
            label_bits += static_cast<double>(r_bits[static_cast<std::size_t>(d)]);
            for (int j = 0; j < schedules[static_cast<std::size_t>(d)].num_layers(); ++j)
                label_bits += B * std::log2(static_cast<double>(
                                  codes[static_cast<std::size_t>(d)].layer_bins(j)));
        }
        if (label_bits > 62.0)
            throw GuardExceeded("packed transcript labels need " +
                                std::to_string(label_bits) + " bits; limit is 62");
    }
};

VerificationReport verify_nested(const ProtocolSpec& spec) {
    NestedContext ctx(spec);
    const AccessStructure& acc = *spec.access;
    const double eps = spec.params.eps;
    const int D = ctx.src.num_dealers();
    const int L = ctx.src.num_participants();

    VerificationReport report;
    report.scheme = scheme_name(spec.scheme);
    report.exact = true;
    report.method = "exhaustive-enumeration";

    // Per-block decode error for the full participant set; with B
    // independent repetitions the block error compounds exactly.
    SourceBlockView block_view(ctx.src, ctx.n);
    double block_err = 0.0;
    for (std::uint64_t idx = 0; idx < block_view.domain_size(); ++idx) {
        double w = block_view.weight(idx);
        if (w <= 0.0) continue;
        auto all = block_view.sequences(idx);
        std::vector<std::vector<int>> x(all.begin(), all.begin() + L);
        std::vector<std::vector<std::uint64_t>> msgs;
        for (int d = 0; d < D; ++d)
            msgs.push_back(ctx.codes[static_cast<std::size_t>(d)].encode(
                all[static_cast<std::size_t>(L + d)]));
        DecodeResult dec = successive_decode(ctx.codes, msgs, x, eps);
        bool ok = !dec.failed;
        for (int d = 0; d < D && ok; ++d)
            ok = dec.y[static_cast<std::size_t>(d)] == all[static_cast<std::size_t>(L + d)];
        if (!ok) block_err += w;
    }
    double full_err = 1.0 - std::pow(1.0 - block_err, ctx.B);
    for (SubsetMask a : acc.authorized)
        if (a == full_mask(L)) report.error_by_group.push_back({a, full_err, 0.0});
    report.max_error = full_err;
    report.notes = "reliability uses the full participant set; decoding is defined against x_L";

    // Exact leakage over nB-length blocks.
    SourceBlockView big_view(ctx.src, ctx.n * ctx.B);
    report.leakage_available = true;
    report.leakage_vacuous = acc.unauthorized.empty();
    double log2_secret_space = 0.0;
    for (auto r : ctx.r_bits) log2_secret_space += static_cast<double>(r);

    auto secret_label = [&](const std::vector<std::vector<int>>& all) {
        std::uint64_t s = 0;
        for (int d = 0; d < D; ++d) {
            const auto& seq = all[static_cast<std::size_t>(L + d)];
            BitString bits = serialize_symbols(seq, ctx.src.dealer_alphabet(d).size());
            std::uint64_t v = ctx.hashes[static_cast<std::size_t>(d)].apply_packed(
                bits);
            s = (s << ctx.r_bits[static_cast<std::size_t>(d)]) | v;
        }
        return s;
    };
    auto message_label = [&](const std::vector<std::vector<int>>& all) {
        std::uint64_t m = 0;
        for (int d = 0; d < D; ++d) {
            const auto& seq = all[static_cast<std::size_t>(L + d)];
            for (int b = 0; b < ctx.B; ++b) {
                std::vector<int> chunk(seq.begin() + b * ctx.n, seq.begin() + (b + 1) * ctx.n);
                for (int j = 0; j < ctx.codes[static_cast<std::size_t>(d)].schedule().num_layers(); ++j) {
                    m = m * ctx.codes[static_cast<std::size_t>(d)].layer_bins(j) +
                        ctx.codes[static_cast<std::size_t>(d)].layer_bin(j, chunk);
                }
            }
        }
        return m;
    };

    double max_leak = 0.0;
    bool deficit_done = false;
    for (SubsetMask u : acc.unauthorized) {
        PushforwardSpec pf;
        pf.domain_size = big_view.domain_size();
        pf.weight = [&](std::uint64_t idx) { return big_view.weight(idx); };
        pf.secret = [&](std::uint64_t idx) { return secret_label(big_view.sequences(idx)); };
        pf.message = [&](std::uint64_t idx) { return message_label(big_view.sequences(idx)); };
        pf.eavesdropper = [&](std::uint64_t idx) {
            auto all = big_view.sequences(idx);
            std::uint64_t e = 0;
            for (int l : subset_elements(u)) {
                std::uint64_t space = 1;
                for (int i = 0; i < ctx.n * ctx.B; ++i)
                    space *= static_cast<std::uint64_t>(ctx.src.participant_alphabet(l).size());
                e = e * space + sequence_rank(all[static_cast<std::size_t>(l)],
                                              ctx.src.participant_alphabet(l).size());
            }
            return e;
        };
        JointPushforward joint = JointPushforward::accumulate(pf);
        double leak = joint.leakage_bits();
        report.leakage_by_group.push_back({u, leak, 0.0});
        max_leak = std::max(max_leak, leak);
        if (!deficit_done) {
            report.uniformity_deficit_bits = joint.uniformity_deficit(log2_secret_space);
            deficit_done = true;
        }
    }
    report.max_leakage_bits = max_leak;
    for (auto r : ctx.r_bits)
        report.rate_per_dealer.push_back(static_cast<double>(r) /
                                         (static_cast<double>(ctx.n) * ctx.B));
    return report;
}

}  // namespace

VerificationReport verify_protocol(const ProtocolSpec& spec) {
    spec.validate();
    switch (spec.scheme) {
        case Scheme::ThresholdRamp: return verify_threshold_ramp(spec);
        case Scheme::AppABinning: return verify_app_a(spec);
        case Scheme::NestedReconciliationPA: return verify_nested(spec);
    }
    throw ValidationError("unknown scheme");
}

VerificationReport simulate(const ProtocolSpec& spec, std::uint64_t trials, std::uint64_t seed) {
    spec.validate();
    if (trials < 1) throw ValidationError("need at least one trial");

    VerificationReport report;
    report.scheme = scheme_name(spec.scheme);
    report.exact = false;
    report.method = "monte-carlo-wilson-95";
    report.trials = trials;
    report.leakage_available = false;
    report.notes = "leakage is only reported in exact mode; plug-in estimates are refused";

    if (spec.scheme == Scheme::ThresholdRamp) {
        RampInstance inst(spec);
        AccessStructure acc = threshold_structure(spec.L, ThresholdParams{spec.t, spec.z});
        Prng root(seed);
        std::vector<std::uint64_t> fails(acc.authorized.size(), 0);
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
            Prng rng = root.child(trial);
            std::uint64_t sr = rng.next_below(inst.secret_space);
            std::uint64_t rr = rng.next_below(inst.rand_space);
            PairwiseKeys keys(spec.L, spec.D, static_cast<std::size_t>(inst.bits_per_pair),
                              rng.next_u64());
            RampShareSet shares = inst.shares_for(sr, rr);
            DealerBroadcast bc = dealer_broadcast(keys, 0, shares, inst.field);
            auto expect = inst.unpack_elems(sr, inst.secret_elems);
            for (std::size_t ai = 0; ai < acc.authorized.size(); ++ai) {
                auto rec = participant_recover(bc, keys, acc.authorized[ai], spec.t, spec.z,
                                               shares, inst.field);
                if (rec != expect) ++fails[ai];
            }
        }
        double max_err = 0.0;
        for (std::size_t ai = 0; ai < acc.authorized.size(); ++ai) {
            double est = static_cast<double>(fails[ai]) / trials;
            report.error_by_group.push_back(
                {acc.authorized[ai], est, wilson_upper_95(fails[ai], trials)});
            max_err = std::max(max_err, est);
        }
        report.max_error = max_err;
        report.rate_per_dealer.assign(
            static_cast<std::size_t>(spec.D),
            achieved_rate(spec.t, spec.z, spec.blocks,
                          static_cast<std::size_t>(inst.bits_per_pair)));
        return report;
    }

    if (spec.scheme == Scheme::AppABinning) {
        const JointSource& src = *spec.source;
        BinningCode code(src, spec.params.n, spec.rates, spec.seed);
        const AccessStructure& acc = *spec.access;
        Prng root(seed);
        std::vector<std::uint64_t> fails(acc.authorized.size(), 0);
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
            Prng rng = root.child(trial);
            SampleBlock block = src.sample_block(spec.params.n, rng.next_u64());
            std::vector<std::vector<int>> y;
            for (int d = 0; d < src.num_dealers(); ++d)
                y.push_back(block.sequences[static_cast<std::size_t>(src.num_participants() + d)]);
            EncodedBlock enc = encode_app_a(code, y);
            for (std::size_t ai = 0; ai < acc.authorized.size(); ++ai) {
                DecodeResult dec = decode_app_a(code, enc.public_messages, acc.authorized[ai],
                                                block.sequences, spec.params.eps);
                bool ok = !dec.failed;
                if (ok)
                    for (int d = 0; d < src.num_dealers(); ++d)
                        if (code.secret_bin(d, dec.y[static_cast<std::size_t>(d)]) !=
                            enc.secret_indices[static_cast<std::size_t>(d)]) {
                            ok = false;
                            break;
                        }
                if (!ok) ++fails[ai];
            }
        }
        double max_err = 0.0;
        for (std::size_t ai = 0; ai < acc.authorized.size(); ++ai) {
            double est = static_cast<double>(fails[ai]) / trials;
            report.error_by_group.push_back(
                {acc.authorized[ai], est, wilson_upper_95(fails[ai], trials)});
            max_err = std::max(max_err, est);
        }
        report.max_error = max_err;
        for (const auto& r : spec.rates) report.rate_per_dealer.push_back(r.secret_rate);
        return report;
    }

    // nested reconciliation: Monte-Carlo reliability of successive decoding
    NestedContext ctx(spec);
    const int L = ctx.src.num_participants();
    Prng root(seed);
    std::uint64_t fails = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Prng rng = root.child(trial);
        SampleBlock block = ctx.src.sample_block(spec.params.n, rng.next_u64());
        std::vector<std::vector<int>> x(block.sequences.begin(), block.sequences.begin() + L);
        std::vector<std::vector<std::uint64_t>> msgs;
        for (int d = 0; d < ctx.src.num_dealers(); ++d)
            msgs.push_back(ctx.codes[static_cast<std::size_t>(d)].encode(
                block.sequences[static_cast<std::size_t>(L + d)]));
        DecodeResult dec = successive_decode(ctx.codes, msgs, x, spec.params.eps);
        bool ok = !dec.failed;
        for (int d = 0; d < ctx.src.num_dealers() && ok; ++d)
            ok = dec.y[static_cast<std::size_t>(d)] ==
                 block.sequences[static_cast<std::size_t>(L + d)];
        if (!ok) ++fails;
    }
    double est = static_cast<double>(fails) / trials;
    report.error_by_group.push_back({full_mask(L), est, wilson_upper_95(fails, trials)});
    report.max_error = est;
    return report;
}

}  // namespace secretshare
