#include "secretshare/ramp.hpp"

#include <algorithm>
#include <string>

#include "secretshare/errors.hpp"
#include "secretshare/rng.hpp"

namespace secretshare {

PairwiseKeys::PairwiseKeys(int L, int D, std::size_t bits_per_pair, std::uint64_t seed)
    : L_(L), D_(D), bits_(bits_per_pair), seed_(seed) {
    if (L < 1 || D < 1) throw ValidationError("pairwise keys need L >= 1, D >= 1");
    keys_.resize(static_cast<std::size_t>(L) * D);
    used_.assign(keys_.size(), 0);
    Prng root(seed);
    for (int l = 0; l < L; ++l) {
        for (int d = 0; d < D; ++d) {
            Prng stream = root.child(static_cast<std::uint64_t>(l) * 0x10000u + d);
            auto& bits = keys_[static_cast<std::size_t>(l) * D + d];
            bits.resize(bits_per_pair);
            for (auto& b : bits) b = stream.next_bit() ? 1 : 0;
        }
    }
}

const std::vector<std::uint8_t>& PairwiseKeys::key_bits(int l, int d) const {
    if (l < 0 || l >= L_ || d < 0 || d >= D_) throw ValidationError("key index out of range");
    return keys_[static_cast<std::size_t>(l) * D_ + d];
}

std::size_t PairwiseKeys::used(int l, int d) const {
    if (l < 0 || l >= L_ || d < 0 || d >= D_) throw ValidationError("key index out of range");
    return used_[static_cast<std::size_t>(l) * D_ + d];
}

std::size_t PairwiseKeys::consume(int l, int d, std::size_t count) {
    if (l < 0 || l >= L_ || d < 0 || d >= D_) throw ValidationError("key index out of range");
    std::size_t& u = used_[static_cast<std::size_t>(l) * D_ + d];
    if (u + count > bits_)
        throw ValidationError("key exhausted for pair (" + std::to_string(l + 1) + "," +
                              std::to_string(d + 1) + "): need " + std::to_string(count) +
                              " more bits, " + std::to_string(bits_ - u) + " left");
    std::size_t offset = u;
    u += count;
    return offset;
}

RampShareSet ramp_share(const std::vector<std::uint32_t>& secret, int t, int z, int L,
                        const FieldSpec& field, std::uint64_t seed) {
    if (!(1 <= z && z < t && t <= L)) throw ValidationError("ramp needs 1 <= z < t <= L");
    if (static_cast<std::uint32_t>(L) >= field.order())
        throw ValidationError("field GF(2^" + std::to_string(field.degree()) +
                              ") too small for " + std::to_string(L) + " distinct points");
    const int k = t - z;
    if (secret.empty() || secret.size() % static_cast<std::size_t>(k) != 0)
        throw ValidationError("secret length must be a positive multiple of t - z");
    for (std::uint32_t s : secret)
        if (s >= field.order()) throw ValidationError("secret element outside the field");

    const int blocks = static_cast<int>(secret.size()) / k;
    RampShareSet out;
    out.L = L;
    out.t = t;
    out.z = z;
    out.field_degree = field.degree();
    for (int l = 0; l < L; ++l) out.points.push_back(static_cast<std::uint32_t>(l + 1));
    out.shares.assign(L, std::vector<std::uint32_t>(blocks));

    Prng rng(seed);
    for (int blk = 0; blk < blocks; ++blk) {
        // p(x) = s_1 + s_2 x + ... + s_k x^(k-1) + r_1 x^k + ... + r_z x^(t-1)
        std::vector<std::uint32_t> coeff(t);
        for (int i = 0; i < k; ++i) coeff[i] = secret[static_cast<std::size_t>(blk) * k + i];
        for (int i = k; i < t; ++i)
            coeff[i] = static_cast<std::uint32_t>(rng.next_below(field.order()));
        for (int l = 0; l < L; ++l) {
            std::uint32_t x = out.points[l];
            std::uint32_t acc = 0;
            for (int i = t - 1; i >= 0; --i) acc = field.add(field.mul(acc, x), coeff[i]);
            out.shares[l][static_cast<std::size_t>(blk)] = acc;
        }
    }
    return out;
}

std::vector<std::uint32_t> ramp_reconstruct(const std::vector<std::uint32_t>& points,
                                            const std::vector<std::vector<std::uint32_t>>& shares,
                                            int t, int z, const FieldSpec& field) {
    if (!(1 <= z && z < t)) throw ValidationError("ramp needs 1 <= z < t");
    if (points.size() != shares.size()) throw ValidationError("points/shares length mismatch");
    if (static_cast<int>(points.size()) < t)
        throw ValidationError("reconstruction needs at least t = " + std::to_string(t) +
                              " shares, got " + std::to_string(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j]) throw ValidationError("repeated evaluation point");

    const int k = t - z;
    const int blocks = static_cast<int>(shares.at(0).size());
    for (const auto& s : shares)
        if (static_cast<int>(s.size()) != blocks) throw ValidationError("ragged share sequences");

    // Coefficient-form Lagrange interpolation through the first t points:
    // accumulate share_j * prod_{i != j} (x - x_i) / (x_j - x_i).
    std::vector<std::vector<std::uint32_t>> basis(t);
    for (int j = 0; j < t; ++j) {
        std::vector<std::uint32_t> num(1, 1u);  // polynomial, num[i] = coeff of x^i
        std::uint32_t denom = 1u;
        for (int i = 0; i < t; ++i) {
            if (i == j) continue;
            // multiply num by (x + x_i) (same as x - x_i in characteristic 2)
            std::vector<std::uint32_t> next(num.size() + 1, 0u);
            for (std::size_t c = 0; c < num.size(); ++c) {
                next[c + 1] ^= num[c];
                next[c] ^= field.mul(num[c], points[i]);
            }
            num = std::move(next);
            denom = field.mul(denom, field.add(points[j], points[i]));
        }
        std::uint32_t inv = field.inverse(denom);
        for (auto& c : num) c = field.mul(c, inv);
        basis[j] = std::move(num);
    }

    std::vector<std::uint32_t> secret;
    secret.reserve(static_cast<std::size_t>(blocks) * k);
    for (int blk = 0; blk < blocks; ++blk) {
        std::vector<std::uint32_t> coeff(t, 0u);
        for (int j = 0; j < t; ++j) {
            std::uint32_t share = shares[j][static_cast<std::size_t>(blk)];
            for (int c = 0; c < t; ++c)
                coeff[c] = field.add(coeff[c], field.mul(share, basis[j][c]));
        }
        for (int i = 0; i < k; ++i) secret.push_back(coeff[i]);
    }
    return secret;
}

std::vector<std::uint8_t> serialize_field_elements(const std::vector<std::uint32_t>& elems,
                                                   int m) {
    std::vector<std::uint8_t> bits;
    bits.reserve(elems.size() * static_cast<std::size_t>(m));
    for (std::uint32_t e : elems)
        for (int b = m - 1; b >= 0; --b) bits.push_back((e >> b) & 1u);
    return bits;
}

std::vector<std::uint32_t> deserialize_field_elements(const std::vector<std::uint8_t>& bits,
                                                      int m) {
    if (bits.size() % static_cast<std::size_t>(m) != 0)
        throw ValidationError("bit string length not a multiple of the element width");
    std::vector<std::uint32_t> out(bits.size() / static_cast<std::size_t>(m), 0u);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (int b = 0; b < m; ++b)
            out[i] = (out[i] << 1) | bits[i * static_cast<std::size_t>(m) +
                                          static_cast<std::size_t>(b)];
    return out;
}

DealerBroadcast dealer_broadcast(PairwiseKeys& keys, int dealer, const RampShareSet& shares,
                                 const FieldSpec& field) {
    if (shares.L != keys.num_participants())
        throw ValidationError("share set and key registry disagree on participant count");
    DealerBroadcast out;
    out.dealer = dealer;
    out.ciphertexts.resize(shares.L);

    const std::size_t bits_needed =
        static_cast<std::size_t>(shares.blocks()) * static_cast<std::size_t>(field.degree());
    std::size_t offset = 0;
    for (int l = 0; l < shares.L; ++l) {
        std::size_t off = keys.consume(l, dealer, bits_needed);
        if (l == 0) offset = off;
        else if (off != offset)
            throw ValidationError("pairwise key streams for one broadcast must be aligned");
        auto bits = serialize_field_elements(shares.shares[l], field.degree());
        const auto& pad = keys.key_bits(l, dealer);
        for (std::size_t i = 0; i < bits.size(); ++i) bits[i] ^= pad[off + i];
        out.ciphertexts[l] = std::move(bits);
    }
    out.key_offset = offset;
    return out;
}

std::vector<std::uint32_t> participant_recover(const DealerBroadcast& broadcast,
                                               const PairwiseKeys& keys, SubsetMask group,
                                               int t, int z, const RampShareSet& share_layout,
                                               const FieldSpec& field) {
    auto members = subset_elements(group);
    if (static_cast<int>(members.size()) < t)
        throw ValidationError("recovery needs at least t = " + std::to_string(t) +
                              " participants, group has " + std::to_string(members.size()));

    std::vector<std::uint32_t> points;
    std::vector<std::vector<std::uint32_t>> shares;
    for (int l : members) {
        if (l < 0 || l >= share_layout.L) throw ValidationError("participant index out of range");
        auto bits = broadcast.ciphertexts.at(static_cast<std::size_t>(l));
        const auto& pad = keys.key_bits(l, broadcast.dealer);
        for (std::size_t i = 0; i < bits.size(); ++i) bits[i] ^= pad[broadcast.key_offset + i];
        points.push_back(share_layout.points[static_cast<std::size_t>(l)]);
        shares.push_back(deserialize_field_elements(bits, field.degree()));
    }
    return ramp_reconstruct(points, shares, t, z, field);
}

double achieved_rate(int t, int z, int blocks, std::size_t key_bits_used_per_pair) {
    if (blocks < 1 || key_bits_used_per_pair == 0)
        throw ValidationError("rate accounting needs blocks >= 1 and consumed key bits");
    if (key_bits_used_per_pair % static_cast<std::size_t>(blocks) != 0)
        throw ValidationError("consumed key bits must divide evenly across blocks");
    const std::size_t bits_per_block = key_bits_used_per_pair / static_cast<std::size_t>(blocks);
    const double secret_bits =
        static_cast<double>(t - z) * static_cast<double>(bits_per_block) * blocks;
    return secret_bits / static_cast<double>(key_bits_used_per_pair);
}

}  // namespace secretshare
