#include "secretshare/hashing.hpp"

#include <string>

#include "secretshare/errors.hpp"
#include "secretshare/rng.hpp"

namespace secretshare {

ToeplitzHash::ToeplitzHash(int n_in, int r, BitString seed_bits)
    : n_in_(n_in), r_(r), seed_(std::move(seed_bits)) {
    if (n_in < 1) throw ValidationError("hash input width must be >= 1");
    if (r < 0) throw ValidationError("hash output width must be >= 0");
    std::size_t want = (r == 0) ? 0 : static_cast<std::size_t>(n_in + r - 1);
    if (seed_.size() != want)
        throw ValidationError("Toeplitz seed needs " + std::to_string(want) + " bits, got " +
                              std::to_string(seed_.size()));
    for (auto b : seed_)
        if (b > 1) throw ValidationError("seed bits must be 0 or 1");
}

ToeplitzHash ToeplitzHash::sample(int n_in, int r, std::uint64_t seed) {
    Prng rng(seed);
    std::size_t len = (r == 0) ? 0 : static_cast<std::size_t>(n_in + r - 1);
    BitString bits(len);
    for (auto& b : bits) b = rng.next_bit() ? 1 : 0;
    return ToeplitzHash(n_in, r, std::move(bits));
}

BitString ToeplitzHash::operator()(const BitString& x) const {
    if (static_cast<int>(x.size()) != n_in_)
        throw ValidationError("hash input has " + std::to_string(x.size()) + " bits, expected " +
                              std::to_string(n_in_));
    BitString out(static_cast<std::size_t>(r_), 0);
    for (int j = 0; j < n_in_; ++j) {
        if (!x[static_cast<std::size_t>(j)]) continue;
        for (int k = 0; k < r_; ++k)
            out[static_cast<std::size_t>(k)] ^= seed_[static_cast<std::size_t>(k - j + n_in_ - 1)];
    }
    return out;
}

std::uint64_t ToeplitzHash::apply_packed(const BitString& x) const {
    if (r_ > 64) throw ValidationError("packed output limited to 64 bits");
    BitString out = (*this)(x);
    std::uint64_t v = 0;
    for (auto b : out) v = (v << 1) | b;
    return v;
}

int bits_per_symbol(int alphabet_size) {
    if (alphabet_size < 1) throw ValidationError("alphabet size must be >= 1");
    int bits = 0;
    while ((1 << bits) < alphabet_size) ++bits;
    return bits;
}

BitString serialize_symbols(const std::vector<int>& symbols, int alphabet_size) {
    const int w = bits_per_symbol(alphabet_size);
    BitString out;
    out.reserve(symbols.size() * static_cast<std::size_t>(w));
    for (int s : symbols) {
        if (s < 0 || s >= alphabet_size) throw ValidationError("symbol out of range");
        for (int b = w - 1; b >= 0; --b) out.push_back((s >> b) & 1);
    }
    return out;
}

BitString privacy_amplify(const ToeplitzHash& hash, const std::vector<int>& symbols,
                          int alphabet_size) {
    return hash(serialize_symbols(symbols, alphabet_size));
}

std::string bits_to_hex(const BitString& bits) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    int nibble = 0;
    int have = 0;
    for (auto b : bits) {
        nibble = (nibble << 1) | b;
        if (++have == 4) {
            out += digits[nibble];
            nibble = 0;
            have = 0;
        }
    }
    if (have > 0) out += digits[nibble << (4 - have)];
    return out;
}

BitString hex_to_bits(const std::string& hex, std::size_t nbits) {
    BitString out;
    out.reserve(hex.size() * 4);
    for (char c : hex) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw ValidationError("invalid hex digit");
        for (int b = 3; b >= 0; --b) out.push_back((v >> b) & 1);
    }
    if (out.size() < nbits) throw ValidationError("hex string too short");
    out.resize(nbits);
    return out;
}

}  // namespace secretshare
