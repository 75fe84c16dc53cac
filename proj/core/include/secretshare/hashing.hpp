#ifndef SECRETSHARE_HASHING_HPP
#define SECRETSHARE_HASHING_HPP

#include <cstdint>
#include <vector>

namespace secretshare {

using BitString = std::vector<std::uint8_t>;  // one bit per entry, 0 or 1

/// Two-universal hash family: r x n_in Toeplitz matrix over GF(2), defined by
/// n_in + r - 1 seed bits (entry (k, j) is seed bit k - j + n_in - 1). Linear:
/// F(x ^ y) = F(x) ^ F(y); over a uniform seed any two distinct inputs
/// collide with probability exactly 2^-r.
class ToeplitzHash {
  public:
    ToeplitzHash(int n_in, int r, BitString seed_bits);

    /// Seed bits drawn from the project PRNG.
    static ToeplitzHash sample(int n_in, int r, std::uint64_t seed);

    int input_bits() const { return n_in_; }
    int output_bits() const { return r_; }
    const BitString& seed_bits() const { return seed_; }
    std::size_t family_size_log2() const { return seed_.size(); }

    BitString operator()(const BitString& x) const;

    /// Output packed into an integer (r <= 64), high bit first.
    std::uint64_t apply_packed(const BitString& x) const;

  private:
    int n_in_;
    int r_;
    BitString seed_;
};

/// Big-endian fixed-width serialization of a symbol sequence, one symbol per
/// ceil(log2(alphabet_size)) bits.
BitString serialize_symbols(const std::vector<int>& symbols, int alphabet_size);

int bits_per_symbol(int alphabet_size);

/// S_d = F_d(serialized y_d^{nB}); the same function reused by participants
/// on the reconciled sequence.
BitString privacy_amplify(const ToeplitzHash& hash, const std::vector<int>& symbols,
                          int alphabet_size);

std::string bits_to_hex(const BitString& bits);
BitString hex_to_bits(const std::string& hex, std::size_t nbits);

}  // namespace secretshare

#endif
