#ifndef SECRETSHARE_RNG_HPP
#define SECRETSHARE_RNG_HPP

#include <cstdint>
#include <random>

namespace secretshare {

/// splitmix64 step; also used as the seed-mixing / stream-splitting function.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Project-wide PRNG: a splitmix64-seeded mt19937_64. Splittable: child(tag)
/// derives an independent stream deterministically from (seed, tag), so
/// parallel trials can draw from disjoint streams and still be reproducible.
class Prng {
  public:
    explicit Prng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t s = seed;
        engine_.seed(splitmix64(s));
    }

    std::uint64_t seed() const { return seed_; }

    Prng child(std::uint64_t tag) const {
        std::uint64_t s = seed_;
        std::uint64_t mixed = splitmix64(s);
        s = mixed ^ (tag * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull);
        return Prng(splitmix64(s));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
        return dist(engine_);
    }

    bool next_bit() { return engine_() & 1u; }

    /// Uniform real in [0, 1).
    double next_real() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Stateless keyed PRF used for seeded random binnings: one 64-bit output per
/// (seed, domain tag, point). Reproducible, no table storage.
inline std::uint64_t keyed_prf(std::uint64_t seed, std::uint64_t tag, std::uint64_t point) {
    std::uint64_t s = seed ^ (tag * 0x9e3779b97f4a7c15ull);
    splitmix64(s);
    s ^= point * 0xda942042e4dd58b5ull;
    std::uint64_t v = splitmix64(s);
    return splitmix64(s) ^ (v << 1);
}

}  // namespace secretshare

#endif
