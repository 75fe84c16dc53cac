#ifndef SECRETSHARE_GF2M_HPP
#define SECRETSHARE_GF2M_HPP

#include <cstdint>
#include <vector>

#include "secretshare/errors.hpp"

namespace secretshare {

/// Binary extension field GF(2^m), 1 <= m <= 16, with a fixed canonical
/// irreducible reduction polynomial per degree (lexicographically smallest,
/// e.g. x^4 + x + 1 for m = 4). Elements are polynomial bit vectors packed
/// into the low m bits of an integer.
class FieldSpec {
  public:
    explicit FieldSpec(int m);

    int degree() const { return m_; }
    std::uint32_t reduction_polynomial() const { return poly_; }
    std::uint32_t order() const { return std::uint32_t{1} << m_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inverse(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    /// Canonical reduction polynomial for degree m.
    static std::uint32_t canonical_polynomial(int m);

    /// Full multiplicative self-check: a * a^-1 == 1 for every nonzero a,
    /// and the reduction polynomial is irreducible. Throws on failure.
    void verify_tables() const;

  private:
    int m_;
    std::uint32_t poly_;
};

/// Trial-division irreducibility over GF(2)[x].
bool gf2_poly_irreducible(std::uint32_t poly);

}  // namespace secretshare

#endif
