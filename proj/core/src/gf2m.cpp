#include "secretshare/gf2m.hpp"

#include <array>
#include <string>

namespace secretshare {

namespace {

int poly_degree(std::uint64_t p) {
    int d = -1;
    for (int i = 0; i < 64; ++i)
        if ((p >> i) & 1u) d = i;
    return d;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
    int dm = poly_degree(m);
    while (poly_degree(a) >= dm) a ^= m << (poly_degree(a) - dm);
    return a;
}

// x^m + ... lexicographically smallest irreducible per degree 1..16.
constexpr std::array<std::uint32_t, 17> kCanonicalPolys = {
    0,       0x3,    0x7,    0xb,    0x13,   0x25,   0x43,   0x83,  0x11b,
    0x203,   0x409,  0x805,  0x1009, 0x201b, 0x4021, 0x8003, 0x1002b,
};

}  // namespace

bool gf2_poly_irreducible(std::uint32_t poly) {
    int n = poly_degree(poly);
    if (n < 1) return false;
    for (int d = 1; d <= n / 2; ++d) {
        for (std::uint64_t g = (std::uint64_t{1} << d); g < (std::uint64_t{1} << (d + 1)); ++g) {
            if (poly_mod(poly, g) == 0) return false;
        }
    }
    return true;
}

std::uint32_t FieldSpec::canonical_polynomial(int m) {
    if (m < 1 || m > 16)
        throw ValidationError("field degree " + std::to_string(m) + " outside [1,16]");
    return kCanonicalPolys[static_cast<std::size_t>(m)];
}

FieldSpec::FieldSpec(int m) : m_(m), poly_(canonical_polynomial(m)) {}

std::uint32_t FieldSpec::mul(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t r = 0;
    while (b) {
        if (b & 1u) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & order()) a ^= poly_;
    }
    return r;
}

std::uint32_t FieldSpec::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e) {
        if (e & 1u) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint32_t FieldSpec::inverse(std::uint32_t a) const {
    if (a == 0) throw ValidationError("zero has no multiplicative inverse");
    // a^(2^m - 2) by Fermat.
    return pow(a, order() - 2u);
}

void FieldSpec::verify_tables() const {
    if (!gf2_poly_irreducible(poly_))
        throw SolverFailure("reduction polynomial for GF(2^" + std::to_string(m_) +
                            ") is reducible");
    for (std::uint32_t a = 1; a < order(); ++a) {
        if (mul(a, inverse(a)) != 1u)
            throw SolverFailure("inverse check failed for element " + std::to_string(a) +
                                " in GF(2^" + std::to_string(m_) + ")");
    }
}

}  // namespace secretshare
