#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coindex {

/// True iff the binary expansions of x and y share no 1-bit.  By Lucas'
/// theorem this is equivalent to the binomial coefficient C(x+y, x) being
/// odd (no carry is produced when adding x and y in base 2).
inline bool ones_disjoint(std::uint64_t x, std::uint64_t y)
{
    return (x & y) == 0;
}

/// Parity of the multinomial coefficient (p_1 + ... + p_k choose p_1, ..., p_k).
/// The coefficient is even iff some carry occurs when summing the parts in
/// base 2, i.e. iff some part shares a 1-bit with the sum of the parts before
/// it.  Overflow is impossible: once all prefixes are bit-disjoint the total
/// equals their OR, and a shared bit settles the answer immediately.
inline bool multinomial_is_even(std::span<const std::uint64_t> parts)
{
    std::uint64_t seen = 0;
    for (std::uint64_t p : parts) {
        if (!ones_disjoint(p, seen)) return true;
        seen |= p;
    }
    return false;
}

inline bool multinomial_is_even(std::initializer_list<std::uint64_t> parts)
{
    return multinomial_is_even(std::span<const std::uint64_t>(parts.begin(), parts.size()));
}

/// n = 2^(b + 4c) * (2a + 1) with 0 <= b < 4, and rho(n) = 2^b + 8c.
struct HRDecomposition {
    std::uint64_t a = 0;
    int b = 0;
    int c = 0;
    int rho = 1;
};

/// Hurwitz-Radon function rho(n) for n >= 1: the maximal number of
/// matrices in an orthogonal multiplication family on R^n.
inline HRDecomposition hurwitz_radon(std::uint64_t n)
{
    if (n == 0) throw std::invalid_argument("hurwitz_radon requires n >= 1");
    int twos = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++twos;
    }
    HRDecomposition d;
    d.a = (n - 1) / 2;
    d.b = twos % 4;
    d.c = twos / 4;
    d.rho = (1 << d.b) + 8 * d.c;
    return d;
}

}  // namespace coindex
