#pragma once

#include <cstdint>
#include <vector>

#include "symsq/hecke.hpp"

namespace symsq {

// Mod-4 character data used by the r4/r6 divisor formulas: chi is the
// nonprincipal character mod 4; the chi0tilde weight is the modified principal
// character with weight 3 at p = 2 and 1 at odd primes.
struct CharacterTable {
    static constexpr int modulus = 4;

    static int chi(std::uint64_t n) {
        if (n % 2 == 0) return 0;
        return (n % 4 == 1) ? 1 : -1;
    }
    static std::int64_t chi0tilde_weight(std::uint64_t p) { return p == 2 ? 3 : 1; }
};

// Exact count of integer k-tuples of squares summing to n (signs, zeros and
// order all counted).  Test oracle: recursive enumeration over the first
// coordinate with sign folding, memoized.  k in {4,6}, n <= 10^6.
std::int64_t rk_bruteforce(int k, std::uint64_t n);

// r4(n) = 8 * sum of divisors d of n with 4 not dividing d.
std::int64_t r4_formula(std::uint64_t n);

struct R6Parts {
    std::int64_t r6;
    std::int64_t l;  // sum chi(d) (n/d)^2
    std::int64_t v;  // sum chi(d) d^2
};

// r6(n) = 16 l(n) - 4 v(n) via the chi-twisted divisor sums.
R6Parts r6_formula(std::uint64_t n);

// Prime-power values of the multiplicative companions.
std::int64_t r_prime_power(std::uint64_t p, int e);
std::int64_t l_prime_power(std::uint64_t p, int e);
std::int64_t v_prime_power(std::uint64_t p, int e);

// Exact integer tables of r, l, v on 1..N with r4 = 8r and r6 = 16l - 4v.
struct LatticeCountTable {
    std::uint64_t N = 0;
    std::vector<std::int64_t> r, l, v;  // index 1..N
    std::vector<std::uint32_t> spf;

    std::int64_t r4(std::uint64_t n) const { return 8 * r[n]; }
    std::int64_t r6(std::uint64_t n) const { return 16 * l[n] - 4 * v[n]; }
};

LatticeCountTable rk_sieve(std::uint64_t N, int threads = 1,
                           std::size_t budget = kDefaultTableBudget);

}  // namespace symsq
