#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symsq/eigenform.hpp"

namespace symsq {

inline constexpr int kJMax = 64;
inline constexpr int kMMax = 64;

// Default memory budget for sieved tables (value + spf bytes per index).
inline constexpr std::size_t kDefaultTableBudget = 2'000'000'000;

// lambda_f(n) = a(n) / n^((kappa-1)/2); the integer a(n) is exact before the
// single conversion to double.
double normalized_lambda(const Eigenform& f, std::uint64_t n);

// Local Hecke data at p: lambda = 2 cos(theta), alpha = e^{i theta}.
struct SatakePoint {
    std::uint64_t p;
    double lambda;
    double theta;
};

// Values of |lambda| within 1e-12 of 2 are clamped (they come from rounding of
// exact integers); a larger excess signals upstream corruption and throws.
SatakePoint satake_from_lambda(std::uint64_t p, double lambda);
SatakePoint satake(const Eigenform& f, std::uint64_t p);

// lambda_{sym^j}(p^m): degree-m complete homogeneous symmetric function of the
// j+1 numbers alpha^(j-2t).  Computed from the elementary symmetric functions
// of that multiset via the Newton-style linear recurrence; the elementary
// functions come from expanding prod(1 - alpha^(j-2t) X) in complex arithmetic
// with the imaginary parts checked to cancel below 1e-9.
double sym_prime_power(int j, const SatakePoint& sp, int m);

// h_0..h_mmax of the recurrence above, in one pass.
std::vector<double> sym_prime_power_series(int j, const SatakePoint& sp, int mmax);

// |lambda_f(p^j)^2 - sum_{n=0..j} lambda_{sym^{2n}}(p)|, both sides evaluated
// through Chebyshev U_m(cos theta); pure diagnostic, small defect expected.
double clebsch_check(const SatakePoint& sp, int j);

std::vector<std::uint32_t> smallest_prime_factor_sieve(std::uint64_t N);

// A multiplicative function tabulated on 1..N from its prime-power values.
struct MultiplicativeTable {
    std::uint64_t N = 0;
    std::vector<double> values;        // index 1..N, values[0] unused
    std::vector<std::uint32_t> spf;    // smallest prime factor, index 2..N
    std::string label;

    double operator()(std::uint64_t n) const { return values[n]; }
};

// lambda_{sym^j f}(n) for n = 1..N.  Deterministic for any thread count:
// prime-power entries are filled sequentially, composites pointwise from their
// factorization in ascending prime order.
MultiplicativeTable sym_table(const Eigenform& f, int j, std::uint64_t N, int threads = 1,
                              std::size_t budget = kDefaultTableBudget);

}  // namespace symsq
