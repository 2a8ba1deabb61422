#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "symsq/euler.hpp"
#include "symsq/lattice.hpp"

namespace symsq {

struct SumReport {
    int weight = 0;
    int j = 0;
    int d = 0;  // 2 for the four-squares sum, 3 for six squares
    std::vector<std::uint64_t> grid;
    std::vector<double> S;
    std::vector<double> normalized;  // S(x) / x^d
    std::vector<double> drift;       // |normalized - fitted| / fitted, filled by fit_constant

    double fitted_constant = 0.0;  // tail estimate: normalized value at the largest x
    double fit_C = 0.0;            // least-squares C of normalized = C + a x^{-b}
    double fit_a = 0.0;
    double fit_b = 0.0;
    double fit_gap = 0.0;          // |fit_C - fitted_constant|
    bool fit_degenerate = false;
};

std::vector<std::uint64_t> dyadic_grid(std::uint64_t x_max);
std::vector<std::uint64_t> linear_grid(std::uint64_t step, std::uint64_t x_max);

// Partial sums of lambda_{sym^j}(n)^2 against the four/six-square counts on an
// ascending grid.  Each sum is computed twice -- from the multiplicative-table
// counts and from an independent chi-twisted divisor sieve -- and the two
// routes must agree to 1e-9 relative at every grid point; disagreement throws.
// Deterministic for any thread count (fixed blocks, ascending merge).
SumReport partial_sum_U(const Eigenform& f, int j, std::uint64_t x_max,
                        const std::vector<std::uint64_t>& grid, int threads = 1);
SumReport partial_sum_V(const Eigenform& f, int j, std::uint64_t x_max,
                        const std::vector<std::uint64_t>& grid, int threads = 1);

// Fills fitted_constant (tail value), the least-squares fit of
// normalized = C + a x^{-b} over the top half of the grid (b searched on a
// grid in (0,1)), and drift.  Requires >= 4 grid points spanning >= 2 decades.
void fit_constant(SumReport& rep);

struct AsymptoticReport {
    std::vector<double> proxy;     // |S - C x^d| / x^{d - theta}
    double error_slope = 0.0;      // log-log slope of |S - C x^d| over the top decade
    double theta = 0.0;
};

// Implied-constant proxy against an error exponent theta.  The underlying
// bound is an upper bound; the empirical slope may come out smaller.
AsymptoticReport asymptotic_report(const SumReport& rep, double theta);

// `x,S,normalized,drift` rows, 12 significant digits.
void write_csv(const SumReport& rep, std::ostream& os);

}  // namespace symsq
