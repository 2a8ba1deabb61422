#pragma once

#include <filesystem>
#include <optional>

#include "symsq/integer_series.hpp"

namespace symsq {

// Weights of the one-dimensional level-1 cusp spaces.
inline constexpr int kSupportedWeights[] = {12, 16, 18, 20, 22, 26};

bool weight_supported(int weight);

// E4 = 1 + 240 sum sigma_3(n) q^n, E6 = 1 - 504 sum sigma_5(n) q^n, exact to q^N.
// k must be 4 or 6.
IntegerSeries eisenstein(int k, std::size_t N);

// Normalized Hecke eigenform of level 1: a(0) = 0, a(1) = 1, exact integer a(n).
struct Eigenform {
    int weight;
    IntegerSeries series;

    const mpz_class& a(std::size_t n) const { return series[n]; }
    std::size_t trunc() const { return series.trunc(); }
};

// (E4^3 - E6^2)/1728 with the division checked exact at every coefficient.
// Large truncations switch to an equivalent sparse eta-power route internally
// and are cross-checked against the Eisenstein construction on a prefix.
Eigenform delta_series(std::size_t N);

// Delta times the Eisenstein monomial of weight kappa-12.
Eigenform eigenform(int weight, std::size_t N);

// Coefficient cache: decimal text, one "n a(n)" line per coefficient, with a
// "# eigenform weight=<k> N=<N> version=1" header. Keyed by (weight, N).
std::filesystem::path cache_file(int weight, std::size_t N, const std::filesystem::path& dir);
void save_eigenform(const Eigenform& f, const std::filesystem::path& dir);
std::optional<Eigenform> load_eigenform(int weight, std::size_t N, const std::filesystem::path& dir);
Eigenform eigenform_cached(int weight, std::size_t N, const std::filesystem::path& dir);

}  // namespace symsq
