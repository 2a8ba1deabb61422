#pragma once

#include <cstdint>
#include <vector>

#include "symsq/hecke.hpp"

namespace symsq {

// One Euler factor at p: truncated power series in X = p^{-s} with real
// coefficients, c[0] = 1 for any factor of a normalized Dirichlet series.
// Extended precision throughout: coefficients reach ~p^2K and the interesting
// quantities (the low orders of H) live in the cancellation.
struct LocalFactor {
    std::uint64_t p = 0;
    std::vector<long double> c;  // c[0..K]

    int K() const { return static_cast<int>(c.size()) - 1; }
};

LocalFactor lf_mul(const LocalFactor& a, const LocalFactor& b);
// Power-series quotient a/b; b must have a unit constant term.
LocalFactor lf_div(const LocalFactor& a, const LocalFactor& b);

// F_{i,j} local factor: c_k = lambda_{sym^j}(p^k)^2 * w(p^k) with w = r, l, v
// for i = 1, 2, 3.
LocalFactor local_F(int i, const Eigenform& f, int j, std::uint64_t p, int K);

// The designated product of zeta, Dirichlet and symmetric-power local factors
// for the same i, expanded to order K.  Twists by the weight-3 character at
// p = 2 use the degree-one completely-multiplicative reading; the mod-4
// character kills the p = 2 factor outright.
LocalFactor local_G(int i, const Eigenform& f, int j, std::uint64_t p, int K);

// H = F / G.
LocalFactor local_H(int i, const Eigenform& f, int j, std::uint64_t p, int K);

// Audit of the degree-one twisting identity at p = 2, in Y = 2^{-(s-1)}:
// the completely-multiplicative expansion of the twisted factor versus the
// true degree-(i+1) twisted local factor.
struct Lemma26Report {
    int i;
    bool identity_ok;                    // the algebraic degree-one identity itself
    std::vector<double> cm_reading;      // (3 lambda(2))^k 2^k-free coefficients in Y
    std::vector<double> true_reading;    // 3^k lambda_{sym^i}(2^k)
    double max_divergence;
    int first_divergent_order;           // -1 when the readings agree to order K
};

Lemma26Report lemma26_audit(int i, const Eigenform& f, int K);

enum class SumKind { FourSquares, SixSquares };  // U (pole at s=2), V (pole at s=3)

struct ResidueConstant {
    double value = 0.0;
    std::uint64_t prime_cutoff = 0;
    int K = 0;
    double tail_estimate = 0.0;
    SumKind which = SumKind::FourSquares;
    bool reliable = true;
};

// Scaled residue of the generating Dirichlet series at its pole, computed as a
// pole-stripped Euler product over p <= P: each local factor is evaluated at
// the pole with its shifted-zeta factor removed.  The tail estimate combines a
// dyadic extrapolation of the prime tail with the truncation-order tail; it is
// heuristic and reported, never proven.
ResidueConstant residue_constant(SumKind which, const Eigenform& f, int j, std::uint64_t P,
                                 int K = 32);

}  // namespace symsq
