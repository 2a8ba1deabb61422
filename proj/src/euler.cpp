#include "symsq/euler.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace symsq {

namespace {

// Extended-precision twin of sym_prime_power_series: the local-factor algebra
// subtracts terms of size ~p^2 that must cancel to 1e-9, so the eigenvalue
// side needs more headroom than double gives.
std::vector<long double> h_series_ld(int j, double lambda, int mmax) {
    const long double theta = acosl(static_cast<long double>(lambda) / 2.0L);
    std::vector<std::complex<long double>> poly(static_cast<std::size_t>(j) + 2, 0.0L);
    poly[0] = 1.0L;
    std::size_t deg = 0;
    for (int t = 0; t <= j; ++t) {
        const std::complex<long double> root = std::polar(1.0L, theta * (j - 2 * t));
        for (std::size_t i = deg + 2; i-- > 1;) poly[i] -= root * poly[i - 1];
        ++deg;
    }
    std::vector<long double> e(static_cast<std::size_t>(j) + 2, 0.0L);
    for (std::size_t i = 0; i <= deg; ++i)
        e[i] = (i % 2 == 0) ? poly[i].real() : -poly[i].real();

    std::vector<long double> h(static_cast<std::size_t>(mmax) + 1, 0.0L);
    h[0] = 1.0L;
    for (int m = 1; m <= mmax; ++m) {
        long double acc = 0.0L;
        const int imax = std::min(m, j + 1);
        for (int i = 1; i <= imax; ++i) {
            const long double term = e[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(m - i)];
            acc += (i % 2) ? term : -term;
        }
        h[static_cast<std::size_t>(m)] = acc;
    }
    return h;
}

LocalFactor ones(std::uint64_t p, int K) {
    LocalFactor f{p, std::vector<long double>(static_cast<std::size_t>(K) + 1, 0.0L)};
    f.c[0] = 1.0L;
    return f;
}

// (1 - a X)^{-1}: coefficients a^k.
LocalFactor geometric(std::uint64_t p, long double a, int K) {
    LocalFactor f = ones(p, K);
    for (int k = 1; k <= K; ++k) f.c[static_cast<std::size_t>(k)] = f.c[static_cast<std::size_t>(k - 1)] * a;
    return f;
}

// Local factor of L(s - shift, sym^j) scaled per order by an extra character
// value: coefficients h_k * (charval * p^shift)^k.
LocalFactor sym_factor(int j, double lambda, std::uint64_t p, int shift, long double charval,
                       int K) {
    LocalFactor f = ones(p, K);
    if (charval == 0.0L) return f;  // twist by a vanishing character value kills the factor
    const std::vector<long double> h = h_series_ld(j, lambda, K);
    const long double scale = charval * powl(static_cast<long double>(p), shift);
    long double s = 1.0L;
    for (int k = 1; k <= K; ++k) {
        s *= scale;
        f.c[static_cast<std::size_t>(k)] = h[static_cast<std::size_t>(k)] * s;
    }
    return f;
}

long double chi_of(std::uint64_t p) { return p % 2 == 0 ? 0.0L : (p % 4 == 1 ? 1.0L : -1.0L); }

long double weight_r(std::uint64_t p, int k) {
    if (k == 0) return 1.0L;
    if (p == 2) return 3.0L;
    const long double pd = static_cast<long double>(p);
    return (powl(pd, k + 1) - 1.0L) / (pd - 1.0L);
}

long double weight_l(std::uint64_t p, int k) {
    const long double pd = static_cast<long double>(p);
    const int chi = p % 2 == 0 ? 0 : (p % 4 == 1 ? 1 : -1);
    long double s = 0.0L;
    int ci = 1;
    for (int i = 0; i <= k; ++i) {
        s += ci * powl(pd, 2 * (k - i));
        ci *= chi;
        if (ci == 0) break;
    }
    return s;
}

long double weight_v(std::uint64_t p, int k) {
    const long double pd = static_cast<long double>(p);
    const int chi = p % 2 == 0 ? 0 : (p % 4 == 1 ? 1 : -1);
    long double s = 0.0L;
    int ci = 1;
    for (int i = 0; i <= k; ++i) {
        s += ci * powl(pd, 2 * i);
        ci *= chi;
        if (ci == 0) break;
    }
    return s;
}

void check_i(int i) {
    if (i < 1 || i > 3) throw std::invalid_argument("local factor: i must be 1, 2 or 3");
}

}  // namespace

LocalFactor lf_mul(const LocalFactor& a, const LocalFactor& b) {
    if (a.p != b.p || a.c.size() != b.c.size())
        throw std::invalid_argument("lf_mul: mismatched local factors");
    LocalFactor out{a.p, std::vector<long double>(a.c.size(), 0.0L)};
    const int K = a.K();
    for (int i = 0; i <= K; ++i)
        for (int j = 0; i + j <= K; ++j)
            out.c[static_cast<std::size_t>(i + j)] += a.c[static_cast<std::size_t>(i)] * b.c[static_cast<std::size_t>(j)];
    return out;
}

LocalFactor lf_div(const LocalFactor& a, const LocalFactor& b) {
    if (a.p != b.p || a.c.size() != b.c.size())
        throw std::invalid_argument("lf_div: mismatched local factors");
    if (b.c[0] == 0.0L) throw std::domain_error("lf_div: divisor has non-unit constant term");
    LocalFactor q{a.p, std::vector<long double>(a.c.size(), 0.0L)};
    const int K = a.K();
    for (int k = 0; k <= K; ++k) {
        long double acc = a.c[static_cast<std::size_t>(k)];
        for (int i = 1; i <= k; ++i)
            acc -= b.c[static_cast<std::size_t>(i)] * q.c[static_cast<std::size_t>(k - i)];
        q.c[static_cast<std::size_t>(k)] = acc / b.c[0];
    }
    return q;
}

LocalFactor local_F(int i, const Eigenform& f, int j, std::uint64_t p, int K) {
    check_i(i);
    if (K > kMMax) throw std::invalid_argument("local_F: K exceeds M_MAX");
    const double lambda = satake(f, p).lambda;
    const std::vector<long double> h = h_series_ld(j, lambda, K);
    LocalFactor out = ones(p, K);
    for (int k = 1; k <= K; ++k) {
        const long double lam = h[static_cast<std::size_t>(k)];
        const long double w = (i == 1) ? weight_r(p, k) : (i == 2) ? weight_l(p, k) : weight_v(p, k);
        out.c[static_cast<std::size_t>(k)] = lam * lam * w;
    }
    return out;
}

LocalFactor local_G(int i, const Eigenform& f, int j, std::uint64_t p, int K) {
    check_i(i);
    if (K > kMMax) throw std::invalid_argument("local_G: K exceeds M_MAX");
    const double lambda = satake(f, p).lambda;
    const long double pd = static_cast<long double>(p);
    const long double chi = chi_of(p);
    const long double chi0t = (p == 2) ? 3.0L : 1.0L;

    LocalFactor g = ones(p, K);
    if (i == 1) {
        g = lf_mul(g, geometric(p, 1.0L, K));         // zeta(s)
        g = lf_mul(g, geometric(p, chi0t * pd, K));   // L(s-1, chi0tilde), degree one
        for (int n = 1; n <= j; ++n) {
            g = lf_mul(g, sym_factor(2 * n, lambda, p, 0, 1.0L, K));  // L(s, sym^{2n})
            // L(s-1, sym^{2n} x chi0tilde): untwisted at odd p, degree-one
            // completely-multiplicative reading at p = 2.
            if (p == 2) {
                const long double lam2n = h_series_ld(2 * n, lambda, 1)[1];
                g = lf_mul(g, geometric(p, 3.0L * lam2n * pd, K));
            } else {
                g = lf_mul(g, sym_factor(2 * n, lambda, p, 1, 1.0L, K));
            }
        }
    } else if (i == 2) {
        g = lf_mul(g, geometric(p, pd * pd, K));  // zeta(s-2)
        g = lf_mul(g, geometric(p, chi, K));      // L(s, chi)
        for (int n = 1; n <= j; ++n) {
            g = lf_mul(g, sym_factor(2 * n, lambda, p, 2, 1.0L, K));  // L(s-2, sym^{2n})
            g = lf_mul(g, sym_factor(2 * n, lambda, p, 0, chi, K));   // L(s, sym^{2n} x chi)
        }
    } else {
        g = lf_mul(g, geometric(p, 1.0L, K));           // zeta(s)
        g = lf_mul(g, geometric(p, chi * pd * pd, K));  // L(s-2, chi)
        for (int n = 1; n <= j; ++n) {
            g = lf_mul(g, sym_factor(2 * n, lambda, p, 0, 1.0L, K));  // L(s, sym^{2n})
            g = lf_mul(g, sym_factor(2 * n, lambda, p, 2, chi, K));   // L(s-2, sym^{2n} x chi)
        }
    }
    return g;
}

LocalFactor local_H(int i, const Eigenform& f, int j, std::uint64_t p, int K) {
    return lf_div(local_F(i, f, j, p, K), local_G(i, f, j, p, K));
}

Lemma26Report lemma26_audit(int i, const Eigenform& f, int K) {
    if (K > kMMax) throw std::invalid_argument("lemma26_audit: K exceeds M_MAX");
    const double lambda = satake(f, 2).lambda;
    const long double lam = (i == 0) ? 1.0L : h_series_ld(i, lambda, 1)[1];

    Lemma26Report rep;
    rep.i = i;

    // Degree-one identity in Y: (1-3lY)^{-1} = (1-3lY)^{-1} (1-lY)^2 (1-lY)^{-2}.
    LocalFactor lhs = geometric(2, 3.0L * lam, K);
    LocalFactor sqfac = lf_mul(geometric(2, lam, K), geometric(2, lam, K));  // (1-lY)^{-2}
    LocalFactor lin = ones(2, K);
    lin.c[1] = -lam;
    LocalFactor rhs = lf_mul(lf_mul(lhs, lf_mul(lin, lin)), sqfac);
    rep.identity_ok = true;
    for (int k = 0; k <= K; ++k)
        if (fabsl(lhs.c[static_cast<std::size_t>(k)] - rhs.c[static_cast<std::size_t>(k)]) >
            1e-9L * (1.0L + fabsl(lhs.c[static_cast<std::size_t>(k)])))
            rep.identity_ok = false;

    // Completely-multiplicative reading vs the true degree-(i+1) twisted factor.
    rep.cm_reading.assign(static_cast<std::size_t>(K) + 1, 0.0);
    rep.true_reading.assign(static_cast<std::size_t>(K) + 1, 0.0);
    const std::vector<long double> h = h_series_ld(i, lambda, K);
    long double cm = 1.0L, three_k = 1.0L;
    for (int k = 0; k <= K; ++k) {
        rep.cm_reading[static_cast<std::size_t>(k)] = static_cast<double>(cm);
        rep.true_reading[static_cast<std::size_t>(k)] =
            static_cast<double>(three_k * h[static_cast<std::size_t>(k)]);
        cm *= 3.0L * lam;
        three_k *= 3.0L;
    }
    rep.max_divergence = 0.0;
    rep.first_divergent_order = -1;
    for (int k = 0; k <= K; ++k) {
        const double d = std::abs(rep.cm_reading[static_cast<std::size_t>(k)] -
                                  rep.true_reading[static_cast<std::size_t>(k)]);
        if (d > rep.max_divergence) rep.max_divergence = d;
        if (rep.first_divergent_order < 0 && d > 1e-9) rep.first_divergent_order = k;
    }
    return rep;
}

ResidueConstant residue_constant(SumKind which, const Eigenform& f, int j, std::uint64_t P, int K) {
    if (P < 1000) throw std::invalid_argument("residue_constant: P must be >= 10^3");
    if (K < 2 || K > kMMax) throw std::invalid_argument("residue_constant: K out of range");
    if (P > f.trunc()) throw std::invalid_argument("residue_constant: P exceeds eigenform truncation");

    const std::vector<std::uint32_t> spf = smallest_prime_factor_sieve(P);

    // Dyadic checkpoints P/8, P/4, P/2 for the prime-tail extrapolation.
    const std::uint64_t cp2 = P / 4, cp3 = P / 2;
    double log_at_cp2 = 0.0, log_at_cp3 = 0.0;

    double log_prod = 0.0;
    double ktail = 0.0;
    for (std::uint64_t p = 2; p <= P; ++p) {
        if (spf[p] != p) continue;
        const SatakePoint sp = satake(f, p);
        const std::vector<double> h = sym_prime_power_series(j, sp, K);
        const double pd = static_cast<double>(p);
        const double pinv = 1.0 / pd;
        const double pinv2 = pinv * pinv;
        // local value with the shifted-zeta pole factor stripped; the weight
        // and the p^{-k s0} power are folded together in scaled form so that
        // neither side overflows:
        //   r(p^k) p^{-2k} = p^{-k} (1 - p^{-(k+1)}) / (1 - 1/p)   (odd p)
        //   l(p^k) p^{-3k} = p^{-k} sum_i (chi(p) p^{-2})^i        (odd p)
        // and 3*4^{-k} resp. 2^{-k} at p = 2.
        double val = 0.0, last = 0.0;
        double pk = 1.0;  // p^{-k}
        for (int k = 0; k <= K; ++k) {
            const double lam = h[static_cast<std::size_t>(k)];
            double wps;
            if (k == 0) {
                wps = 1.0;
            } else if (which == SumKind::FourSquares) {
                wps = (p == 2) ? 3.0 * pk * pk : pk * (1.0 - pk * pinv) / (1.0 - pinv);
            } else {
                if (p == 2) {
                    wps = pk;
                } else {
                    const double q = (p % 4 == 1) ? pinv2 : -pinv2;
                    wps = pk * (1.0 - std::pow(q, k + 1)) / (1.0 - q);
                }
            }
            last = lam * lam * wps;
            val += last;
            pk *= pinv;
        }
        const double strip = 1.0 - 1.0 / pd;  // (1 - p^{1-2}) resp. (1 - p^{2-3})
        val *= strip;
        if (val <= 0.0)
            throw std::runtime_error("residue_constant: non-positive local value at p=" +
                                     std::to_string(p));
        log_prod += std::log(val);
        ktail += std::abs(last) * strip;
        if (p <= cp2) log_at_cp2 = log_prod;
        if (p <= cp3) log_at_cp3 = log_prod;
    }

    const double prefactor = (which == SumKind::FourSquares) ? 4.0 : 16.0 / 3.0;
    ResidueConstant out;
    out.which = which;
    out.prime_cutoff = P;
    out.K = K;
    out.value = prefactor * std::exp(log_prod);

    // Geometric extrapolation of the dyadic log-increments.
    const double d2 = log_at_cp3 - log_at_cp2;
    const double d3 = log_prod - log_at_cp3;
    double tail_log = std::abs(d3);
    if (std::abs(d2) > 1e-300) {
        const double rho = std::abs(d3) / std::abs(d2);
        if (rho > 0.0 && rho < 1.0) tail_log = std::abs(d3) * rho / (1.0 - rho);
    }
    out.tail_estimate = std::abs(out.value) * tail_log + std::abs(out.value) * ktail;
    out.reliable = out.value > 0.0 && out.tail_estimate <= 0.5 * std::abs(out.value);
    return out;
}

}  // namespace symsq
