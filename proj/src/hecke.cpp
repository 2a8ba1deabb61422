#include "symsq/hecke.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <unordered_map>

#include "symsq/parallel.hpp"

namespace symsq {

double normalized_lambda(const Eigenform& f, std::uint64_t n) {
    if (n < 1 || n > f.trunc())
        throw std::out_of_range("normalized_lambda: n out of range");
    const double a = mpz_get_d(f.a(n).get_mpz_t());
    return a * std::pow(static_cast<double>(n), -(f.weight - 1) / 2.0);
}

SatakePoint satake_from_lambda(std::uint64_t p, double lambda) {
    constexpr double slack = 1e-12;
    if (std::abs(lambda) > 2.0 + slack)
        throw std::runtime_error("satake: |lambda_f(" + std::to_string(p) + ")| = " +
                                 std::to_string(std::abs(lambda)) +
                                 " exceeds the Deligne bound beyond rounding slack");
    const double clamped = std::clamp(lambda, -2.0, 2.0);
    return SatakePoint{p, clamped, std::acos(clamped / 2.0)};
}

SatakePoint satake(const Eigenform& f, std::uint64_t p) {
    return satake_from_lambda(p, normalized_lambda(f, p));
}

std::vector<double> sym_prime_power_series(int j, const SatakePoint& sp, int mmax) {
    if (j < 0 || j > kJMax) throw std::invalid_argument("sym_prime_power: j out of range");
    if (mmax < 0 || mmax > kMMax) throw std::invalid_argument("sym_prime_power: m out of range");

    // prod_{t=0..j} (1 - alpha^(j-2t) X) = sum_i (-1)^i e_i X^i
    std::vector<std::complex<double>> poly(static_cast<std::size_t>(j) + 2, 0.0);
    poly[0] = 1.0;
    std::size_t deg = 0;
    for (int t = 0; t <= j; ++t) {
        const std::complex<double> root = std::polar(1.0, sp.theta * (j - 2 * t));
        for (std::size_t i = deg + 2; i-- > 1;) poly[i] -= root * poly[i - 1];
        ++deg;
    }
    std::vector<double> e(static_cast<std::size_t>(j) + 2, 0.0);
    for (std::size_t i = 0; i <= deg; ++i) {
        if (std::abs(poly[i].imag()) >= 1e-9)
            throw std::runtime_error("sym_prime_power: conjugate pairing lost (residual imag " +
                                     std::to_string(poly[i].imag()) + ")");
        e[i] = (i % 2 == 0) ? poly[i].real() : -poly[i].real();  // e_i with signs folded out
    }

    std::vector<double> h(static_cast<std::size_t>(mmax) + 1, 0.0);
    h[0] = 1.0;
    for (int m = 1; m <= mmax; ++m) {
        double acc = 0.0;
        const int imax = std::min(m, j + 1);
        for (int i = 1; i <= imax; ++i) {
            const double term = e[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(m - i)];
            acc += (i % 2) ? term : -term;
        }
        h[static_cast<std::size_t>(m)] = acc;
    }
    return h;
}

double sym_prime_power(int j, const SatakePoint& sp, int m) {
    return sym_prime_power_series(j, sp, m)[static_cast<std::size_t>(m)];
}

namespace {

// U_m(cos theta) by the sine ratio away from the endpoints, stable recurrence
// near theta in {0, pi}.
double cheb_u(int m, double theta) {
    const double s = std::sin(theta);
    if (std::abs(s) > 1e-6) return std::sin((m + 1) * theta) / s;
    const double c = std::cos(theta);
    double um1 = 0.0, u = 1.0;
    for (int i = 0; i < m; ++i) {
        const double next = 2.0 * c * u - um1;
        um1 = u;
        u = next;
    }
    return u;
}

}  // namespace

double clebsch_check(const SatakePoint& sp, int j) {
    if (j < 0 || j > kJMax) throw std::invalid_argument("clebsch_check: j out of range");
    const double lhs = cheb_u(j, sp.theta) * cheb_u(j, sp.theta);
    double rhs = 0.0;
    for (int n = 0; n <= j; ++n) rhs += cheb_u(2 * n, sp.theta);
    return std::abs(lhs - rhs);
}

std::vector<std::uint32_t> smallest_prime_factor_sieve(std::uint64_t N) {
    std::vector<std::uint32_t> spf(N + 1, 0);
    for (std::uint64_t i = 2; i <= N; ++i) {
        if (spf[i] != 0) continue;
        for (std::uint64_t m = i; m <= N; m += i)
            if (spf[m] == 0) spf[m] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

MultiplicativeTable sym_table(const Eigenform& f, int j, std::uint64_t N, int threads,
                              std::size_t budget) {
    const std::size_t need = static_cast<std::size_t>(N + 1) * (sizeof(double) + sizeof(std::uint32_t));
    if (need > budget)
        throw std::length_error("sym_table: N=" + std::to_string(N) + " needs " + std::to_string(need) +
                                " bytes, over the budget of " + std::to_string(budget));
    if (N > f.trunc()) throw std::invalid_argument("sym_table: N exceeds eigenform truncation");

    MultiplicativeTable t;
    t.N = N;
    t.label = "lambda_sym^" + std::to_string(j) + " weight " + std::to_string(f.weight);
    t.spf = smallest_prime_factor_sieve(N);
    t.values.assign(N + 1, 0.0);
    t.values[1] = 1.0;

    // Prime powers first, sequentially: values[p^e] = lambda_{sym^j}(p^e).
    for (std::uint64_t p = 2; p <= N; ++p) {
        if (t.spf[p] != p) continue;
        int emax = 1;
        for (std::uint64_t q = p; q <= N / p; q *= p) ++emax;
        const SatakePoint sp = satake(f, p);
        const std::vector<double> h = sym_prime_power_series(j, sp, emax);
        std::uint64_t q = p;
        for (int e = 1; e <= emax; ++e) {
            t.values[q] = h[static_cast<std::size_t>(e)];
            if (e < emax) q *= p;
        }
    }

    // Composites pointwise from the prime-power entries; block-parallel with
    // disjoint writes, so the result is independent of the thread count.
    constexpr std::uint64_t kBlock = 1u << 16;
    const std::size_t nblocks = static_cast<std::size_t>((N + kBlock) / kBlock);
    run_blocks(nblocks, threads, [&](std::size_t b) {
        const std::uint64_t lo = std::max<std::uint64_t>(2, b * kBlock);
        const std::uint64_t hi = std::min<std::uint64_t>(N, (b + 1) * kBlock - 1);
        for (std::uint64_t n = lo; n <= hi; ++n) {
            std::uint64_t rest = n;
            const std::uint32_t p0 = t.spf[n];
            std::uint64_t pe = 1;
            while (rest % p0 == 0) {
                rest /= p0;
                pe *= p0;
            }
            if (rest == 1) continue;  // prime power, already set
            double v = t.values[pe];
            while (rest > 1) {
                const std::uint32_t p = t.spf[rest];
                std::uint64_t q = 1;
                while (rest % p == 0) {
                    rest /= p;
                    q *= p;
                }
                v *= t.values[q];
            }
            t.values[n] = v;
        }
    });
    return t;
}

}  // namespace symsq
