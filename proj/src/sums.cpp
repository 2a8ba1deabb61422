#include "symsq/sums.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "symsq/parallel.hpp"

namespace symsq {

namespace {

constexpr std::uint64_t kSumBlock = 1u << 16;

// Independent chi-twisted divisor sieves used as the second summation route.
// sig4[n] = sum of divisors d of n with 4 not dividing d;
// lsv[n], vsv[n] = the two chi-weighted square-divisor sums.
std::vector<std::int64_t> sigma_no4_sieve(std::uint64_t N) {
    std::vector<std::int64_t> s(N + 1, 0);
    for (std::uint64_t d = 1; d <= N; ++d) {
        if (d % 4 == 0) continue;
        for (std::uint64_t m = d; m <= N; m += d) s[m] += static_cast<std::int64_t>(d);
    }
    return s;
}

void chi_square_sieves(std::uint64_t N, std::vector<std::int64_t>& lsv,
                       std::vector<std::int64_t>& vsv) {
    lsv.assign(N + 1, 0);
    vsv.assign(N + 1, 0);
    for (std::uint64_t d = 1; d <= N; d += 2) {
        const std::int64_t c = (d % 4 == 1) ? 1 : -1;
        const std::int64_t d2 = c * static_cast<std::int64_t>(d) * static_cast<std::int64_t>(d);
        std::uint64_t q = 1;
        for (std::uint64_t m = d; m <= N; m += d, ++q) {
            lsv[m] += c * static_cast<std::int64_t>(q) * static_cast<std::int64_t>(q);
            vsv[m] += d2;
        }
    }
}

struct RoutePair {
    KahanAccumulator a, b;
};

// Sums lam(n)^2 * wa(n) and lam(n)^2 * wb(n) over each grid segment with
// fixed-size blocks merged in ascending order; identical output for any
// thread count.
SumReport summed_report(const Eigenform& f, int j, int d, std::uint64_t x_max,
                        const std::vector<std::uint64_t>& grid, int threads,
                        const MultiplicativeTable& lam,
                        const std::vector<double>& wa, const std::vector<double>& wb) {
    SumReport rep;
    rep.weight = f.weight;
    rep.j = j;
    rep.d = d;
    rep.grid = grid;

    KahanAccumulator totA, totB;
    std::uint64_t lo = 1;
    for (const std::uint64_t x : grid) {
        if (x < lo - 1 || x > x_max)
            throw std::invalid_argument("partial sum: grid must ascend and stay within x_max");
        const std::uint64_t hi = x;
        if (hi >= lo) {
            const std::size_t nblocks =
                static_cast<std::size_t>((hi - lo + kSumBlock) / kSumBlock);
            std::vector<RoutePair> part(nblocks);
            run_blocks(nblocks, threads, [&](std::size_t b) {
                const std::uint64_t s = lo + b * kSumBlock;
                const std::uint64_t e = std::min(hi, s + kSumBlock - 1);
                RoutePair& pp = part[b];
                for (std::uint64_t n = s; n <= e; ++n) {
                    const double l2 = lam.values[n] * lam.values[n];
                    pp.a.add(l2 * wa[n]);
                    pp.b.add(l2 * wb[n]);
                }
            });
            for (const RoutePair& pp : part) {
                totA.add(pp.a.sum);
                totA.add(pp.a.comp);
                totB.add(pp.b.sum);
                totB.add(pp.b.comp);
            }
        }
        lo = hi + 1;

        const double sa = totA.sum, sb = totB.sum;
        const double scale = std::max({std::abs(sa), std::abs(sb), 1.0});
        if (std::abs(sa - sb) > 1e-9 * scale)
            throw std::runtime_error("partial sum: summation routes disagree at x=" +
                                     std::to_string(x) + " (" + std::to_string(sa) + " vs " +
                                     std::to_string(sb) + ")");
        rep.S.push_back(sa);
        rep.normalized.push_back(sa / std::pow(static_cast<double>(x), d));
    }
    return rep;
}

}  // namespace

std::vector<std::uint64_t> dyadic_grid(std::uint64_t x_max) {
    std::vector<std::uint64_t> g;
    for (std::uint64_t x = 1024; x < x_max; x *= 2) g.push_back(x);
    g.push_back(x_max);
    return g;
}

std::vector<std::uint64_t> linear_grid(std::uint64_t step, std::uint64_t x_max) {
    if (step == 0) throw std::invalid_argument("linear grid: step must be positive");
    std::vector<std::uint64_t> g;
    for (std::uint64_t x = step; x < x_max; x += step) g.push_back(x);
    g.push_back(x_max);
    return g;
}

SumReport partial_sum_U(const Eigenform& f, int j, std::uint64_t x_max,
                        const std::vector<std::uint64_t>& grid, int threads) {
    const MultiplicativeTable lam = sym_table(f, j, x_max, threads);
    const LatticeCountTable lat = rk_sieve(x_max, threads);
    std::vector<double> wa(x_max + 1, 0.0), wb(x_max + 1, 0.0);
    {
        const std::vector<std::int64_t> sig = sigma_no4_sieve(x_max);
        for (std::uint64_t n = 1; n <= x_max; ++n) {
            wa[n] = static_cast<double>(lat.r4(n));
            wb[n] = 8.0 * static_cast<double>(sig[n]);
        }
    }
    return summed_report(f, j, 2, x_max, grid, threads, lam, wa, wb);
}

SumReport partial_sum_V(const Eigenform& f, int j, std::uint64_t x_max,
                        const std::vector<std::uint64_t>& grid, int threads) {
    const MultiplicativeTable lam = sym_table(f, j, x_max, threads);
    const LatticeCountTable lat = rk_sieve(x_max, threads);
    std::vector<double> wa(x_max + 1, 0.0), wb(x_max + 1, 0.0);
    {
        std::vector<std::int64_t> lsv, vsv;
        chi_square_sieves(x_max, lsv, vsv);
        for (std::uint64_t n = 1; n <= x_max; ++n) {
            wa[n] = static_cast<double>(lat.r6(n));
            wb[n] = static_cast<double>(16 * lsv[n] - 4 * vsv[n]);
        }
    }
    return summed_report(f, j, 3, x_max, grid, threads, lam, wa, wb);
}

void fit_constant(SumReport& rep) {
    const std::size_t n = rep.grid.size();
    if (n < 4) throw std::invalid_argument("fit_constant: need at least 4 grid points");
    if (static_cast<double>(rep.grid.back()) < 100.0 * static_cast<double>(rep.grid.front()))
        throw std::invalid_argument("fit_constant: grid must span at least two decades");

    rep.fitted_constant = rep.normalized.back();

    // Least squares for normalized = C + a x^{-b} over the top half, b on a grid.
    const std::size_t lo = n / 2;
    const std::size_t m = n - lo;
    double ymin = rep.normalized[lo], ymax = rep.normalized[lo];
    for (std::size_t i = lo; i < n; ++i) {
        ymin = std::min(ymin, rep.normalized[i]);
        ymax = std::max(ymax, rep.normalized[i]);
    }
    if (ymax - ymin <= 1e-12 * std::max(1.0, std::abs(ymax))) {
        rep.fit_degenerate = true;
        rep.fit_C = rep.fitted_constant;
        rep.fit_a = 0.0;
        rep.fit_b = 0.0;
    } else {
        double best_sse = -1.0, bestC = rep.fitted_constant, bestA = 0.0, bestB = 0.0;
        for (int bi = 1; bi <= 99; ++bi) {
            const double b = 0.01 * bi;
            double su = 0, suu = 0, sy = 0, suy = 0;
            for (std::size_t i = lo; i < n; ++i) {
                const double u = std::pow(static_cast<double>(rep.grid[i]), -b);
                const double y = rep.normalized[i];
                su += u;
                suu += u * u;
                sy += y;
                suy += u * y;
            }
            const double det = static_cast<double>(m) * suu - su * su;
            if (std::abs(det) < 1e-300) continue;
            const double a = (static_cast<double>(m) * suy - su * sy) / det;
            const double C = (sy - a * su) / static_cast<double>(m);
            double sse = 0;
            for (std::size_t i = lo; i < n; ++i) {
                const double u = std::pow(static_cast<double>(rep.grid[i]), -b);
                const double e = rep.normalized[i] - C - a * u;
                sse += e * e;
            }
            if (best_sse < 0 || sse < best_sse) {
                best_sse = sse;
                bestC = C;
                bestA = a;
                bestB = b;
            }
        }
        rep.fit_degenerate = best_sse < 0;
        rep.fit_C = rep.fit_degenerate ? rep.fitted_constant : bestC;
        rep.fit_a = bestA;
        rep.fit_b = bestB;
    }
    rep.fit_gap = std::abs(rep.fit_C - rep.fitted_constant);

    rep.drift.clear();
    const double ref = rep.fitted_constant;
    for (const double y : rep.normalized)
        rep.drift.push_back(ref != 0.0 ? std::abs(y - ref) / std::abs(ref) : std::abs(y));
}

AsymptoticReport asymptotic_report(const SumReport& rep, double theta) {
    AsymptoticReport out;
    out.theta = theta;
    const double C = rep.fit_degenerate ? rep.fitted_constant : rep.fit_C;

    std::vector<double> lx, le;
    const double x_hi = static_cast<double>(rep.grid.back());
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        const double x = static_cast<double>(rep.grid[i]);
        const double err = std::abs(rep.S[i] - C * std::pow(x, rep.d));
        out.proxy.push_back(err / std::pow(x, rep.d - theta));
        if (x >= x_hi / 10.0 && err > 0.0) {
            lx.push_back(std::log(x));
            le.push_back(std::log(err));
        }
    }
    if (lx.size() >= 2) {
        double sx = 0, sxx = 0, sy = 0, sxy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sxx += lx[i] * lx[i];
            sy += le[i];
            sxy += lx[i] * le[i];
        }
        const double nd = static_cast<double>(lx.size());
        out.error_slope = (nd * sxy - sx * sy) / (nd * sxx - sx * sx);
    }
    return out;
}

void write_csv(const SumReport& rep, std::ostream& os) {
    os << "x,S,normalized,drift\n";
    char buf[128];
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        const double drift = i < rep.drift.size() ? rep.drift[i] : 0.0;
        std::snprintf(buf, sizeof buf, "%llu,%.12g,%.12g,%.12g\n",
                      static_cast<unsigned long long>(rep.grid[i]), rep.S[i], rep.normalized[i],
                      drift);
        os << buf;
    }
}

}  // namespace symsq
