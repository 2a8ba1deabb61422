#include "symsq/lattice.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "symsq/parallel.hpp"

namespace symsq {

namespace {

constexpr std::uint64_t kOracleLimit = 1'000'000;

// count[k][m] = number of k-tuples of squares summing to m, built k layer by
// layer from the one-dimensional counts (folded: a=0 once, a>0 twice).
class SquareCountCache {
public:
    std::int64_t get(int k, std::uint64_t n) {
        std::scoped_lock lock(mu_);
        if (n >= grown_to_) grow(n);
        return table_[static_cast<std::size_t>(k)][n];
    }

private:
    void grow(std::uint64_t n) {
        std::uint64_t cap = std::max<std::uint64_t>(grown_to_ * 2, n + 1);
        cap = std::max<std::uint64_t>(cap, 1024);
        for (auto& layer : table_) layer.assign(cap, 0);
        table_[0][0] = 1;
        for (int k = 1; k <= 6; ++k) {
            auto& cur = table_[static_cast<std::size_t>(k)];
            const auto& prev = table_[static_cast<std::size_t>(k - 1)];
            for (std::uint64_t m = 0; m < cap; ++m) {
                std::int64_t c = prev[m];  // first coordinate 0
                for (std::uint64_t a = 1; a * a <= m; ++a) c += 2 * prev[m - a * a];
                cur[m] = c;
            }
        }
        grown_to_ = cap;
    }

    std::mutex mu_;
    std::uint64_t grown_to_ = 0;
    std::vector<std::int64_t> table_[7];
};

SquareCountCache g_square_counts;

void check_overflow_add(std::int64_t& acc, std::int64_t term) {
    if (__builtin_add_overflow(acc, term, &acc))
        throw std::overflow_error("lattice: 64-bit overflow in divisor sum");
}

}  // namespace

std::int64_t rk_bruteforce(int k, std::uint64_t n) {
    if (k != 4 && k != 6) throw std::invalid_argument("rk_bruteforce: k must be 4 or 6");
    if (n > kOracleLimit)
        throw std::invalid_argument("rk_bruteforce: n beyond the 10^6 oracle scale");
    return g_square_counts.get(k, n);
}

std::int64_t r4_formula(std::uint64_t n) {
    std::int64_t s = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        const std::uint64_t e = n / d;
        if (d % 4 != 0) check_overflow_add(s, static_cast<std::int64_t>(d));
        if (e != d && e % 4 != 0) check_overflow_add(s, static_cast<std::int64_t>(e));
    }
    return 8 * s;
}

R6Parts r6_formula(std::uint64_t n) {
    std::int64_t l = 0, v = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        const std::uint64_t e = n / d;
        const auto add_pair = [&](std::uint64_t div, std::uint64_t cod) {
            const int c = CharacterTable::chi(div);
            if (c == 0) return;
            std::int64_t d2, c2;
            if (__builtin_mul_overflow(static_cast<std::int64_t>(div), static_cast<std::int64_t>(div), &d2) ||
                __builtin_mul_overflow(static_cast<std::int64_t>(cod), static_cast<std::int64_t>(cod), &c2))
                throw std::overflow_error("r6_formula: 64-bit overflow");
            check_overflow_add(v, c > 0 ? d2 : -d2);
            check_overflow_add(l, c > 0 ? c2 : -c2);
        };
        add_pair(d, e);
        if (e != d) add_pair(e, d);
    }
    std::int64_t r6 = 16 * l - 4 * v;
    return R6Parts{r6, l, v};
}

std::int64_t r_prime_power(std::uint64_t p, int e) {
    if (p == 2) return 3;
    std::int64_t s = 1, pe = 1;
    for (int i = 1; i <= e; ++i) {
        if (__builtin_mul_overflow(pe, static_cast<std::int64_t>(p), &pe))
            throw std::overflow_error("r_prime_power: overflow");
        check_overflow_add(s, pe);
    }
    return s;
}

std::int64_t l_prime_power(std::uint64_t p, int e) {
    // sum_{i=0..e} chi(p^i) p^(2(e-i))
    const int c = CharacterTable::chi(p);
    std::int64_t p2;
    if (__builtin_mul_overflow(static_cast<std::int64_t>(p), static_cast<std::int64_t>(p), &p2))
        throw std::overflow_error("l_prime_power: overflow");
    std::int64_t s = 0, ci = 1;
    for (int i = 0; i <= e; ++i) {
        std::int64_t term = ci;
        for (int t = 0; t < e - i; ++t)
            if (__builtin_mul_overflow(term, p2, &term))
                throw std::overflow_error("l_prime_power: overflow");
        check_overflow_add(s, term);
        ci *= c;
        if (ci == 0) break;  // chi(p) = 0 kills every i >= 1
    }
    return s;
}

std::int64_t v_prime_power(std::uint64_t p, int e) {
    const int c = CharacterTable::chi(p);
    std::int64_t p2;
    if (__builtin_mul_overflow(static_cast<std::int64_t>(p), static_cast<std::int64_t>(p), &p2))
        throw std::overflow_error("v_prime_power: overflow");
    std::int64_t s = 0, pw = 1, ci = 1;
    for (int i = 0; i <= e; ++i) {
        check_overflow_add(s, ci * pw);
        if (i < e) {
            if (__builtin_mul_overflow(pw, p2, &pw))
                throw std::overflow_error("v_prime_power: overflow");
            ci *= c;
            if (ci == 0) return s;
        }
    }
    return s;
}

LatticeCountTable rk_sieve(std::uint64_t N, int threads, std::size_t budget) {
    const std::size_t need = static_cast<std::size_t>(N + 1) * (3 * sizeof(std::int64_t) + sizeof(std::uint32_t));
    if (need > budget)
        throw std::length_error("rk_sieve: N=" + std::to_string(N) + " needs " + std::to_string(need) +
                                " bytes, over the budget of " + std::to_string(budget));

    LatticeCountTable t;
    t.N = N;
    t.spf = smallest_prime_factor_sieve(N);
    t.r.assign(N + 1, 0);
    t.l.assign(N + 1, 0);
    t.v.assign(N + 1, 0);
    t.r[1] = t.l[1] = t.v[1] = 1;

    for (std::uint64_t p = 2; p <= N; ++p) {
        if (t.spf[p] != p) continue;
        std::uint64_t q = p;
        for (int e = 1;; ++e) {
            t.r[q] = r_prime_power(p, e);
            t.l[q] = l_prime_power(p, e);
            t.v[q] = v_prime_power(p, e);
            if (q > N / p) break;
            q *= p;
        }
    }

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
            if (rest == 1) continue;
            std::int64_t rv = t.r[pe], lv = t.l[pe], vv = t.v[pe];
            while (rest > 1) {
                const std::uint32_t p = t.spf[rest];
                std::uint64_t q = 1;
                while (rest % p == 0) {
                    rest /= p;
                    q *= p;
                }
                if (__builtin_mul_overflow(rv, t.r[q], &rv) ||
                    __builtin_mul_overflow(lv, t.l[q], &lv) ||
                    __builtin_mul_overflow(vv, t.v[q], &vv))
                    throw std::overflow_error("rk_sieve: 64-bit overflow at n=" + std::to_string(n));
            }
            t.r[n] = rv;
            t.l[n] = lv;
            t.v[n] = vv;
        }
    });
    return t;
}

}  // namespace symsq
