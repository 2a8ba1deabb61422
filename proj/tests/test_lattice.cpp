#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "symsq/lattice.hpp"

using namespace symsq;

TEST_CASE("small representation counts") {
    CHECK(rk_bruteforce(4, 0) == 1);
    CHECK(rk_bruteforce(4, 1) == 8);
    CHECK(rk_bruteforce(4, 2) == 24);
    CHECK(rk_bruteforce(6, 1) == 12);
    CHECK(rk_bruteforce(6, 2) == 60);
    CHECK(rk_bruteforce(6, 3) == 160);
    CHECK(rk_bruteforce(6, 4) == 252);
}

TEST_CASE("divisor formulas match enumeration up to 2000") {
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        CHECK(r4_formula(n) == rk_bruteforce(4, n));
        const R6Parts p = r6_formula(n);
        CHECK(p.r6 == rk_bruteforce(6, n));
        CHECK(p.r6 == 16 * p.l - 4 * p.v);
    }
}

TEST_CASE("sieve tables match the formulas") {
    const std::uint64_t N = 100000;
    const LatticeCountTable t = rk_sieve(N);
    for (std::uint64_t n = 1; n <= N; n += (n < 3000 ? 1 : 37)) {
        CHECK(t.r4(n) == r4_formula(n));
        const R6Parts p = r6_formula(n);
        CHECK(t.r6(n) == p.r6);
        CHECK(t.l[n] == p.l);
        CHECK(t.v[n] == p.v);
    }
}

TEST_CASE("prime-power values: the even prime saturates at 3") {
    CHECK(r_prime_power(2, 1) == 3);
    CHECK(r_prime_power(2, 2) == 3);  // r(4) = 3
    CHECK(r_prime_power(2, 9) == 3);
    CHECK(r_prime_power(3, 2) == 13);   // 1 + 3 + 9
    CHECK(l_prime_power(2, 2) == 16);   // 4^e at p = 2
    CHECK(v_prime_power(2, 2) == 1);
    CHECK(l_prime_power(5, 1) == 26);   // 25 + chi(5)
    CHECK(v_prime_power(5, 1) == 26);
    CHECK(l_prime_power(3, 1) == 8);    // 9 - 1
    CHECK(v_prime_power(3, 1) == -8);  // 1 - 9
}

TEST_CASE("r, l, v tables are multiplicative") {
    const LatticeCountTable t = rk_sieve(5000);
    for (std::uint64_t m = 2; m <= 70; ++m)
        for (std::uint64_t n = m + 1; m * n <= 5000; ++n) {
            if (std::gcd(m, n) != 1) continue;
            CHECK(t.r[m * n] == t.r[m] * t.r[n]);
            CHECK(t.l[m * n] == t.l[m] * t.l[n]);
            CHECK(t.v[m * n] == t.v[m] * t.v[n]);
        }
}

TEST_CASE("average of r4 approaches pi^2 x^2 / 2") {
    const std::uint64_t N = 100000;
    const LatticeCountTable t = rk_sieve(N);
    double s = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) s += static_cast<double>(t.r4(n));
    const double expected = M_PI * M_PI / 2.0 * static_cast<double>(N) * static_cast<double>(N);
    CHECK(std::abs(s - expected) / expected < 0.02);
}

TEST_CASE("sieve is identical across thread counts") {
    const LatticeCountTable t1 = rk_sieve(30000, 1);
    const LatticeCountTable t4 = rk_sieve(30000, 4);
    for (std::uint64_t n = 1; n <= 30000; ++n) {
        CHECK(t1.r[n] == t4.r[n]);
        CHECK(t1.l[n] == t4.l[n]);
        CHECK(t1.v[n] == t4.v[n]);
    }
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(rk_bruteforce(5, 10), std::invalid_argument);
    CHECK_THROWS_AS(rk_bruteforce(4, 2'000'000), std::invalid_argument);
    CHECK_THROWS_AS(rk_sieve(1000, 1, 64), std::length_error);
}
