#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>

#include "symsq/eigenform.hpp"

using namespace symsq;

namespace {

// divisor-power sum by trial enumeration, the oracle for the Eisenstein tails
mpz_class sigma_pow(std::uint64_t n, int k) {
    mpz_class s = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), d, k);
        s += t;
        const std::uint64_t e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(t.get_mpz_t(), e, k);
            s += t;
        }
    }
    return s;
}

}  // namespace

TEST_CASE("Eisenstein coefficients against divisor enumeration") {
    const IntegerSeries e4 = eisenstein(4, 200);
    const IntegerSeries e6 = eisenstein(6, 200);
    CHECK(e4[0] == 1);
    CHECK(e6[0] == 1);
    for (std::uint64_t n = 1; n <= 200; ++n) {
        CHECK(e4[n] == 240 * sigma_pow(n, 3));
        CHECK(e6[n] == -504 * sigma_pow(n, 5));
    }
}

TEST_CASE("series multiplication against naive convolution") {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<long> coef(-1'000'000, 1'000'000);
    const std::size_t N = 300;
    IntegerSeries a(N), b(N);
    for (std::size_t n = 0; n <= N; ++n) {
        a.at(n) = coef(rng);
        b.at(n) = coef(rng);
    }
    const IntegerSeries ab = series_mul(a, b);
    for (std::size_t n = 0; n <= N; ++n) {
        mpz_class s = 0;
        for (std::size_t i = 0; i <= n; ++i) s += a[i] * b[n - i];
        CHECK(ab[n] == s);
    }
}

TEST_CASE("delta begins q - 24q^2 + 252q^3 ...") {
    const Eigenform d = delta_series(30);
    CHECK(d.a(0) == 0);
    CHECK(d.a(1) == 1);
    CHECK(d.a(2) == -24);
    CHECK(d.a(3) == 252);
    CHECK(d.a(5) == 4830);
    CHECK(d.a(10) == d.a(2) * d.a(5));
}

TEST_CASE("unnormalized Hecke multiplicativity for all six weights") {
    for (const int w : kSupportedWeights) {
        const Eigenform f = eigenform(w, 3000);
        CHECK(f.a(1) == 1);
        // coprime products
        for (std::uint64_t m = 2; m <= 300; ++m)
            for (std::uint64_t n = 2; m * n <= 300; ++n) {
                mpz_class rhs = 0;
                for (std::uint64_t d = 1; d <= std::min(m, n); ++d) {
                    if (m % d || n % d) continue;
                    mpz_class t;
                    mpz_ui_pow_ui(t.get_mpz_t(), d, static_cast<unsigned>(w - 1));
                    rhs += t * f.a(m * n / (d * d));
                }
                CHECK(f.a(m) * f.a(n) == rhs);
            }
        // prime-power recursion a(p^{m+1}) = a(p) a(p^m) - p^{w-1} a(p^{m-1})
        for (const std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
            mpz_class pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), p, static_cast<unsigned>(w - 1));
            for (std::uint64_t q = p; q * p <= 3000; q *= p)
                CHECK(f.a(q * p) == f.a(p) * f.a(q) - pw * f.a(q / p));
        }
    }
}

TEST_CASE("known second coefficients") {
    CHECK(eigenform(16, 5).a(2) == 216);
    CHECK(eigenform(18, 5).a(2) == -528);
    CHECK(eigenform(20, 5).a(2) == 456);
    CHECK(eigenform(22, 5).a(2) == -288);
    CHECK(eigenform(26, 5).a(2) == -48);
}

TEST_CASE("unsupported weight is rejected with the valid set named") {
    CHECK_THROWS_WITH_AS(eigenform(14, 10), doctest::Contains("12"), std::invalid_argument);
}

TEST_CASE("non-exact division throws") {
    IntegerSeries s(2);
    s.at(0) = 3;
    s.at(1) = 4;
    CHECK_THROWS_AS(s.divexact(2), std::logic_error);
}

TEST_CASE("eta-route delta matches the Eisenstein route past the switch point") {
    const std::size_t N = 66000;  // just past the internal threshold
    const Eigenform big = delta_series(N);
    const Eigenform small = delta_series(2000);
    for (std::uint64_t n = 1; n <= 2000; ++n) CHECK(big.a(n) == small.a(n));
    CHECK(big.a(66000) == big.series[66000]);  // readable to the end
}

TEST_CASE("coefficient cache round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "symsq-cache-test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const Eigenform f = eigenform(20, 500);
    save_eigenform(f, dir);
    const auto g = load_eigenform(20, 500, dir);
    REQUIRE(g.has_value());
    for (std::uint64_t n = 0; n <= 500; ++n) CHECK(g->a(n) == f.a(n));
    CHECK_FALSE(load_eigenform(20, 501, dir).has_value());
    std::filesystem::remove_all(dir);
}
