#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "symsq/exponents.hpp"

using namespace symsq;

TEST_CASE("pinned exponent values") {
    CHECK(theta(Source::Main, 3) == doctest::Approx(0.13709).epsilon(5e-5 / 0.13709));
    CHECK(theta(Source::Feng, 3) == doctest::Approx(0.13378).epsilon(5e-5 / 0.13378));
    CHECK(theta(Source::LiuYang4, 2) == doctest::Approx(120.0 / 479.0));
    CHECK(theta(Source::LiuYang6, 2) == doctest::Approx(210.0 / 842.0));
    CHECK(theta(Source::Hua, 2) == doctest::Approx(60.0 / 257.0));
    CHECK(theta(Source::SS4, 2) == doctest::Approx(0.2));
    CHECK(theta(Source::SS6, 2) == doctest::Approx(6.0 / 28.0));
}

TEST_CASE("feng's k_j switches from the table to the closed form") {
    CHECK(feng_k(3) == doctest::Approx(11.0 / 40.0));
    CHECK(feng_k(4) == doctest::Approx(5.0 / 26.0));
    CHECK(feng_k(5) == doctest::Approx(23.0 / 130.0));
    CHECK(feng_k(6) == doctest::Approx((8.0 / 63.0) * std::sqrt(15.0 / 11.0)));
    CHECK_THROWS_AS(feng_k(2), std::invalid_argument);
}

TEST_CASE("validity ranges are enforced and named") {
    CHECK_THROWS_WITH_AS(theta(Source::Main, 2), doctest::Contains("j >= 3"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(theta(Source::Large, 126), doctest::Contains("j >= 127"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(theta(Source::SS4, 3), doctest::Contains("j = 2"),
                         std::invalid_argument);
    CHECK_THROWS_AS(theta(Source::Feng, 2), std::invalid_argument);
    CHECK_THROWS_AS(theta(Source::Hua, 1), std::invalid_argument);
}

TEST_CASE("theta decreases strictly in j and vanishes at large j") {
    const std::pair<Source, int> cases[] = {{Source::SS6, 2},     {Source::Hua, 2},
                                            {Source::LiuYang4, 2}, {Source::LiuYang6, 2},
                                            {Source::Feng, 3},     {Source::Main, 3},
                                            {Source::Large, 127}};
    for (const auto& [s, lo] : cases) {
        double prev = theta(s, lo);
        CHECK(prev > 0.0);
        CHECK(prev < 1.0);
        for (int j = lo + 1; j <= 1000; ++j) {
            const double t = theta(s, j);
            CHECK(t < prev);
            prev = t;
        }
        CHECK(theta(s, 1000) < 5e-3);
    }
}

TEST_CASE("balancing T reproduces the closed-form exponents") {
    const double K = 8.0 * std::sqrt(15.0) / 63.0;
    for (int j = 3; j <= 100; ++j) {
        const double a = 2.0 - std::pow(j, -3.0);
        const double b = K * std::pow(j, -4.5) +
                         ((j + 1.0) * (j + 1.0) / 2.0 - 0.8) * std::pow(j, -3.0) - 1.0;
        const double t = balance_T(a, b, 2.0);
        CHECK(std::abs((2.0 - t) - (2.0 - theta(Source::Main, j))) < 1e-12);
        // the six-square balance shares b and shifts the pole exponent by one
        const double t3 = balance_T(a + 1.0, b, 3.0);
        CHECK(std::abs((3.0 - t3) - (3.0 - theta(Source::Main, j))) < 1e-12);
    }
    for (int j = 127; j <= 500; ++j) {
        const double a = 2.0 - 1.0 / std::sqrt(j);
        const double b = K * std::pow(j, -0.75) + 0.5 +
                         ((j + 1.0) * (j + 1.0) - 6.0) / (2.0 * std::sqrt(j)) - 1.0;
        const double t = balance_T(a, b, 2.0);
        CHECK(std::abs((2.0 - t) - (2.0 - theta(Source::Large, j))) < 1e-12);
    }
}

TEST_CASE("balance edge cases") {
    CHECK(balance_T(2.0, 0.5, 2.0) == 0.0);
    CHECK_THROWS_AS(balance_T(1.0, -1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(balance_T(1.0, -1.5, 2.0), std::domain_error);
}

TEST_CASE("remark audit: first inequality holds throughout, second reverses") {
    const auto rows = remark_audit(3, 1000);
    REQUIRE(rows.size() == 998);
    for (const RemarkRow& r : rows) {
        // Feng < Main for every j scanned; sub-1e-12 margins count as ties
        CHECK((r.a_holds || r.a_tie));
        CHECK(r.a_margin > 0.0);
    }
    CHECK(rows[0].th_main == doctest::Approx(0.13709).epsilon(5e-4));
    CHECK(rows[0].th_large == doctest::Approx(0.16026).epsilon(1e-3));
    CHECK(rows[0].large_extended);
    for (const RemarkRow& r : rows) {
        if (r.j <= 15) CHECK(r.b_holds);
    }
    // the claimed ordering fails from the crossover on, including the stated
    // validity range of the large-j formula
    CHECK_FALSE(rows[97].b_holds);   // j = 100
    CHECK_FALSE(rows[197].b_holds);  // j = 200
    bool reversed_somewhere = false;
    for (const RemarkRow& r : rows)
        if (!r.b_holds && !r.b_tie) reversed_somewhere = true;
    CHECK(reversed_somewhere);
}

TEST_CASE("audit input validation") {
    CHECK_THROWS_AS(remark_audit(2, 10), std::invalid_argument);
    CHECK_THROWS_AS(remark_audit(5, 4), std::invalid_argument);
}
