#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "symsq/sums.hpp"

using namespace symsq;

namespace {

Eigenform& delta_64k() {
    static Eigenform d = delta_series(65536);
    return d;
}

SumReport synthetic(double C, double a, double b, int d, std::uint64_t x_max) {
    SumReport rep;
    rep.d = d;
    rep.grid = dyadic_grid(x_max);
    for (const std::uint64_t x : rep.grid) {
        const double xd = std::pow(static_cast<double>(x), d);
        const double norm = C + a * std::pow(static_cast<double>(x), -b);
        rep.normalized.push_back(norm);
        rep.S.push_back(norm * xd);
    }
    return rep;
}

}  // namespace

TEST_CASE("grid construction") {
    const auto g = dyadic_grid(10000);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 1024);
    CHECK(g[3] == 8192);
    CHECK(g.back() == 10000);
    const auto l = linear_grid(300, 1000);
    CHECK(l == std::vector<std::uint64_t>{300, 600, 900, 1000});
}

TEST_CASE("first values of the four-square sum") {
    std::vector<std::uint64_t> grid{1, 2, 100};
    const SumReport rep = partial_sum_U(delta_64k(), 3, 100, grid);
    CHECK(rep.d == 2);
    CHECK(rep.S[0] == doctest::Approx(8.0));
    CHECK(rep.S[1] == doctest::Approx(27.9402).epsilon(1e-3 / 27.9402));
    CHECK(rep.S[2] > rep.S[1]);
}

TEST_CASE("first values of the six-square sum") {
    std::vector<std::uint64_t> grid{1, 2, 100};
    const SumReport rep = partial_sum_V(delta_64k(), 3, 100, grid);
    CHECK(rep.d == 3);
    CHECK(rep.S[0] == doctest::Approx(12.0));
    CHECK(rep.S[1] == doctest::Approx(61.850).epsilon(1e-2 / 61.850));
    CHECK(rep.S[2] >= 12.0);
}

TEST_CASE("partial sums are nondecreasing with positive normalized values") {
    const SumReport rep = partial_sum_U(delta_64k(), 4, 65536, dyadic_grid(65536));
    for (std::size_t i = 1; i < rep.S.size(); ++i) CHECK(rep.S[i] >= rep.S[i - 1]);
    for (const double v : rep.normalized) CHECK(v > 0.0);
}

TEST_CASE("summation is byte-identical across thread counts") {
    const auto grid = dyadic_grid(65536);
    for (const bool six : {false, true}) {
        const SumReport r1 = six ? partial_sum_V(delta_64k(), 3, 65536, grid, 1)
                                 : partial_sum_U(delta_64k(), 3, 65536, grid, 1);
        const SumReport r4 = six ? partial_sum_V(delta_64k(), 3, 65536, grid, 4)
                                 : partial_sum_U(delta_64k(), 3, 65536, grid, 4);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(r1.S[i] == r4.S[i]);  // bitwise, not approximate
            CHECK(r1.normalized[i] == r4.normalized[i]);
        }
    }
}

TEST_CASE("constant fit on a synthetic decaying tail") {
    SumReport rep = synthetic(5.0, 1.0, 0.2, 2, 10'000'000);
    fit_constant(rep);
    CHECK_FALSE(rep.fit_degenerate);
    CHECK(rep.fit_C == doctest::Approx(5.0).epsilon(0.02));
    CHECK(rep.fit_b == doctest::Approx(0.2).epsilon(0.15));
    CHECK(rep.drift.size() == rep.grid.size());
}

TEST_CASE("constant input flags a degenerate fit") {
    SumReport rep = synthetic(7.0, 0.0, 0.5, 2, 1'000'000);
    fit_constant(rep);
    CHECK(rep.fit_degenerate);
    CHECK(rep.fitted_constant == doctest::Approx(7.0));
    for (const double d : rep.drift) CHECK(d == doctest::Approx(0.0));
}

TEST_CASE("fit preconditions") {
    SumReport rep = synthetic(1.0, 1.0, 0.3, 2, 4096);
    rep.grid.resize(2);
    rep.normalized.resize(2);
    rep.S.resize(2);
    CHECK_THROWS_AS(fit_constant(rep), std::invalid_argument);
}

TEST_CASE("asymptotic proxy on a synthetic power-law error") {
    // S = x^2 + x^{1.8}: against theta = 0.137 the proxy decays like x^{-0.063}
    SumReport rep;
    rep.d = 2;
    rep.grid = dyadic_grid(10'000'000);
    for (const std::uint64_t x : rep.grid) {
        const double xd = static_cast<double>(x);
        rep.S.push_back(xd * xd + std::pow(xd, 1.8));
        rep.normalized.push_back(rep.S.back() / (xd * xd));
    }
    rep.fitted_constant = 1.0;
    rep.fit_C = 1.0;
    const AsymptoticReport ar = asymptotic_report(rep, 0.137);
    CHECK(ar.error_slope == doctest::Approx(1.8).epsilon(1e-3));
    const std::size_t n = ar.proxy.size();
    CHECK(ar.proxy[n - 1] < ar.proxy[n - 4]);  // decaying over the top decade
    // exact main term leaves a zero proxy
    SumReport clean = synthetic(3.0, 0.0, 0.5, 3, 1'000'000);
    clean.fitted_constant = 3.0;
    clean.fit_C = 3.0;
    clean.fit_degenerate = false;
    for (const double v : asymptotic_report(clean, 0.1).proxy) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("csv emission uses the fixed four-column layout") {
    SumReport rep = synthetic(2.0, 1.0, 0.25, 2, 1'000'000);
    fit_constant(rep);
    std::ostringstream os;
    write_csv(rep, os);
    const std::string out = os.str();
    CHECK(out.rfind("x,S,normalized,drift\n", 0) == 0);
    CHECK(out.find("1024,") != std::string::npos);
    CHECK(out.find("1000000,") != std::string::npos);
}
