#include "symsq/eigenform.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace symsq {

bool weight_supported(int weight) {
    for (int w : kSupportedWeights)
        if (w == weight) return true;
    return false;
}

IntegerSeries eisenstein(int k, std::size_t N) {
    if (k != 4 && k != 6) throw std::invalid_argument("eisenstein: k must be 4 or 6");
    if (N < 1) throw std::invalid_argument("eisenstein: N must be >= 1");
    const int r = (k == 4) ? 3 : 5;
    // sigma_r(n) fits unsigned __int128 well past N = 10^7 for r <= 5.
    std::vector<unsigned __int128> sig(N + 1, 0);
    for (std::uint64_t d = 1; d <= N; ++d) {
        unsigned __int128 dr = d;
        for (int i = 1; i < r; ++i) dr *= d;
        for (std::uint64_t m = d; m <= N; m += d) sig[m] += dr;
    }
    IntegerSeries out(N);
    out.at(0) = 1;
    const long scale = (k == 4) ? 240 : -504;
    mpz_class t;
    for (std::size_t n = 1; n <= N; ++n) {
        unsigned __int128 v = sig[n];
        const std::uint64_t lo = static_cast<std::uint64_t>(v);
        const std::uint64_t hi = static_cast<std::uint64_t>(v >> 64);
        mpz_set_ui(t.get_mpz_t(), static_cast<unsigned long>(hi));
        mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), 64);
        mpz_add_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(lo));
        out.at(n) = t * scale;
    }
    return out;
}

namespace {

// Threshold above which delta is built from the sparse cube of the Euler
// function (three exact squarings) instead of E4^3 - E6^2; both routes are
// exact and the prefix of the fast route is checked against the direct one.
constexpr std::size_t kDeltaEtaThreshold = 1u << 16;

Eigenform delta_direct(std::size_t N) {
    IntegerSeries e4 = eisenstein(4, N);
    IntegerSeries e6 = eisenstein(6, N);
    IntegerSeries num = series_mul(series_square(e4), e4);
    num -= series_square(e6);
    num.divexact(1728);
    return Eigenform{12, std::move(num)};
}

// delta/q = (prod (1-q^n))^24 = (sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2})^8.
Eigenform delta_eta(std::size_t N) {
    IntegerSeries cube(N - 1);
    for (std::uint64_t k = 0;; ++k) {
        const std::uint64_t t = k * (k + 1) / 2;
        if (t > N - 1) break;
        cube.at(t) = (k % 2) ? -static_cast<long>(2 * k + 1) : static_cast<long>(2 * k + 1);
    }
    IntegerSeries pw = series_square(series_square(series_square(cube)));
    IntegerSeries shifted(N);
    for (std::size_t n = 1; n <= N; ++n) shifted.at(n) = pw[n - 1];

    const std::size_t check = std::min<std::size_t>(N, 256);
    Eigenform ref = delta_direct(check);
    for (std::size_t n = 0; n <= check; ++n)
        if (shifted[n] != ref.a(n))
            throw std::logic_error("delta_series: eta route disagrees with Eisenstein route at n=" +
                                   std::to_string(n));
    return Eigenform{12, std::move(shifted)};
}

}  // namespace

Eigenform delta_series(std::size_t N) {
    if (N < 2) throw std::invalid_argument("delta_series: N must be >= 2");
    return N > kDeltaEtaThreshold ? delta_eta(N) : delta_direct(N);
}

Eigenform eigenform(int weight, std::size_t N) {
    if (!weight_supported(weight))
        throw std::invalid_argument(
            "eigenform: unsupported weight " + std::to_string(weight) +
            " (supported: 12, 16, 18, 20, 22, 26)");
    Eigenform d = delta_series(N);
    if (weight == 12) return d;
    IntegerSeries s = std::move(d.series);
    const int a4 = (weight == 16) ? 1 : (weight == 20) ? 2 : (weight == 22) ? 1 : (weight == 26) ? 2 : 0;
    const int b6 = (weight == 18 || weight == 22 || weight == 26) ? 1 : 0;
    if (a4 > 0) {
        IntegerSeries e4 = eisenstein(4, N);
        for (int i = 0; i < a4; ++i) s = series_mul(s, e4);
    }
    if (b6 > 0) {
        IntegerSeries e6 = eisenstein(6, N);
        s = series_mul(s, e6);
    }
    return Eigenform{weight, std::move(s)};
}

std::filesystem::path cache_file(int weight, std::size_t N, const std::filesystem::path& dir) {
    return dir / ("eigenform_w" + std::to_string(weight) + "_N" + std::to_string(N) + ".txt");
}

void save_eigenform(const Eigenform& f, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto path = cache_file(f.weight, f.trunc(), dir);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_eigenform: cannot open " + path.string());
    out << "# eigenform weight=" << f.weight << " N=" << f.trunc() << " version=1\n";
    for (std::size_t n = 0; n <= f.trunc(); ++n)
        out << n << ' ' << f.a(n).get_str() << '\n';
}

std::optional<Eigenform> load_eigenform(int weight, std::size_t N, const std::filesystem::path& dir) {
    const auto path = cache_file(weight, N, dir);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string header;
    std::getline(in, header);
    std::ostringstream want;
    want << "# eigenform weight=" << weight << " N=" << N << " version=1";
    if (header != want.str()) return std::nullopt;
    Eigenform f{weight, IntegerSeries(N)};
    std::size_t n;
    std::string coeff;
    std::size_t seen = 0;
    while (in >> n >> coeff) {
        if (n > N) return std::nullopt;
        f.series.at(n) = mpz_class(coeff);
        ++seen;
    }
    if (seen != N + 1) return std::nullopt;
    return f;
}

Eigenform eigenform_cached(int weight, std::size_t N, const std::filesystem::path& dir) {
    if (auto f = load_eigenform(weight, N, dir)) return std::move(*f);
    Eigenform f = eigenform(weight, N);
    save_eigenform(f, dir);
    return f;
}

}  // namespace symsq
