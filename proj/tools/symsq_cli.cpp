#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "symsq/eigenform.hpp"
#include "symsq/euler.hpp"
#include "symsq/exponents.hpp"
#include "symsq/hecke.hpp"
#include "symsq/lattice.hpp"
#include "symsq/sums.hpp"

using nlohmann::json;
using namespace symsq;

namespace {

struct RunConfig {
    int weight = 12;
    int j = 3;
    std::uint64_t x_max = 1'000'000;
    std::string grid_spec = "dyadic";
    std::uint64_t primes = 100'000;
    int trunc = 32;
    int threads = 1;
    std::string out;
    std::string format = "csv";
    std::string cache_dir;
    std::string j_range = "3..10";
    std::string kind = "both";
};

std::string g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::ostream& open_out(const RunConfig& cfg, std::ofstream& file) {
    if (cfg.out.empty()) return std::cout;
    file.open(cfg.out);
    if (!file) throw CLI::ValidationError("--out", "cannot open " + cfg.out);
    return file;
}

Eigenform load_form(const RunConfig& cfg, std::uint64_t N) {
    if (!cfg.cache_dir.empty()) return eigenform_cached(cfg.weight, N, cfg.cache_dir);
    return eigenform(cfg.weight, N);
}

std::vector<std::uint64_t> make_grid(const RunConfig& cfg) {
    if (cfg.grid_spec == "dyadic") return dyadic_grid(cfg.x_max);
    if (cfg.grid_spec.rfind("linear:", 0) == 0)
        return linear_grid(std::stoull(cfg.grid_spec.substr(7)), cfg.x_max);
    throw CLI::ValidationError("--grid", "expected dyadic or linear:<step>");
}

int cmd_eigenform(const RunConfig& cfg) {
    const Eigenform f = load_form(cfg, cfg.x_max);
    std::ofstream file;
    std::ostream& os = open_out(cfg, file);
    if (cfg.format == "json") {
        json rows = json::array();
        for (std::uint64_t n = 1; n <= cfg.x_max; ++n)
            rows.push_back({{"n", n}, {"a", f.a(n).get_str()}});
        os << json{{"weight", cfg.weight}, {"coefficients", rows}}.dump(2) << "\n";
    } else {
        os << "n,a\n";
        for (std::uint64_t n = 1; n <= cfg.x_max; ++n)
            os << n << "," << f.a(n).get_str() << "\n";
    }
    return 0;
}

int cmd_sym(const RunConfig& cfg) {
    const Eigenform f = load_form(cfg, cfg.x_max);
    const MultiplicativeTable t = sym_table(f, cfg.j, cfg.x_max, cfg.threads);
    std::ofstream file;
    std::ostream& os = open_out(cfg, file);
    os << "n,lambda\n";
    for (std::uint64_t n = 1; n <= cfg.x_max; ++n) os << n << "," << g12(t(n)) << "\n";
    return 0;
}

int cmd_rk(const RunConfig& cfg) {
    const LatticeCountTable t = rk_sieve(cfg.x_max, cfg.threads);
    std::ofstream file;
    std::ostream& os = open_out(cfg, file);
    os << "n,r4,r6\n";
    for (std::uint64_t n = 1; n <= cfg.x_max; ++n)
        os << n << "," << t.r4(n) << "," << t.r6(n) << "\n";
    return 0;
}

int cmd_verify_lattice(const RunConfig& cfg) {
    const std::uint64_t N = std::min<std::uint64_t>(cfg.x_max, 2000);
    const LatticeCountTable t = rk_sieve(N, cfg.threads);
    int bad = 0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const std::int64_t b4 = rk_bruteforce(4, n), b6 = rk_bruteforce(6, n);
        const R6Parts p6 = r6_formula(n);
        if (t.r4(n) != b4 || r4_formula(n) != b4 || t.r6(n) != b6 || p6.r6 != b6) {
            std::cerr << "lattice mismatch at n=" << n << "\n";
            ++bad;
        }
    }
    std::cout << (bad ? "verify-lattice: FAIL\n" : "verify-lattice: ok\n");
    return bad ? 1 : 0;
}

int cmd_verify_lemmas(const RunConfig& cfg) {
    const Eigenform f = load_form(cfg, 1000);
    int bad = 0;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        for (int i = 1; i <= 3; ++i) {
            const LocalFactor F = local_F(i, f, cfg.j, p, cfg.trunc);
            const LocalFactor G = local_G(i, f, cfg.j, p, cfg.trunc);
            const LocalFactor H = local_H(i, f, cfg.j, p, cfg.trunc);
            const LocalFactor GH = lf_mul(G, H);
            for (int k = 0; k <= cfg.trunc; ++k) {
                // noise floor of the reconstruction is set by the size of the
                // cancelling terms, so normalize by their absolute convolution
                long double scale = std::abs(F.c[k]);
                for (int t = 0; t <= k; ++t) scale += std::abs(G.c[t] * H.c[k - t]);
                if (std::abs(F.c[k] - GH.c[k]) > 1e-8L * (1.0L + scale)) {
                    std::cerr << "F != G*H at p=" << p << " i=" << i << " order " << k << "\n";
                    ++bad;
                    break;
                }
            }
            if (p != 2) {
                if (std::abs(H.c[1]) > 1e-9) {
                    std::cerr << "H has first-order term at p=" << p << " i=" << i << "\n";
                    ++bad;
                }
            }
        }
    }
    const Lemma26Report rep = lemma26_audit(2, f, std::min(cfg.trunc, 16));
    if (!rep.identity_ok) {
        std::cerr << "degree-one twisting identity failed\n";
        ++bad;
    }
    std::cout << (bad ? "verify-lemmas: FAIL\n" : "verify-lemmas: ok\n");
    std::cout << "twisted-factor readings diverge from order "
              << rep.first_divergent_order << " (max gap " << g12(rep.max_divergence) << ")\n";
    return bad ? 1 : 0;
}

int cmd_constant(const RunConfig& cfg) {
    const Eigenform f = load_form(cfg, cfg.primes);
    const ResidueConstant cu = residue_constant(SumKind::FourSquares, f, cfg.j, cfg.primes, cfg.trunc);
    const ResidueConstant cv = residue_constant(SumKind::SixSquares, f, cfg.j, cfg.primes, cfg.trunc);
    std::ofstream file;
    std::ostream& os = open_out(cfg, file);
    if (cfg.format == "json") {
        auto one = [](const ResidueConstant& c) {
            return json{{"value", c.value},
                        {"prime_cutoff", c.prime_cutoff},
                        {"K", c.K},
                        {"tail_estimate", c.tail_estimate},
                        {"reliable", c.reliable}};
        };
        os << json{{"weight", cfg.weight}, {"j", cfg.j}, {"U", one(cu)}, {"V", one(cv)}}.dump(2)
           << "\n";
    } else {
        os << "which,value,tail_estimate,reliable\n";
        os << "U," << g12(cu.value) << "," << g12(cu.tail_estimate) << "," << cu.reliable << "\n";
        os << "V," << g12(cv.value) << "," << g12(cv.tail_estimate) << "," << cv.reliable << "\n";
    }
    return 0;
}

int cmd_sum(const RunConfig& cfg) {
    std::cerr << "computing eigenform to " << cfg.x_max << "\n";
    const Eigenform f = load_form(cfg, cfg.x_max);
    const std::vector<std::uint64_t> grid = make_grid(cfg);
    std::ofstream file;
    std::ostream& os = open_out(cfg, file);
    json summary;
    for (const std::string which : {"u", "v"}) {
        if (cfg.kind != "both" && cfg.kind != which) continue;
        std::cerr << "summing " << which << " to " << cfg.x_max << "\n";
        SumReport rep = (which == "u") ? partial_sum_U(f, cfg.j, cfg.x_max, grid, cfg.threads)
                                       : partial_sum_V(f, cfg.j, cfg.x_max, grid, cfg.threads);
        fit_constant(rep);
        if (cfg.format == "json") {
            summary[which == "u" ? "U" : "V"] = {{"fitted_constant", rep.fitted_constant},
                                                 {"fit_C", rep.fit_C},
                                                 {"fit_b", rep.fit_b},
                                                 {"fit_gap", rep.fit_gap},
                                                 {"degenerate", rep.fit_degenerate}};
        } else {
            os << "# " << (which == "u" ? "U" : "V") << " weight=" << cfg.weight
               << " j=" << cfg.j << " fitted=" << g12(rep.fitted_constant)
               << " fit_C=" << g12(rep.fit_C) << " fit_b=" << g12(rep.fit_b) << "\n";
            write_csv(rep, os);
        }
    }
    if (cfg.format == "json") os << summary.dump(2) << "\n";
    return 0;
}

int cmd_exponents(const RunConfig& cfg) {
    int lo = 3, hi = 10;
    const auto dots = cfg.j_range.find("..");
    if (dots == std::string::npos)
        throw CLI::ValidationError("--j-range", "expected <lo>..<hi>");
    lo = std::stoi(cfg.j_range.substr(0, dots));
    hi = std::stoi(cfg.j_range.substr(dots + 2));
    const std::vector<RemarkRow> rows = remark_audit(std::max(lo, 3), hi);
    std::ofstream file;
    std::ostream& os = open_out(cfg, file);
    os << "j,theta_SS4,theta_Hua,theta_LY4,theta_LY6,theta_Feng,theta_Main,theta_Large,ineq_a,"
          "ineq_b\n";
    for (const RemarkRow& r : rows) {
        os << r.j << ",";
        os << (r.j == 2 ? g12(theta(Source::SS4, r.j)) : "") << ",";
        os << g12(theta(Source::Hua, r.j)) << "," << g12(theta(Source::LiuYang4, r.j)) << ","
           << g12(theta(Source::LiuYang6, r.j)) << "," << g12(r.th_feng) << ","
           << g12(r.th_main) << ",";
        os << g12(r.th_large) << (r.large_extended ? " (outside stated validity)" : "") << ",";
        os << (r.a_tie ? "tie" : (r.a_holds ? "1" : "0")) << ","
           << (r.b_tie ? "tie" : (r.b_holds ? "1" : "0")) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetric-power eigenvalue sums over four/six-square counts"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--weight", cfg.weight, "eigenform weight")
            ->check(CLI::IsMember({12, 16, 18, 20, 22, 26}));
        sub->add_option("--j", cfg.j, "symmetric-power order")->check(CLI::Range(0, kJMax));
        sub->add_option("--x-max", cfg.x_max, "table/sum extent")
            ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100'000'000}));
        sub->add_option("--grid", cfg.grid_spec, "dyadic or linear:<step>");
        sub->add_option("--primes", cfg.primes, "Euler-product prime cutoff")
            ->check(CLI::Range(std::uint64_t{1000}, std::uint64_t{100'000'000}));
        sub->add_option("--trunc", cfg.trunc, "local-factor truncation order")
            ->check(CLI::Range(2, kMMax));
        sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1, 64));
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--cache", cfg.cache_dir, "coefficient cache directory");
        return sub;
    };

    auto* c_eig = add_common(app.add_subcommand("eigenform", "dump exact a(n)"));
    auto* c_sym = add_common(app.add_subcommand("sym", "dump lambda_sym^j(n)"));
    auto* c_rk = add_common(app.add_subcommand("rk", "dump r4/r6 tables"));
    auto* c_vlat = add_common(app.add_subcommand("verify-lattice", "counts vs enumeration"));
    auto* c_vlem = add_common(app.add_subcommand("verify-lemmas", "local-factor identities"));
    auto* c_const = add_common(app.add_subcommand("constant", "residue constants"));
    auto* c_sum = add_common(app.add_subcommand("sum", "U/V partial-sum reports"));
    c_sum->add_option("--kind", cfg.kind)->check(CLI::IsMember({"u", "v", "both"}));
    auto* c_exp = app.add_subcommand("exponents", "exponent atlas with remark audit");
    c_exp->add_option("--j-range", cfg.j_range, "lo..hi");
    c_exp->add_option("--out", cfg.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c_eig->parsed()) return cmd_eigenform(cfg);
        if (c_sym->parsed()) return cmd_sym(cfg);
        if (c_rk->parsed()) return cmd_rk(cfg);
        if (c_vlat->parsed()) return cmd_verify_lattice(cfg);
        if (c_vlem->parsed()) return cmd_verify_lemmas(cfg);
        if (c_const->parsed()) return cmd_constant(cfg);
        if (c_sum->parsed()) return cmd_sum(cfg);
        if (c_exp->parsed()) return cmd_exponents(cfg);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 2;
}
