#include "symsq/exponents.hpp"

#include <cmath>
#include <stdexcept>

namespace symsq {

namespace {

const double kSqrt15 = std::sqrt(15.0);

[[noreturn]] void out_of_range(Source s, const char* range) {
    throw std::invalid_argument("theta(" + source_label(s) + "): j must satisfy " + range);
}

double theta_large_raw(int j) {
    const double j14 = std::pow(j, 0.25);
    const double j34 = std::pow(j, 0.75);
    const double jp1 = static_cast<double>(j + 1);
    return 126.0 * j14 / (63.0 * j14 * jp1 * jp1 + 63.0 * j34 - 378.0 * j14 + 16.0 * kSqrt15);
}

}  // namespace

std::string source_label(Source s) {
    switch (s) {
        case Source::SS4: return "SS4";
        case Source::SS6: return "SS6";
        case Source::Hua: return "Hua";
        case Source::LiuYang4: return "LiuYang4";
        case Source::LiuYang6: return "LiuYang6";
        case Source::Feng: return "Feng";
        case Source::Main: return "Main";
        case Source::Large: return "Large";
    }
    return "?";
}

double feng_k(int j) {
    switch (j) {
        case 3: return 11.0 / 40.0;
        case 4: return 5.0 / 26.0;
        case 5: return 23.0 / 130.0;
        default:
            if (j < 3) throw std::invalid_argument("feng_k: j must satisfy j >= 3");
            return (8.0 / 63.0) * std::sqrt(15.0 / (2.0 * j - 1.0));
    }
}

double theta(Source s, int j) {
    const double jp1 = static_cast<double>(j + 1);
    switch (s) {
        case Source::SS4:
            if (j != 2) out_of_range(s, "j = 2");
            return 1.0 / 5.0;
        case Source::SS6:
            if (j < 2) out_of_range(s, "j >= 2");
            return 6.0 / (3.0 * jp1 * jp1 + 1.0);
        case Source::Hua:
            if (j < 2) out_of_range(s, "j >= 2");
            return 60.0 / (30.0 * jp1 * jp1 - 13.0);
        case Source::LiuYang4:
            if (j < 2) out_of_range(s, "j >= 2");
            return 120.0 / (60.0 * jp1 * jp1 - 61.0);
        case Source::LiuYang6:
            if (j < 2) out_of_range(s, "j >= 2");
            return 210.0 / (105.0 * jp1 * jp1 - 103.0);
        case Source::Feng:
            if (j < 3) out_of_range(s, "j >= 3");
            return 10.0 / (10.0 * feng_k(j) + 12.0 + 5.0 * (j - 1.0) * (j + 3.0));
        case Source::Main: {
            if (j < 3) out_of_range(s, "j >= 3");
            const double j32 = std::pow(j, 1.5);
            return 630.0 * j32 /
                   (315.0 * j32 * jp1 * jp1 - 504.0 * j32 + 80.0 * kSqrt15);
        }
        case Source::Large:
            if (j < 127) out_of_range(s, "j >= 127");
            return theta_large_raw(j);
    }
    throw std::invalid_argument("theta: unknown source");
}

std::vector<RemarkRow> remark_audit(int j_lo, int j_hi) {
    if (j_lo < 3 || j_hi < j_lo)
        throw std::invalid_argument("remark_audit: need 3 <= j_lo <= j_hi");
    std::vector<RemarkRow> rows;
    rows.reserve(static_cast<std::size_t>(j_hi - j_lo + 1));
    for (int j = j_lo; j <= j_hi; ++j) {
        RemarkRow r;
        r.j = j;
        r.th_feng = theta(Source::Feng, j);
        r.th_main = theta(Source::Main, j);
        r.th_large = theta_large_raw(j);
        r.large_extended = j < 127;
        r.a_margin = r.th_main - r.th_feng;
        r.b_margin = r.th_large - r.th_main;
        r.a_tie = std::abs(r.a_margin) < 1e-12;
        r.b_tie = std::abs(r.b_margin) < 1e-12;
        r.a_holds = r.a_margin > 0.0 && !r.a_tie;
        r.b_holds = r.b_margin > 0.0 && !r.b_tie;
        rows.push_back(r);
    }
    return rows;
}

double balance_T(double a, double b, double total) {
    if (b <= -1.0) throw std::domain_error("balance_T: b must exceed -1");
    return (total - a) / (b + 1.0);
}

}  // namespace symsq
