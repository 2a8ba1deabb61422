#pragma once

#include <string>
#include <vector>

namespace symsq {

// Error-exponent formulas of the literature chain for the four/six-square
// eigenvalue sums; theta is the saving in the exponent of x.
enum class Source { SS4, SS6, Hua, LiuYang4, LiuYang6, Feng, Main, Large };

std::string source_label(Source s);

// Validity: SS4 j = 2 only; SS6, Hua, LiuYang4, LiuYang6 j >= 2; Feng and
// Main j >= 3; Large j >= 127.  Out-of-range j throws with the range named.
double theta(Source s, int j);

// Feng's k_j: tabulated 11/40, 5/26, 23/130 for j = 3, 4, 5 and
// (8/63) sqrt(15/(2j-1)) for j >= 6.
double feng_k(int j);

struct RemarkRow {
    int j = 0;
    double th_feng = 0.0;
    double th_main = 0.0;
    double th_large = 0.0;        // evaluated formally below j=127
    bool large_extended = false;  // true when j < 127 (outside stated validity)
    bool a_holds = false;         // Feng < Main
    bool b_holds = false;         // Main < Large
    bool a_tie = false;           // margin below 1e-12
    bool b_tie = false;
    double a_margin = 0.0;        // th_main - th_feng
    double b_margin = 0.0;        // th_large - th_main
};

// Measures the claimed orderings Feng < Main and Main < Large per j;
// reports, never asserts.
std::vector<RemarkRow> remark_audit(int j_lo, int j_hi);

// Balances x^a T^b = x^total / T: returns t with T = x^t.  The final error
// exponent is total - t.  Requires b > -1.
double balance_T(double a, double b, double total);

}  // namespace symsq
