#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace symsq {

// Truncated q-expansion with exact arbitrary-precision integer coefficients.
// Index n holds the coefficient of q^n; all arithmetic closes at the same
// truncation length and never rounds.
class IntegerSeries {
public:
    explicit IntegerSeries(std::size_t trunc) : c_(trunc + 1) {}

    std::size_t trunc() const { return c_.size() - 1; }
    std::size_t size() const { return c_.size(); }

    const mpz_class& operator[](std::size_t n) const { return c_[n]; }
    mpz_class& at(std::size_t n) { return c_[n]; }

    IntegerSeries& operator+=(const IntegerSeries& o);
    IntegerSeries& operator-=(const IntegerSeries& o);

    // Exact division of every coefficient by d; throws std::logic_error if any
    // coefficient is not divisible (that signals an arithmetic bug upstream).
    IntegerSeries& divexact(long d);

    friend bool operator==(const IntegerSeries& a, const IntegerSeries& b) {
        return a.c_ == b.c_;
    }

private:
    std::vector<mpz_class> c_;
};

// Exact Cauchy product truncated at the common truncation length.
// Implemented by Kronecker substitution: both series are packed into single
// big integers with a balanced fixed stride, multiplied once with GMP, and
// the product coefficients are recovered from the balanced digits.
// Throws std::invalid_argument on mismatched truncations.
IntegerSeries series_mul(const IntegerSeries& a, const IntegerSeries& b);

IntegerSeries series_square(const IntegerSeries& a);

}  // namespace symsq
