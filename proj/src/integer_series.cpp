#include "symsq/integer_series.hpp"

#include <gmp.h>

#include <cstdint>
#include <stdexcept>

namespace symsq {

IntegerSeries& IntegerSeries::operator+=(const IntegerSeries& o) {
    if (o.size() != size()) throw std::invalid_argument("IntegerSeries: mismatched truncations in +=");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

IntegerSeries& IntegerSeries::operator-=(const IntegerSeries& o) {
    if (o.size() != size()) throw std::invalid_argument("IntegerSeries: mismatched truncations in -=");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

IntegerSeries& IntegerSeries::divexact(long d) {
    mpz_class q, r;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        mpz_tdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), c_[i].get_mpz_t(), static_cast<unsigned long>(d));
        if (r != 0)
            throw std::logic_error("IntegerSeries::divexact: non-exact division at index " + std::to_string(i));
        c_[i] = q;
    }
    return *this;
}

namespace {

std::size_t max_coeff_bits(const IntegerSeries& a) {
    std::size_t b = 0;
    for (std::size_t i = 0; i <= a.trunc(); ++i) {
        if (a[i] == 0) continue;
        std::size_t s = mpz_sizeinbase(a[i].get_mpz_t(), 2);
        if (s > b) b = s;
    }
    return b;
}

// Pack signed coefficients into one integer at a stride of w 64-bit words:
// positive and negative parts are packed separately and subtracted once.
mpz_class kron_pack(const IntegerSeries& a, std::size_t w) {
    const std::size_t n = a.size();
    std::vector<std::uint64_t> pos(n * w, 0), neg(n * w, 0);
    bool any_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
        const mpz_class& c = a[i];
        int sg = mpz_sgn(c.get_mpz_t());
        if (sg == 0) continue;
        std::uint64_t* dst = sg > 0 ? &pos[i * w] : &neg[i * w];
        if (sg < 0) any_neg = true;
        std::size_t cnt;
        mpz_export(dst, &cnt, -1, 8, 0, 0, c.get_mpz_t());
    }
    mpz_class P;
    mpz_import(P.get_mpz_t(), n * w, -1, 8, 0, 0, pos.data());
    if (any_neg) {
        mpz_class Ng;
        mpz_import(Ng.get_mpz_t(), n * w, -1, 8, 0, 0, neg.data());
        P -= Ng;
    }
    return P;
}

// Recover signed coefficients 0..N from the balanced base-2^(64w) digits of D.
// Requires every true coefficient to satisfy |c| < 2^(64w-1).
IntegerSeries kron_unpack(mpz_class D, std::size_t w, std::size_t N) {
    const int sg = mpz_sgn(D.get_mpz_t());
    if (sg < 0) mpz_neg(D.get_mpz_t(), D.get_mpz_t());
    const std::size_t dwords = (mpz_sizeinbase(D.get_mpz_t(), 2) + 63) / 64;
    std::vector<std::uint64_t> buf(std::max(dwords, (N + 1) * w) + 1, 0);
    std::size_t cnt;
    mpz_export(buf.data(), &cnt, -1, 8, 0, 0, D.get_mpz_t());
    D = 0;

    IntegerSeries out(N);
    std::vector<std::uint64_t> digit(w);
    constexpr std::uint64_t top = 1ull << 63;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i <= N; ++i) {
        std::uint64_t c = carry;
        for (std::size_t k = 0; k < w; ++k) {
            std::uint64_t s = buf[i * w + k] + c;
            c = (s < c) ? 1 : 0;
            digit[k] = s;
        }
        if (c) {  // digit wrapped to exactly 2^(64w): value 0 with a borrow repaid
            carry = 1;
            continue;
        }
        bool negdig = digit[w - 1] >= top;
        if (negdig) {  // balanced digit: value - 2^(64w), borrow from the next digit
            for (std::size_t k = 0; k < w; ++k) digit[k] = ~digit[k];
            for (std::size_t k = 0; k < w; ++k)
                if (++digit[k]) break;
            carry = 1;
        } else {
            carry = 0;
        }
        mpz_import(out.at(i).get_mpz_t(), w, -1, 8, 0, 0, digit.data());
        if (negdig != (sg < 0)) mpz_neg(out.at(i).get_mpz_t(), out.at(i).get_mpz_t());
    }
    return out;
}

std::size_t stride_words(const IntegerSeries& a, const IntegerSeries& b) {
    const std::size_t ba = max_coeff_bits(a), bb = max_coeff_bits(b);
    const std::size_t terms_log = 64 - __builtin_clzll(static_cast<unsigned long long>(a.size()));
    return (ba + bb + terms_log + 2 + 63) / 64;
}

}  // namespace

IntegerSeries series_mul(const IntegerSeries& a, const IntegerSeries& b) {
    if (a.trunc() != b.trunc()) throw std::invalid_argument("series_mul: mismatched truncations");
    const std::size_t w = stride_words(a, b);
    mpz_class A = kron_pack(a, w);
    if (&a == &b) {
        mpz_class D;
        mpz_mul(D.get_mpz_t(), A.get_mpz_t(), A.get_mpz_t());
        A = 0;
        return kron_unpack(std::move(D), w, a.trunc());
    }
    mpz_class B = kron_pack(b, w);
    mpz_class D;
    mpz_mul(D.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
    A = 0;
    B = 0;
    return kron_unpack(std::move(D), w, a.trunc());
}

IntegerSeries series_square(const IntegerSeries& a) { return series_mul(a, a); }

}  // namespace symsq
