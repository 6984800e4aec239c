#pragma once

#include <utility>
#include <vector>

#include "ratseq/digit_word.hpp"
#include "ratseq/numeric.hpp"
#include "ratseq/rational_base.hpp"

namespace ratseq {

/// Canonical representation of n in base p/q, computed by the forward digit
/// recurrence: n_0 = n, q*n_i = p*n_{i+1} + a_i with a_i the remainder of
/// q*n_i modulo p. The sequence (n_i) is strictly decreasing, so this
/// terminates. rep(0) is the empty word; no result has a leading zero.
inline DigitWord rep(const RationalBase& base, long long n) {
    if (n < 0) throw Error("rep: negative argument");
    std::vector<int> lsd_digits;
    while (n > 0) {
        long long qn = base.q * n;
        int a = static_cast<int>(qn % base.p);
        lsd_digits.push_back(a);
        n = (qn - a) / base.p;
    }
    std::vector<int> digits(lsd_digits.rbegin(), lsd_digits.rend());
    return DigitWord(std::move(digits), base.alphabet_size());
}

namespace detail {

// Scaled value: val(w) = V / q^|w| with V an integer. Horner step, msd-first:
// V(wa) = p*V(w) + a*q^|w|.
inline std::pair<BigInt, BigInt> scaled_value(const RationalBase& base, const DigitWord& w) {
    BigInt v = 0;
    BigInt qpow = 1;  // q^(current length)
    for (int d : w) {
        v = v * base.p + d * qpow;
        qpow *= base.q;
    }
    return {v, qpow};
}

}  // namespace detail

/// Exact value of a digit word in base p/q. Digits need not lie in A_p; the
/// same weighted sum is evaluated for any non-negative digits. Position 0 is
/// the rightmost digit (the word is stored msd-first).
inline Rational val(const RationalBase& base, const DigitWord& w) {
    auto [v, qpow] = detail::scaled_value(base, w);
    return Rational(v, qpow);
}

/// Membership of w in the numeration language L_{p/q}: w is empty, or has no
/// leading zero, digits below p, and an integer value.
inline bool is_canonical(const RationalBase& base, const DigitWord& w) {
    if (w.empty()) return true;
    if (w.has_leading_zero()) return false;
    for (int d : w)
        if (d >= base.p) return false;
    auto [v, qpow] = detail::scaled_value(base, w);
    return v % qpow == 0;
}

}  // namespace ratseq
