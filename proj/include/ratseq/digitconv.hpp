#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ratseq/dfao.hpp"
#include "ratseq/digit_word.hpp"
#include "ratseq/numeration.hpp"
#include "ratseq/rational_base.hpp"

namespace ratseq {

/// Lsd-first carry normalization for base p/q. One step turns an input digit
/// e plus carry c into the output digit a = (e+c) mod p and the next carry
/// c' = q*floor((e+c)/p); this preserves e + c = a + c'*(p/q), hence the
/// value of the whole stream. Carries stay within ceil(q*E_max/(p-q)) for
/// input digits bounded by E_max, so the state set is finite.
struct CarryTransducer {
    RationalBase base;
    long long e_max;
    long long c_max;

    CarryTransducer(const RationalBase& b, long long input_digit_bound)
        : base(b), e_max(input_digit_bound) {
        if (e_max < 0) throw Error("carry transducer: negative digit bound");
        c_max = (base.q * e_max + (base.p - base.q) - 1) / (base.p - base.q);
    }

    struct Step {
        int digit;
        long long carry;
    };

    Step step(long long e, long long c) const {
        long long s = e + c;
        int a = static_cast<int>(s % base.p);
        return {a, base.q * (s / base.p)};
    }
};

struct NormalizeResult {
    DigitWord word;       // canonical msd-first, leading zeros stripped
    long long max_carry;  // largest carry observed, for bound checks
};

/// Normalize an lsd-first digit stream (arbitrary non-negative digits) to
/// the canonical digit alphabet, exactly preserving the value
/// sum(e_i/q)(p/q)^i. After the input is exhausted the carry is flushed by
/// iterating with e = 0; the carry strictly decreases there, so this
/// terminates.
inline NormalizeResult normalize_lsd(const RationalBase& base, const std::vector<long long>& lsd_digits) {
    long long e_max = 0;
    for (long long e : lsd_digits) {
        if (e < 0) throw Error("normalize: negative input digit");
        e_max = std::max(e_max, e);
    }
    CarryTransducer t(base, e_max);
    std::vector<int> out_lsd;
    long long carry = 0, seen = 0;
    for (long long e : lsd_digits) {
        auto [a, c] = t.step(e, carry);
        out_lsd.push_back(a);
        carry = c;
        seen = std::max(seen, c);
    }
    while (carry > 0) {
        auto [a, c] = t.step(0, carry);
        out_lsd.push_back(a);
        carry = c;
        seen = std::max(seen, c);
    }
    while (!out_lsd.empty() && out_lsd.back() == 0) out_lsd.pop_back();
    std::vector<int> msd(out_lsd.rbegin(), out_lsd.rend());
    return {DigitWord(std::move(msd), base.alphabet_size()), seen};
}

inline DigitWord normalize(const RationalBase& base, const std::vector<long long>& lsd_digits) {
    return normalize_lsd(base, lsd_digits).word;
}

/// rep(a * val(w)) for canonical w: feed the scaled digits a*w through the
/// carry normalizer.
inline DigitWord multiply_constant(const RationalBase& base, const DigitWord& w, long long a) {
    if (a < 1) throw Error("multiply_constant: factor must be >= 1");
    if (!is_canonical(base, w)) throw Error("multiply_constant: word is not canonical");
    std::vector<long long> lsd;
    for (auto it = w.end(); it != w.begin();) lsd.push_back(a * *--it);
    return normalize(base, lsd);
}

/// rep(val(w) + b). Position 0 carries weight 1/q, so the translation
/// injects q*b at the least significant digit before normalizing.
inline DigitWord add_constant(const RationalBase& base, const DigitWord& w, long long b) {
    if (b < 0) throw Error("add_constant: negative translation");
    if (!is_canonical(base, w)) throw Error("add_constant: word is not canonical");
    std::vector<long long> lsd;
    for (auto it = w.end(); it != w.begin();) lsd.push_back(*--it);
    if (lsd.empty()) lsd.push_back(0);
    lsd[0] += base.q * b;
    return normalize(base, lsd);
}

/// Lsd-first DFAO generating n -> x_{a*n + b}. States are pairs of a carry
/// of the digit transducer and a state of the lsd-first automaton: reading a
/// digit e of rep(n) pushes the next canonical digit of a*n + b (the q*b
/// translation enters as the initial carry) into the automaton. The output
/// of a pair is computed by flushing its carry through the automaton.
inline Dfao affine_subsequence_dfao(const SequenceView& view, long long a, long long b,
                                    std::size_t state_limit = 1000000) {
    if (a < 1 || b < 0) throw Error("affine_subsequence_dfao: need a >= 1, b >= 0");
    if (!view.base) throw Error("affine_subsequence_dfao: view must be over a rational base");
    const RationalBase& base = *view.base;
    Dfao lsd = view.reading == Reading::lsd_first ? view.dfao : reverse_reading(view.dfao);
    for (int d = 0; d < base.p; ++d)
        if (!lsd.has_digit(d)) throw Error("affine_subsequence_dfao: automaton alphabet too small");

    CarryTransducer t(base, a * (base.p - 1));

    using State = std::pair<long long, int>;  // (carry, lsd automaton state)
    std::map<State, int> ids;
    std::vector<State> states;
    std::vector<std::vector<int>> delta;
    State start{base.q * b, lsd.initial()};
    ids[start] = 0;
    states.push_back(start);
    for (std::size_t i = 0; i < states.size(); ++i) {
        std::vector<int> row;
        for (int e = 0; e < base.p; ++e) {
            auto [carry, s] = states[i];
            auto [digit, next_carry] = t.step(a * e, carry);
            State nxt{next_carry, lsd.step(s, digit)};
            auto [it, inserted] = ids.emplace(nxt, static_cast<int>(states.size()));
            if (inserted) {
                states.push_back(nxt);
                if (states.size() > state_limit)
                    throw Error("affine_subsequence_dfao: state count exceeds limit");
            }
            row.push_back(it->second);
        }
        delta.push_back(std::move(row));
    }
    std::vector<std::string> names;
    std::vector<std::string> output;
    for (const auto& [carry, s] : states) {
        names.push_back("c" + std::to_string(carry) + "|" + lsd.name(s));
        long long c = carry;
        int q = s;
        while (c > 0) {
            auto [digit, next_carry] = t.step(0, c);
            q = lsd.step(q, digit);
            c = next_carry;
        }
        output.push_back(lsd.out(q));
    }
    std::vector<int> alphabet(static_cast<std::size_t>(base.p));
    for (int d = 0; d < base.p; ++d) alphabet[static_cast<std::size_t>(d)] = d;
    return Dfao(std::move(names), 0, std::move(alphabet), std::move(delta), std::move(output));
}

}  // namespace ratseq
