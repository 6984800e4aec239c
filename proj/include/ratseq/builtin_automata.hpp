#pragma once

#include <numeric>
#include <vector>

#include "ratseq/dfao.hpp"

namespace ratseq {
namespace builtin {

/// Parity of the digit sum over A_k: two states, reading a digit a adds a to
/// the sum. Over base 3/2 this generates the word t; over the signature
/// (023,14,5) it generates the sum-of-digits-mod-2 sequence of that system.
inline Dfao sum_parity_dfao(int alphabet_size) {
    std::vector<int> alphabet(static_cast<std::size_t>(alphabet_size));
    std::iota(alphabet.begin(), alphabet.end(), 0);
    std::vector<std::vector<int>> delta(2);
    for (int s = 0; s < 2; ++s)
        for (int a = 0; a < alphabet_size; ++a) delta[static_cast<std::size_t>(s)].push_back((s + a) % 2);
    return Dfao({"0", "1"}, 0, std::move(alphabet), std::move(delta), {"0", "1"});
}

/// Two-state automaton over A_3 generating the Lepistö word F_2 in base 3/2:
/// state 0 loops on 0 and moves on 1,2; state 1 always returns.
inline Dfao lepisto_f2_dfao() {
    return Dfao({"0", "1"}, 0, {0, 1, 2}, {{0, 1, 1}, {0, 0, 0}}, {"0", "1"});
}

/// Cyclic three-state automaton over A_3 with only two distinct outputs;
/// states q0 and q1 share an output but are distinguished within any
/// congruence class by extensions of length at most 2.
inline Dfao cycle3_dfao() {
    return Dfao({"q0", "q1", "q2"}, 0, {0, 1, 2}, {{1, 1, 1}, {2, 2, 2}, {0, 0, 0}},
                {"0", "0", "1"});
}

/// Four-state automaton over A_3 with outputs {0,1}: q0 and q1 swap on 1 and
/// both output 1, which makes congruent words reaching them inseparable by
/// short extensions.
inline Dfao four_state_dfao() {
    return Dfao({"q0", "q1", "q2", "q3"}, 0, {0, 1, 2},
                {{2, 1, 3}, {3, 0, 2}, {0, 0, 0}, {1, 1, 1}}, {"1", "1", "0", "1"});
}

/// Five-state automaton over A_3 generating t on canonical base-3/2 words,
/// with a sink carrying the sentinel output for everything else. This is the
/// canonical determinization of the factor NFA built from t's height-1
/// factor data.
inline Dfao t_five_state_dfao() {
    return Dfao({"1", "2", "3", "4", "5"}, 0, {0, 1, 2},
                {{1, 1, 2}, {1, 1, 1}, {1, 3, 1}, {3, 4, 3}, {4, 3, 4}},
                {"0", kSentinelOutput, "0", "1", "0"});
}

}  // namespace builtin
}  // namespace ratseq
