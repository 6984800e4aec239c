#pragma once

#include <map>
#include <string>
#include <vector>

#include "ratseq/ratseq.hpp"

namespace ratseq::testutil {

inline std::string fixture_path(const std::string& name) {
    return std::string(RATSEQ_FIXTURE_DIR) + "/" + name;
}

/// Structural DFAO equality up to state renaming: pair states by walking the
/// transition graphs from the initial states; outputs must match.
inline bool dfao_isomorphic(const Dfao& a, const Dfao& b) {
    if (a.state_count() != b.state_count()) return false;
    if (a.alphabet() != b.alphabet()) return false;
    std::map<int, int> pairing{{a.initial(), b.initial()}};
    std::vector<int> queue{a.initial()};
    std::vector<bool> seen(static_cast<std::size_t>(a.state_count()), false);
    seen[static_cast<std::size_t>(a.initial())] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        int sa = queue[i];
        int sb = pairing.at(sa);
        if (a.out(sa) != b.out(sb)) return false;
        for (int digit : a.alphabet()) {
            int ta = a.step(sa, digit);
            int tb = b.step(sb, digit);
            auto it = pairing.find(ta);
            if (it != pairing.end()) {
                if (it->second != tb) return false;
            } else {
                pairing[ta] = tb;
            }
            if (!seen[static_cast<std::size_t>(ta)]) {
                seen[static_cast<std::size_t>(ta)] = true;
                queue.push_back(ta);
            }
        }
    }
    // Reachable parts matched; both automata must be fully reachable and the
    // pairing must be injective.
    if (queue.size() != static_cast<std::size_t>(a.state_count())) return false;
    std::map<int, int> reverse;
    for (const auto& [x, y] : pairing)
        if (!reverse.emplace(y, x).second) return false;
    return true;
}

inline std::vector<int> to_int_word(const std::vector<std::string>& terms) {
    std::vector<int> word;
    word.reserve(terms.size());
    for (const auto& t : terms) word.push_back(std::stoi(t));
    return word;
}

}  // namespace ratseq::testutil
