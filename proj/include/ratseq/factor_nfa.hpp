#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ratseq/dfao.hpp"
#include "ratseq/factors.hpp"
#include "ratseq/signature.hpp"

namespace ratseq {

/// Nondeterministic automaton assembled from factor data: the decorated
/// prefix of the tree plus one copy of every height-h factor assumed to
/// occur infinitely often. Finals carry the decoration of their node.
struct FactorNfa {
    std::vector<std::string> names;
    int initial = 0;
    std::vector<int> alphabet;
    std::vector<std::map<int, std::vector<int>>> delta;  // state -> label -> targets (sorted)
    std::vector<std::optional<std::string>> final_dec;

    int state_count() const { return static_cast<int>(names.size()); }
};

/// Input data for the construction. `prefix` is the decorated prefix of
/// height t+h-1; `infinite` lists the height-h factors taken to be in
/// F_h^∞; `entry[k]` names the infinite factor equal to the height-h factor
/// rooted at prefix node k (for nodes on level t); `extensions[{i, c}]` is
/// the unique height-(h+1) extension of factor i whose first deep word ends
/// with c — at most one per (factor, letter) by assumption.
struct FactorNfaInput {
    DecoratedFactor prefix;
    int t = 1;
    int h = 1;
    std::vector<DecoratedFactor> infinite;
    std::map<int, int> entry;
    std::map<std::pair<int, int>, DecoratedFactor> extensions;
};

inline FactorNfa build_factor_nfa(const FactorNfaInput& in) {
    if (in.t < 1) throw Error("factor nfa: threshold level t must be >= 1");
    if (in.h < 1) throw Error("factor nfa: height h must be >= 1");
    if (in.prefix.height != in.t + in.h - 1)
        throw Error("factor nfa: prefix height must be t+h-1");
    if (!in.prefix.is_root_factor) throw Error("factor nfa: prefix must be rooted at the empty word");

    std::map<std::string, int> factor_by_key;
    for (std::size_t i = 0; i < in.infinite.size(); ++i) {
        if (in.infinite[i].height != in.h)
            throw Error("factor nfa: infinite factor " + std::to_string(i) + " has wrong height");
        auto [it, inserted] = factor_by_key.emplace(in.infinite[i].key(), static_cast<int>(i));
        if (!inserted) throw Error("factor nfa: duplicate infinite factor");
    }
    for (const auto& [key, ext] : in.extensions) {
        auto [idx, letter] = key;
        if (idx < 0 || idx >= static_cast<int>(in.infinite.size()))
            throw Error("factor nfa: extension entry for unknown factor");
        if (ext.height != in.h + 1) throw Error("factor nfa: extension factor has wrong height");
        if (ext.truncated(in.h).nodes != in.infinite[static_cast<std::size_t>(idx)].nodes)
            throw Error("factor nfa: extension does not extend factor " + std::to_string(idx));
        if (ext.deepest_first_letter() != letter)
            throw Error("factor nfa: extension letter mismatch for factor " + std::to_string(idx));
    }

    FactorNfa nfa;
    const int prefix_count = static_cast<int>(in.prefix.nodes.size());
    for (int k = 0; k < prefix_count; ++k) nfa.names.push_back("q_" + std::to_string(k));
    std::vector<int> factor_offset;
    int counter = 0;
    for (const auto& f : in.infinite) {
        factor_offset.push_back(prefix_count + counter);
        for (std::size_t k = 0; k < f.nodes.size(); ++k)
            nfa.names.push_back(std::to_string(counter++));
    }
    nfa.initial = 0;
    nfa.delta.resize(nfa.names.size());
    nfa.final_dec.resize(nfa.names.size());

    std::set<int> letters;
    auto add_edge = [&](int from, int label, int to) {
        auto& targets = nfa.delta[static_cast<std::size_t>(from)][label];
        if (!std::count(targets.begin(), targets.end(), to)) targets.push_back(to);
        letters.insert(label);
    };

    // Prefix nodes and edges; every prefix node is final.
    for (int k = 0; k < prefix_count; ++k) {
        const auto& node = in.prefix.nodes[static_cast<std::size_t>(k)];
        if (node.parent >= 0) add_edge(node.parent, node.label, k);
        nfa.final_dec[static_cast<std::size_t>(k)] = node.dec;
    }
    // Factor copies; leaves (level exactly h) are final.
    for (std::size_t i = 0; i < in.infinite.size(); ++i) {
        const auto& f = in.infinite[i];
        int off = factor_offset[i];
        for (std::size_t k = 0; k < f.nodes.size(); ++k) {
            const auto& node = f.nodes[k];
            if (node.parent >= 0) add_edge(off + node.parent, node.label, off + static_cast<int>(k));
            if (node.depth == in.h) nfa.final_dec[static_cast<std::size_t>(off + k)] = node.dec;
        }
    }
    // Entry transitions: a prefix node m on level t-1 with child n on level t
    // also reaches the root of the infinite factor equal to T[n, h].
    for (int k = 0; k < prefix_count; ++k) {
        const auto& node = in.prefix.nodes[static_cast<std::size_t>(k)];
        if (node.depth != in.t || node.parent < 0) continue;
        auto it = in.entry.find(k);
        if (it == in.entry.end())
            throw Error("factor nfa: missing entry assignment for prefix node " + std::to_string(k));
        if (it->second < 0 || it->second >= static_cast<int>(in.infinite.size()))
            throw Error("factor nfa: entry assignment out of range");
        add_edge(node.parent, node.label, factor_offset[static_cast<std::size_t>(it->second)]);
    }
    // Extension transitions: from the root of factor i, reading the label d
    // of a root child, jump to the root of the height-h subtree V_{c,d} of
    // each extension U_c.
    for (std::size_t i = 0; i < in.infinite.size(); ++i) {
        const auto& f = in.infinite[i];
        for (const auto& node : f.nodes) {
            if (node.parent != 0 || node.depth != 1) continue;
            int d = node.label;
            for (const auto& [key, ext] : in.extensions) {
                if (key.first != static_cast<int>(i)) continue;
                DecoratedFactor sub = ext.child_subtree(d);
                auto it = factor_by_key.find(sub.key());
                if (it == factor_by_key.end())
                    throw Error("factor nfa: extension subtree of factor " + std::to_string(i) +
                                " under label " + std::to_string(d) +
                                " is not among the infinite factors");
                add_edge(factor_offset[i], d, factor_offset[static_cast<std::size_t>(it->second)]);
            }
        }
    }
    nfa.alphabet.assign(letters.begin(), letters.end());
    for (auto& row : nfa.delta)
        for (auto& [label, targets] : row) std::sort(targets.begin(), targets.end());
    return nfa;
}

/// All accepting runs (state sequences, length |w|+1) of the word.
inline std::vector<std::vector<int>> successful_runs(const FactorNfa& nfa, const DigitWord& w) {
    std::vector<std::vector<int>> done;
    std::vector<std::vector<int>> live{{nfa.initial}};
    for (int a : w) {
        std::vector<std::vector<int>> next;
        for (const auto& run : live) {
            const auto& row = nfa.delta[static_cast<std::size_t>(run.back())];
            auto it = row.find(a);
            if (it == row.end()) continue;
            for (int target : it->second) {
                std::vector<int> r = run;
                r.push_back(target);
                next.push_back(std::move(r));
            }
        }
        live = std::move(next);
        if (live.empty()) return done;
    }
    for (auto& run : live)
        if (nfa.final_dec[static_cast<std::size_t>(run.back())]) done.push_back(std::move(run));
    return done;
}

namespace detail {

// Merge output-equivalent states (Moore refinement via the
// distinguishability classes); keeps the subset construction's result
// canonical without exposing a general minimizer.
inline Dfao quotient_indistinguishable(const Dfao& d) {
    Distinguishability dis = distinguishability_classes(d);
    const int k = static_cast<int>(dis.classes.size());
    std::vector<int> rep(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) rep[static_cast<std::size_t>(c)] = dis.classes[static_cast<std::size_t>(c)][0];

    // Renumber classes in BFS order from the initial class for determinism.
    std::vector<int> order(static_cast<std::size_t>(k), -1);
    std::vector<int> bfs{dis.class_of[static_cast<std::size_t>(d.initial())]};
    order[static_cast<std::size_t>(bfs[0])] = 0;
    for (std::size_t i = 0; i < bfs.size(); ++i) {
        for (int a : d.alphabet()) {
            int target = dis.class_of[static_cast<std::size_t>(d.step(rep[static_cast<std::size_t>(bfs[i])], a))];
            if (order[static_cast<std::size_t>(target)] < 0) {
                order[static_cast<std::size_t>(target)] = static_cast<int>(bfs.size());
                bfs.push_back(target);
            }
        }
    }
    // Unreachable classes cannot occur (subset construction starts reachable).
    std::vector<std::string> names(bfs.size());
    std::vector<std::vector<int>> delta(bfs.size());
    std::vector<std::string> output(bfs.size());
    for (std::size_t i = 0; i < bfs.size(); ++i) {
        int cls = bfs[i];
        names[i] = std::to_string(i);
        output[i] = d.out(rep[static_cast<std::size_t>(cls)]);
        for (int a : d.alphabet())
            delta[i].push_back(order[static_cast<std::size_t>(
                dis.class_of[static_cast<std::size_t>(d.step(rep[static_cast<std::size_t>(cls)], a))])]);
    }
    return Dfao(std::move(names), 0, d.alphabet(), std::move(delta), std::move(output));
}

}  // namespace detail

/// Classical subset construction. Any subset containing final states must be
/// decoration-consistent (this is the unambiguity property made checkable;
/// a conflict signals invalid extension data); its decoration becomes the
/// output. Final-free subsets get the sentinel output. Output-equivalent
/// subsets are merged afterwards, so the result is canonical.
inline Dfao determinize(const FactorNfa& nfa, const std::string& sentinel = kSentinelOutput) {
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> subsets;
    std::vector<std::vector<int>> delta;
    std::vector<std::string> output;
    std::vector<std::string> names;

    auto subset_output = [&](const std::vector<int>& subset) -> std::string {
        std::set<std::string> decs;
        for (int s : subset)
            if (nfa.final_dec[static_cast<std::size_t>(s)])
                decs.insert(*nfa.final_dec[static_cast<std::size_t>(s)]);
        if (decs.empty()) return sentinel;
        if (decs.size() > 1) {
            std::ostringstream msg;
            msg << "determinize: decoration conflict in subset {";
            for (int s : subset) msg << ' ' << nfa.names[static_cast<std::size_t>(s)];
            msg << " }";
            throw Error(msg.str());
        }
        return *decs.begin();
    };

    std::vector<int> start{nfa.initial};
    ids[start] = 0;
    subsets.push_back(start);
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        std::vector<int> row;
        for (int a : nfa.alphabet) {
            std::set<int> moved;
            for (int s : subsets[i]) {
                const auto& r = nfa.delta[static_cast<std::size_t>(s)];
                auto it = r.find(a);
                if (it != r.end()) moved.insert(it->second.begin(), it->second.end());
            }
            std::vector<int> target(moved.begin(), moved.end());
            auto [it, inserted] = ids.emplace(std::move(target), static_cast<int>(subsets.size()));
            if (inserted) subsets.push_back(it->first);
            row.push_back(it->second);
        }
        delta.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        output.push_back(subset_output(subsets[i]));
        std::string name = "{";
        for (std::size_t j = 0; j < subsets[i].size(); ++j) {
            if (j > 0) name += ',';
            name += nfa.names[static_cast<std::size_t>(subsets[i][j])];
        }
        name += "}";
        names.push_back(std::move(name));
    }
    Dfao raw(std::move(names), 0, nfa.alphabet, std::move(delta), std::move(output));
    return detail::quotient_indistinguishable(raw);
}

/// Assemble the NFA input from window censuses: the prefix is read off the
/// tree, entry factors are extracted at level t, and extensions come from
/// matching height-(h+1) classes against their height-h truncations. A
/// (factor, letter) pair with two or more candidate extensions is an error —
/// the construction requires uniqueness.
inline FactorNfaInput nfa_input_from_censuses(const LabeledSignature& sig, const Decoration& deco,
                                              int t, int h, const FactorCensus& fh,
                                              const InfiniteEstimate& est_h, const FactorCensus& fh1,
                                              const InfiniteEstimate& est_h1) {
    if (t < 1) throw Error("nfa_input_from_censuses: t must be >= 1");
    ExtensionAnalysis analysis = extension_analysis(sig, fh, est_h, fh1, est_h1);

    FactorNfaInput in;
    in.t = t;
    in.h = h;
    in.prefix = factor_at(sig, deco, DigitWord({}, sig.alphabet_bound()), t + h - 1);

    std::map<int, int> class_to_infinite;  // census class index -> position in in.infinite
    for (int idx : est_h.infinite_classes) {
        class_to_infinite[idx] = static_cast<int>(in.infinite.size());
        in.infinite.push_back(fh.classes[static_cast<std::size_t>(idx)].rep);
    }
    std::map<std::string, int> key_to_infinite;
    for (std::size_t i = 0; i < in.infinite.size(); ++i)
        key_to_infinite[in.infinite[i].key()] = static_cast<int>(i);

    // Entry factors at level t of the prefix.
    std::vector<std::vector<int>> words(in.prefix.nodes.size());
    for (std::size_t k = 0; k < in.prefix.nodes.size(); ++k) {
        const auto& node = in.prefix.nodes[k];
        if (node.parent >= 0) {
            words[k] = words[static_cast<std::size_t>(node.parent)];
            words[k].push_back(node.label);
        }
        if (node.depth != t) continue;
        DecoratedFactor at = factor_at(sig, deco, DigitWord(words[k], sig.alphabet_bound()), h);
        auto it = key_to_infinite.find(at.key());
        if (it == key_to_infinite.end())
            throw Error("nfa_input_from_censuses: factor at level t is not marked infinite "
                        "(raise the window or lower the threshold)");
        in.entry[static_cast<int>(k)] = it->second;
    }

    for (const auto& entry : analysis.entries) {
        if (entry.classes_h1.empty()) continue;
        if (entry.classes_h1.size() > 1)
            throw Error("nfa_input_from_censuses: extension data is multi-valued for letter " +
                        std::to_string(entry.letter));
        auto pos = class_to_infinite.find(entry.class_h);
        if (pos == class_to_infinite.end()) continue;
        in.extensions[{pos->second, entry.letter}] =
            fh1.classes[static_cast<std::size_t>(entry.classes_h1[0])].rep;
    }
    return in;
}

}  // namespace ratseq
