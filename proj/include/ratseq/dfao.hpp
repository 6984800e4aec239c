#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ratseq/digit_word.hpp"
#include "ratseq/numeration.hpp"
#include "ratseq/rational_base.hpp"
#include "ratseq/signature.hpp"

namespace ratseq {

/// Output letter for automaton states that no canonical representation can
/// reach (e.g. the sink completing a partial automaton).
inline constexpr const char* kSentinelOutput = "_";

/// Complete deterministic finite automaton with output: states Q, initial
/// state, digit alphabet A, total transition map delta: Q x A -> Q and
/// output map tau: Q -> B. Output letters are strings; states are indices
/// with display names.
class Dfao {
public:
    Dfao(std::vector<std::string> names, int initial, std::vector<int> alphabet,
         std::vector<std::vector<int>> delta, std::vector<std::string> output)
        : names_(std::move(names)),
          initial_(initial),
          alphabet_(std::move(alphabet)),
          delta_(std::move(delta)),
          output_(std::move(output)) {
        const int n = state_count();
        if (n == 0) throw Error("dfao: no states");
        if (initial_ < 0 || initial_ >= n) throw Error("dfao: initial state out of range");
        if (alphabet_.empty()) throw Error("dfao: empty alphabet");
        if (!std::is_sorted(alphabet_.begin(), alphabet_.end()) ||
            std::adjacent_find(alphabet_.begin(), alphabet_.end()) != alphabet_.end())
            throw Error("dfao: alphabet must be sorted and duplicate-free");
        if (alphabet_.front() < 0) throw Error("dfao: negative digit in alphabet");
        if (static_cast<int>(delta_.size()) != n || static_cast<int>(output_.size()) != n)
            throw Error("dfao: delta/output size mismatch");
        for (const auto& row : delta_) {
            if (row.size() != alphabet_.size()) throw Error("dfao: delta must be total");
            for (int t : row)
                if (t < 0 || t >= n) throw Error("dfao: transition target out of range");
        }
        digit_to_index_.assign(static_cast<std::size_t>(alphabet_.back()) + 1, -1);
        for (std::size_t i = 0; i < alphabet_.size(); ++i)
            digit_to_index_[static_cast<std::size_t>(alphabet_[i])] = static_cast<int>(i);
    }

    int state_count() const { return static_cast<int>(names_.size()); }
    int initial() const { return initial_; }
    const std::string& name(int s) const { return names_[static_cast<std::size_t>(s)]; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& alphabet() const { return alphabet_; }
    const std::string& out(int s) const { return output_[static_cast<std::size_t>(s)]; }
    const std::vector<std::string>& outputs() const { return output_; }
    const std::vector<std::vector<int>>& delta() const { return delta_; }

    int digit_index(int a) const {
        if (a < 0 || a >= static_cast<int>(digit_to_index_.size()) ||
            digit_to_index_[static_cast<std::size_t>(a)] < 0)
            throw Error("dfao: digit " + std::to_string(a) + " not in alphabet");
        return digit_to_index_[static_cast<std::size_t>(a)];
    }

    bool has_digit(int a) const {
        return a >= 0 && a < static_cast<int>(digit_to_index_.size()) &&
               digit_to_index_[static_cast<std::size_t>(a)] >= 0;
    }

    int step(int s, int a) const { return delta_[static_cast<std::size_t>(s)][static_cast<std::size_t>(digit_index(a))]; }

    int run(int s, const DigitWord& w) const {
        for (int a : w) s = step(s, a);
        return s;
    }

private:
    std::vector<std::string> names_;
    int initial_;
    std::vector<int> alphabet_;
    std::vector<std::vector<int>> delta_;
    std::vector<std::string> output_;
    std::vector<int> digit_to_index_;
};

/// Acceptor variant: same transition structure, final states instead of
/// outputs.
struct Dfa {
    std::vector<std::string> names;
    int initial = 0;
    std::vector<int> alphabet;
    std::vector<std::vector<int>> delta;
    std::vector<bool> final_state;
};

inline bool accepts(const Dfa& dfa, const DigitWord& w) {
    int s = dfa.initial;
    for (int a : w) {
        auto it = std::find(dfa.alphabet.begin(), dfa.alphabet.end(), a);
        if (it == dfa.alphabet.end()) return false;
        s = dfa.delta[static_cast<std::size_t>(s)][static_cast<std::size_t>(it - dfa.alphabet.begin())];
    }
    return dfa.final_state[static_cast<std::size_t>(s)];
}

enum class Reading { msd_first, lsd_first };

/// A DFAO together with the numeration system it reads and the reading
/// direction; this is the sequence (x_n) with x_n the output of the run on
/// rep(n) (reversed first when reading lsd-first).
struct SequenceView {
    Dfao dfao;
    LabeledSignature sig;
    std::optional<RationalBase> base;
    Reading reading = Reading::msd_first;
};

namespace detail {
inline void check_alphabet_covers(const Dfao& d, const LabeledSignature& sig) {
    for (const auto& w : sig.words())
        for (int a : w)
            if (!d.has_digit(a))
                throw Error("sequence view: signature letter " + std::to_string(a) +
                            " missing from DFAO alphabet");
}
}  // namespace detail

inline SequenceView make_view(Dfao d, const RationalBase& base, Reading reading = Reading::msd_first) {
    LabeledSignature sig = derive_rational_signature(base);
    detail::check_alphabet_covers(d, sig);
    return SequenceView{std::move(d), std::move(sig), base, reading};
}

inline SequenceView make_view(Dfao d, LabeledSignature sig, Reading reading = Reading::msd_first) {
    detail::check_alphabet_covers(d, sig);
    return SequenceView{std::move(d), std::move(sig), std::nullopt, reading};
}

/// x_n for a single index.
inline std::string eval(const SequenceView& view, NodeIndex n) {
    DigitWord w = rep_ans(view.sig, n);
    if (view.reading == Reading::lsd_first) w = w.reversed();
    return view.dfao.out(view.dfao.run(view.dfao.initial(), w));
}

/// First `count` terms. For msd-first views the states are propagated down
/// the virtual tree (the state at node n extends its parent's run by one
/// digit), which is O(count). Lsd-first views evaluate index by index.
inline std::vector<std::string> sequence_prefix(const SequenceView& view, NodeIndex count) {
    if (count < 1) throw Error("sequence_prefix: count must be >= 1");
    std::vector<std::string> terms;
    terms.reserve(static_cast<std::size_t>(count));
    if (view.reading == Reading::lsd_first) {
        for (NodeIndex n = 0; n < count; ++n) terms.push_back(eval(view, n));
        return terms;
    }
    std::vector<int> state(static_cast<std::size_t>(count));
    state[0] = view.dfao.initial();
    for (NodeIndex m = 0; m < count; ++m) {
        int deg = view.sig.degree(m);
        for (int j = (m == 0 ? 1 : 0); j < deg; ++j) {
            TreeEdge e = child_index(view.sig, m, j);
            if (e.node >= count) break;
            state[static_cast<std::size_t>(e.node)] = view.dfao.step(state[static_cast<std::size_t>(m)], e.label);
        }
    }
    for (NodeIndex n = 0; n < count; ++n)
        terms.push_back(view.dfao.out(state[static_cast<std::size_t>(n)]));
    return terms;
}

/// Concatenation of sequence terms; callers should only join single-character
/// output alphabets.
inline std::string join(const std::vector<std::string>& terms) {
    std::string s;
    for (const auto& t : terms) s += t;
    return s;
}

/// Post-compose the output map with a coding g (must cover the range of tau).
inline Dfao apply_coding(const Dfao& d, const std::map<std::string, std::string>& g) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(d.state_count()));
    for (int s = 0; s < d.state_count(); ++s) {
        auto it = g.find(d.out(s));
        if (it == g.end()) throw Error("apply_coding: coding undefined on letter '" + d.out(s) + "'");
        out.push_back(it->second);
    }
    return Dfao(d.names(), d.initial(), d.alphabet(), d.delta(), std::move(out));
}

/// A DFAO whose sequence equals the view's except at finitely many indices.
/// States are the exact words read (a trie over the alphabet) up to the
/// length of the longest overridden representation, then collapse to the
/// original states.
inline Dfao patch_finite(const SequenceView& view, const std::map<NodeIndex, std::string>& overrides) {
    if (view.reading != Reading::msd_first)
        throw Error("patch_finite: expected an msd-first view");
    const Dfao& d = view.dfao;
    if (overrides.empty()) return d;

    std::size_t max_len = 0;
    std::map<std::vector<int>, std::string> override_words;
    for (const auto& [n, letter] : overrides) {
        if (n < 0) throw Error("patch_finite: negative index");
        DigitWord w = rep_ans(view.sig, n);
        max_len = std::max(max_len, w.size());
        override_words[w.digits()] = letter;
    }
    double trie_estimate = 1;
    for (std::size_t i = 0; i < max_len; ++i) trie_estimate *= static_cast<double>(d.alphabet().size());
    if (trie_estimate > 2e5) throw Error("patch_finite: override representations too long");

    struct TrieNode {
        std::vector<int> word;
        int base_state;
    };
    std::vector<TrieNode> trie;
    trie.push_back({{}, d.initial()});
    for (std::size_t i = 0; i < trie.size(); ++i) {
        if (trie[i].word.size() >= max_len) continue;
        for (int a : d.alphabet()) {
            std::vector<int> w = trie[i].word;
            w.push_back(a);
            trie.push_back({std::move(w), d.step(trie[i].base_state, a)});
        }
    }
    std::map<std::vector<int>, int> trie_id;
    for (std::size_t i = 0; i < trie.size(); ++i) trie_id[trie[i].word] = static_cast<int>(i);

    const int offset = static_cast<int>(trie.size());
    std::vector<std::string> names;
    std::vector<std::vector<int>> delta;
    std::vector<std::string> output;
    for (const auto& node : trie) {
        names.push_back("w:" + to_text(DigitWord(node.word)));
        std::vector<int> row;
        for (int a : d.alphabet()) {
            std::vector<int> w = node.word;
            w.push_back(a);
            auto it = trie_id.find(w);
            row.push_back(it != trie_id.end() ? it->second : offset + d.step(node.base_state, a));
        }
        delta.push_back(std::move(row));
        auto ov = override_words.find(node.word);
        output.push_back(ov != override_words.end() ? ov->second : d.out(node.base_state));
    }
    for (int s = 0; s < d.state_count(); ++s) {
        names.push_back("s:" + d.name(s));
        std::vector<int> row;
        for (int a : d.alphabet()) row.push_back(offset + d.step(s, a));
        delta.push_back(std::move(row));
        output.push_back(d.out(s));
    }
    return Dfao(std::move(names), 0, d.alphabet(), std::move(delta), std::move(output));
}

/// Lsd-first automaton equivalent to d: reading rep(n) reversed gives d's
/// output on rep(n). States are the reachable maps F: Q -> Q (reading digits
/// a_0..a_i builds s -> delta(s, a_i...a_0)); the output of F is
/// tau(F(q_0)).
inline Dfao reverse_reading(const Dfao& d, std::size_t state_limit = 1000000) {
    const int n = d.state_count();
    std::vector<int> identity(static_cast<std::size_t>(n));
    std::iota(identity.begin(), identity.end(), 0);

    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> functions;
    std::vector<std::vector<int>> delta;
    ids[identity] = 0;
    functions.push_back(identity);
    for (std::size_t i = 0; i < functions.size(); ++i) {
        std::vector<int> row;
        for (int a : d.alphabet()) {
            std::vector<int> g(static_cast<std::size_t>(n));
            for (int s = 0; s < n; ++s)
                g[static_cast<std::size_t>(s)] = functions[i][static_cast<std::size_t>(d.step(s, a))];
            auto [it, inserted] = ids.emplace(std::move(g), static_cast<int>(functions.size()));
            if (inserted) {
                functions.push_back(it->first);
                if (functions.size() > state_limit)
                    throw Error("reverse_reading: reachable function count exceeds limit");
            }
            row.push_back(it->second);
        }
        delta.push_back(std::move(row));
    }
    std::vector<std::string> names;
    std::vector<std::string> output;
    for (std::size_t i = 0; i < functions.size(); ++i) {
        names.push_back("F" + std::to_string(i));
        output.push_back(d.out(functions[i][static_cast<std::size_t>(d.initial())]));
    }
    return Dfao(std::move(names), 0, d.alphabet(), std::move(delta), std::move(output));
}

/// DFA accepting the words whose run ends in a state with output `letter`.
/// Intersected with the numeration language this is the fiber of the letter.
inline Dfa fiber_acceptor(const Dfao& d, const std::string& letter) {
    Dfa dfa;
    dfa.names = d.names();
    dfa.initial = d.initial();
    dfa.alphabet = d.alphabet();
    dfa.delta = d.delta();
    dfa.final_state.resize(static_cast<std::size_t>(d.state_count()));
    for (int s = 0; s < d.state_count(); ++s)
        dfa.final_state[static_cast<std::size_t>(s)] = (d.out(s) == letter);
    return dfa;
}

/// DFAO over Z_m tracking the value of the node reached so far: reading
/// label a from a node with value r leads to value (p*r + a)/q, which is
/// q^{-1}(p*r + a) modulo m whenever gcd(m, q) = 1. The generated sequence is
/// outputs[n mod m]. The coprimality requirement is essential: without it
/// q has no inverse modulo m and the construction is unsound.
inline Dfao residue_dfao(const RationalBase& base, long long m,
                         const std::map<long long, std::string>& outputs) {
    if (m < 1) throw Error("residue_dfao: modulus must be positive");
    if (std::gcd(m, base.q) != 1)
        throw Error("residue_dfao: modulus " + std::to_string(m) + " shares a factor with q = " +
                    std::to_string(base.q));
    long long q_inv = 1;
    for (long long x = 0; x < m; ++x)
        if ((x * base.q) % m == 1 % m) { q_inv = x; break; }

    std::vector<std::string> names;
    std::vector<std::vector<int>> delta;
    std::vector<std::string> output;
    for (long long r = 0; r < m; ++r) {
        names.push_back(std::to_string(r));
        std::vector<int> row;
        for (int a = 0; a < base.p; ++a)
            row.push_back(static_cast<int>((q_inv * (base.p * r + a)) % m));
        delta.push_back(std::move(row));
        auto it = outputs.find(r);
        if (it == outputs.end())
            throw Error("residue_dfao: no output for residue " + std::to_string(r));
        output.push_back(it->second);
    }
    std::vector<int> alphabet(static_cast<std::size_t>(base.p));
    std::iota(alphabet.begin(), alphabet.end(), 0);
    return Dfao(std::move(names), 0, std::move(alphabet), std::move(delta), std::move(output));
}

/// Moore refinement starting from the output classes. `witness[{i,j}]` (i<j)
/// is the shortest word u with tau(delta(i,u)) != tau(delta(j,u)), ties
/// broken lexicographically.
struct Distinguishability {
    std::vector<std::vector<int>> classes;                    // indistinguishable groups
    std::vector<int> class_of;                                // state -> class id
    std::map<std::pair<int, int>, std::vector<int>> witness;  // distinguished pairs
};

inline Distinguishability distinguishability_classes(const Dfao& d) {
    const int n = d.state_count();
    Distinguishability res;
    std::vector<std::vector<int>> layer(static_cast<std::size_t>(n),
                                        std::vector<int>(static_cast<std::size_t>(n), -1));
    auto word_of = [&](int i, int j) -> std::vector<int>& {
        return res.witness[{std::min(i, j), std::max(i, j)}];
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (d.out(i) != d.out(j)) {
                layer[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 0;
                layer[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = 0;
                word_of(i, j) = {};
            }
    for (int round = 1;; ++round) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (layer[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] >= 0) continue;
                for (int a : d.alphabet()) {
                    int si = d.step(i, a), sj = d.step(j, a);
                    if (si == sj) continue;
                    if (layer[static_cast<std::size_t>(si)][static_cast<std::size_t>(sj)] == round - 1) {
                        layer[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = round;
                        layer[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = round;
                        std::vector<int> w{a};
                        const auto& tail = res.witness[{std::min(si, sj), std::max(si, sj)}];
                        w.insert(w.end(), tail.begin(), tail.end());
                        word_of(i, j) = std::move(w);
                        changed = true;
                        break;  // smallest digit wins the tie-break
                    }
                }
            }
        }
        if (!changed) break;
    }
    res.class_of.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (res.class_of[static_cast<std::size_t>(i)] >= 0) continue;
        int id = static_cast<int>(res.classes.size());
        res.classes.emplace_back();
        for (int j = i; j < n; ++j)
            if (res.class_of[static_cast<std::size_t>(j)] < 0 &&
                layer[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] < 0) {
                res.class_of[static_cast<std::size_t>(j)] = id;
                res.classes.back().push_back(j);
            }
    }
    return res;
}

}  // namespace ratseq
