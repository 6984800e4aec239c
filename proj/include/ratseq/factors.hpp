#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ratseq/dfao.hpp"
#include "ratseq/digit_word.hpp"
#include "ratseq/numeration.hpp"
#include "ratseq/rational_base.hpp"
#include "ratseq/signature.hpp"

namespace ratseq {

/// Where node decorations come from: a DFAO run over the tree, or an
/// explicit sequence of terms indexed by node rank.
class Decoration {
public:
    static Decoration automaton(Dfao d) {
        Decoration deco;
        deco.dfao_.emplace(std::move(d));
        return deco;
    }
    static Decoration sequence(std::vector<std::string> terms) {
        Decoration deco;
        deco.terms_ = std::move(terms);
        return deco;
    }
    static Decoration constant(const std::string& letter, int alphabet_size) {
        std::vector<int> alphabet(static_cast<std::size_t>(alphabet_size));
        for (int i = 0; i < alphabet_size; ++i) alphabet[static_cast<std::size_t>(i)] = i;
        return automaton(Dfao({"only"}, 0, std::move(alphabet),
                              {std::vector<int>(static_cast<std::size_t>(alphabet_size), 0)},
                              {letter}));
    }

    bool is_automaton() const { return dfao_.has_value(); }
    const Dfao& dfao() const { return *dfao_; }
    const std::vector<std::string>& terms() const { return terms_; }

    const std::string& term(NodeIndex n) const {
        if (n < 0 || static_cast<std::size_t>(n) >= terms_.size())
            throw Error("decoration: sequence too short, need index " + std::to_string(n) +
                        " but only " + std::to_string(terms_.size()) + " terms are available");
        return terms_[static_cast<std::size_t>(n)];
    }

private:
    std::optional<Dfao> dfao_;
    std::vector<std::string> terms_;
};

/// A height-h subtree snapshot: the prefix-closed domain of label words of
/// length <= h below some root, with a decoration on every node. Nodes are
/// stored in breadth-first (= radix) order; two factors are equal exactly
/// when they have the same labeled domain and the same decorations.
struct DecoratedFactor {
    struct Node {
        int parent;  // index into nodes; -1 for the root
        int label;   // edge label from the parent; -1 for the root
        int depth;
        std::string dec;

        friend bool operator==(const Node& a, const Node& b) {
            return a.parent == b.parent && a.label == b.label && a.depth == b.depth && a.dec == b.dec;
        }
    };

    int height = 0;
    bool is_root_factor = false;  // rooted at the empty word (prefix of the tree)
    std::vector<Node> nodes;

    /// Canonical key: the (parent, label, decoration) stream in radix order.
    /// Equal keys are equivalent to factor equality.
    std::string key() const {
        std::string s = "h" + std::to_string(height) + "\x1e";
        for (const Node& n : nodes) {
            s += std::to_string(n.parent);
            s += ',';
            s += std::to_string(n.label);
            s += '\x1f';
            s += n.dec;
            s += '\x1e';
        }
        return s;
    }

    /// Like key() but ignoring decorations (the bare labeled domain).
    std::string domain_key() const {
        std::string s = "h" + std::to_string(height) + "\x1e";
        for (const Node& n : nodes) {
            s += std::to_string(n.parent);
            s += ',';
            s += std::to_string(n.label);
            s += '\x1e';
        }
        return s;
    }

    /// Truncation at a smaller height. Breadth-first order lists nodes by
    /// non-decreasing depth, so this is a prefix of the node list.
    DecoratedFactor truncated(int h) const {
        if (h < 0 || h > height) throw Error("factor truncation: bad height");
        DecoratedFactor f;
        f.height = h;
        f.is_root_factor = is_root_factor;
        for (const Node& n : nodes) {
            if (n.depth > h) break;
            f.nodes.push_back(n);
        }
        return f;
    }

    /// The height-(h-1) subtree hanging from the root child reached by
    /// `label`.
    DecoratedFactor child_subtree(int label) const {
        int child = -1;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].parent == 0 && nodes[i].label == label) {
                child = static_cast<int>(i);
                break;
            }
        if (child < 0)
            throw Error("child_subtree: root has no child with label " + std::to_string(label));
        if (height < 1) throw Error("child_subtree: factor of height 0 has no proper subtree");
        std::vector<int> remap(nodes.size(), -1);
        DecoratedFactor f;
        f.height = height - 1;
        f.is_root_factor = false;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            bool keep = static_cast<int>(i) == child ||
                        (nodes[i].parent >= 0 && remap[static_cast<std::size_t>(nodes[i].parent)] >= 0);
            if (!keep) continue;
            remap[i] = static_cast<int>(f.nodes.size());
            Node n = nodes[i];
            if (static_cast<int>(i) == child) {
                n.parent = -1;
                n.label = -1;
            } else {
                n.parent = remap[static_cast<std::size_t>(n.parent)];
            }
            n.depth -= 1;
            f.nodes.push_back(n);
        }
        return f;
    }

    /// (relative word, decoration) pairs in radix order.
    std::vector<std::pair<DigitWord, std::string>> entries() const {
        std::vector<std::vector<int>> words(nodes.size());
        std::vector<std::pair<DigitWord, std::string>> out;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].parent >= 0) {
                words[i] = words[static_cast<std::size_t>(nodes[i].parent)];
                words[i].push_back(nodes[i].label);
            }
            out.emplace_back(DigitWord(words[i]), nodes[i].dec);
        }
        return out;
    }

    /// Last letter of the radix-least word of maximal depth; classifies the
    /// factor into F_{h,a}.
    int deepest_first_letter() const {
        for (const Node& n : nodes)
            if (n.depth == height) return n.label;
        throw Error("factor: no node at full depth");
    }

    friend bool operator==(const DecoratedFactor& a, const DecoratedFactor& b) {
        return a.height == b.height && a.nodes == b.nodes;
    }
    friend bool operator!=(const DecoratedFactor& a, const DecoratedFactor& b) { return !(a == b); }
};

namespace detail {

// Breadth-first scan of the height-h subtree below `root`. Calls
// visit(parent_index, label, depth, node_id, state) for every node in radix
// order; `state` is the DFAO state when the decoration is automaton-driven,
// otherwise -1.
template <typename Visit>
inline void scan_subtree(const LabeledSignature& sig, const Decoration& deco, NodeIndex root,
                         int root_state, int h, Visit&& visit) {
    struct Item {
        NodeIndex id;
        int state;
        int depth;
    };
    std::vector<Item> queue;
    queue.push_back({root, root_state, 0});
    visit(-1, -1, 0, root, root_state);
    for (std::size_t i = 0; i < queue.size(); ++i) {
        Item it = queue[i];
        if (it.depth == h) continue;
        int deg = sig.degree(it.id);
        for (int j = (it.id == 0 ? 1 : 0); j < deg; ++j) {
            TreeEdge e = child_index(sig, it.id, j);
            int state = deco.is_automaton() ? deco.dfao().step(it.state, e.label) : -1;
            visit(static_cast<int>(i), e.label, it.depth + 1, e.node, state);
            queue.push_back({e.node, state, it.depth + 1});
        }
    }
}

inline std::string deco_term(const Decoration& deco, NodeIndex id, int state) {
    return deco.is_automaton() ? deco.dfao().out(state) : deco.term(id);
}

inline int root_state_for(const LabeledSignature& sig, const Decoration& deco, NodeIndex root) {
    if (!deco.is_automaton()) return -1;
    return deco.dfao().run(deco.dfao().initial(), rep_ans(sig, root));
}

}  // namespace detail

/// The factor T[w, h]: domain w^{-1}L ∩ A^{<=h}, decorated by the sequence
/// terms x_{val(wu)}.
inline DecoratedFactor factor_at(const LabeledSignature& sig, const Decoration& deco,
                                 const DigitWord& w, int h) {
    if (h < 0) throw Error("factor_at: negative height");
    NodeIndex root = val_ans(sig, w);  // rejects words outside the language
    DecoratedFactor f;
    f.height = h;
    f.is_root_factor = (root == 0);
    int root_state = detail::root_state_for(sig, deco, root);
    detail::scan_subtree(sig, deco, root, root_state, h,
                         [&](int parent, int label, int depth, NodeIndex id, int state) {
                             f.nodes.push_back({parent, label, depth, detail::deco_term(deco, id, state)});
                         });
    return f;
}

struct FactorClass {
    DecoratedFactor rep;    // factor at the first root encountered
    std::string class_key;
    long long count = 0;
    NodeIndex first_root = 0;
    int min_level = 0;
    int max_level = 0;
    int deep_letter = -1;  // last letter of the radix-least depth-h word
};

/// Census of the factors T[n, h] over all roots n in the window [0, W).
/// Subtrees near the window edge extend past it; decorations there are
/// propagated (automaton) or looked up (explicit terms, which must cover all
/// touched node ranks).
struct FactorCensus {
    int height = 0;
    NodeIndex window = 0;
    int deepest_complete_level = 0;  // last level fully inside the window
    std::vector<FactorClass> classes;
    std::unordered_map<std::string, int> index;  // key -> class position
    long long distinct_domains = 0;

    long long class_count() const { return static_cast<long long>(classes.size()); }

    int find(const std::string& key) const {
        auto it = index.find(key);
        return it == index.end() ? -1 : it->second;
    }
};

inline FactorCensus census(const LabeledSignature& sig, const Decoration& deco, int h,
                           NodeIndex window) {
    if (h < 0) throw Error("census: negative height");
    if (window < 1) throw Error("census: empty window");
    if (window > 20000000) throw Error("census: window too large");

    FactorCensus cen;
    cen.height = h;
    cen.window = window;

    // States of all window nodes, propagated down the virtual tree.
    std::vector<int> state;
    if (deco.is_automaton()) {
        state.assign(static_cast<std::size_t>(window), 0);
        state[0] = deco.dfao().initial();
        for (NodeIndex m = 0; m < window; ++m) {
            int deg = sig.degree(m);
            for (int j = (m == 0 ? 1 : 0); j < deg; ++j) {
                TreeEdge e = child_index(sig, m, j);
                if (e.node >= window) break;
                state[static_cast<std::size_t>(e.node)] =
                    deco.dfao().step(state[static_cast<std::size_t>(m)], e.label);
            }
        }
    }

    std::vector<NodeIndex> level_starts{0, 1};  // level_starts[l] = first node of level l
    while (level_starts.back() <= window)
        level_starts.push_back(sig.first_child(level_starts.back()));
    cen.deepest_complete_level = static_cast<int>(level_starts.size()) - 3;
    // level l is complete when level_starts[l+1] <= window; the last pushed
    // start exceeds the window, so the level before it may be partial.

    std::unordered_set<std::string> domains;
    std::string keybuf;
    int level = 0;
    for (NodeIndex n = 0; n < window; ++n) {
        while (static_cast<std::size_t>(level + 1) < level_starts.size() &&
               n >= level_starts[static_cast<std::size_t>(level + 1)])
            ++level;
        keybuf.assign("h");
        keybuf += std::to_string(h);
        keybuf += '\x1e';
        std::string dombuf = keybuf;
        int deep_letter = -1;
        int root_state = deco.is_automaton() ? state[static_cast<std::size_t>(n)] : -1;
        detail::scan_subtree(sig, deco, n, root_state, h,
                             [&](int parent, int label, int depth, NodeIndex id, int st) {
                                 std::string head = std::to_string(parent) + ',' + std::to_string(label);
                                 keybuf += head;
                                 keybuf += '\x1f';
                                 keybuf += detail::deco_term(deco, id, st);
                                 keybuf += '\x1e';
                                 dombuf += head;
                                 dombuf += '\x1e';
                                 if (deep_letter < 0 && depth == h) deep_letter = label;
                             });
        domains.insert(dombuf);
        auto [it, inserted] = cen.index.emplace(keybuf, static_cast<int>(cen.classes.size()));
        if (inserted) {
            FactorClass cls;
            cls.rep = factor_at(sig, deco, rep_ans(sig, n), h);
            cls.class_key = keybuf;
            cls.count = 1;
            cls.first_root = n;
            cls.min_level = cls.max_level = level;
            cls.deep_letter = deep_letter;
            cen.classes.push_back(std::move(cls));
        } else {
            FactorClass& cls = cen.classes[static_cast<std::size_t>(it->second)];
            cls.count += 1;
            cls.min_level = std::min(cls.min_level, level);
            cls.max_level = std::max(cls.max_level, level);
        }
    }
    cen.distinct_domains = static_cast<long long>(domains.size());
    return cen;
}

/// Report for the congruence/domain lemma checks on a rational base: values
/// congruent mod q^h must see identical height-h domains, incongruent values
/// must share no length-h extension, and the length-h domains must partition
/// A_p^h into exactly q^h non-empty classes.
struct CongruenceReport {
    int height = 0;
    long long congruent_pairs = 0;
    long long incongruent_pairs = 0;
    std::vector<std::string> violations;
    long long domain_classes = 0;
    bool partition_ok = false;

    bool ok() const { return violations.empty() && partition_ok; }

    std::string summary() const {
        std::ostringstream out;
        out << "h=" << height << ": " << congruent_pairs << " congruent pairs, "
            << incongruent_pairs << " incongruent pairs, " << violations.size() << " violations; "
            << domain_classes << " domain classes, partition "
            << (partition_ok ? "ok" : "BROKEN");
        return out.str();
    }
};

namespace detail {

inline std::vector<std::vector<int>> domain_words(const LabeledSignature& sig, NodeIndex root,
                                                  int h, bool exact_length) {
    std::vector<std::vector<int>> words;
    struct Item {
        NodeIndex id;
        int depth;
        std::vector<int> word;
    };
    std::vector<Item> queue{{root, 0, {}}};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        Item it = queue[i];
        if (!exact_length || it.depth == h) words.push_back(it.word);
        if (it.depth == h) continue;
        int deg = sig.degree(it.id);
        for (int j = (it.id == 0 ? 1 : 0); j < deg; ++j) {
            TreeEdge e = child_index(sig, it.id, j);
            std::vector<int> w = it.word;
            w.push_back(e.label);
            queue.push_back({e.node, it.depth + 1, std::move(w)});
        }
    }
    return words;
}

inline long long pow_ll(long long b, int e, const char* who) {
    long long r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > 2000000000 / b) throw Error(std::string(who) + ": q^h too large");
        r *= b;
    }
    return r;
}

}  // namespace detail

inline CongruenceReport congruence_domain_check(const RationalBase& base, int h,
                                                long long sample_count, unsigned long long seed = 7) {
    if (h < 0) throw Error("congruence_domain_check: negative height");
    LabeledSignature sig = derive_rational_signature(base);
    const long long qh = detail::pow_ll(base.q, h, "congruence_domain_check");

    CongruenceReport rep;
    rep.height = h;

    std::mt19937_64 rng(seed);
    const NodeIndex max_value = 1000000;
    std::uniform_int_distribution<NodeIndex> pick(1, max_value);
    std::uniform_int_distribution<NodeIndex> pick_shift(1, 1000);

    for (long long i = 0; i < sample_count; ++i) {
        NodeIndex n = pick(rng);
        bool force_congruent = (i % 2 == 0);
        NodeIndex m = force_congruent ? n + pick_shift(rng) * qh : pick(rng);
        if (n == m) continue;
        bool congruent = (n % qh) == (m % qh);
        if (congruent) {
            ++rep.congruent_pairs;
            auto du = detail::domain_words(sig, n, h, false);
            auto dv = detail::domain_words(sig, m, h, false);
            if (du != dv)
                rep.violations.push_back("congruent values " + std::to_string(n) + ", " +
                                         std::to_string(m) + " have different height-" +
                                         std::to_string(h) + " domains");
        } else {
            ++rep.incongruent_pairs;
            auto du = detail::domain_words(sig, n, h, true);
            auto dv = detail::domain_words(sig, m, h, true);
            std::set<std::vector<int>> su(du.begin(), du.end());
            bool shared = false;
            for (const auto& w : dv)
                if (su.count(w)) {
                    shared = true;
                    break;
                }
            if (shared)
                rep.violations.push_back("incongruent values " + std::to_string(n) + ", " +
                                         std::to_string(m) + " share a length-" +
                                         std::to_string(h) + " extension");
        }
    }

    // Partition of A_p^h by the length-h domains of the q^h residues.
    std::map<std::vector<int>, long long> owner;
    long long total = 0;
    bool all_nonempty = true;
    bool disjoint = true;
    for (long long r = 0; r < qh; ++r) {
        NodeIndex node = (r == 0) ? qh : r;
        auto words = detail::domain_words(sig, node, h, true);
        if (words.empty()) all_nonempty = false;
        for (auto& w : words) {
            auto [it, inserted] = owner.emplace(std::move(w), r);
            if (!inserted && it->second != r) disjoint = false;
            else if (inserted) ++total;
        }
    }
    long long expected_total = 1;
    for (int i = 0; i < h; ++i) expected_total *= base.p;
    rep.domain_classes = qh;
    rep.partition_ok = all_nonempty && disjoint && total == expected_total;
    return rep;
}

/// Window-limited estimate of F_h^∞: classes whose roots reach level
/// `threshold_level` or deeper are marked infinite, the rest are prefix-only.
/// This is a HEURISTIC — a finite window cannot decide infinite repetition —
/// and is labeled as such wherever it is printed.
struct InfiniteEstimate {
    int height = 0;
    int threshold_level = 0;
    std::vector<int> infinite_classes;
    std::vector<int> prefix_classes;
    std::map<int, std::vector<int>> by_last_letter;  // F_{h,a} split of the infinite classes

    std::string describe(const FactorCensus& cen) const {
        std::ostringstream out;
        out << "HEURISTIC estimate at h=" << height << " (threshold level " << threshold_level
            << ", window " << cen.window << "): " << infinite_classes.size()
            << " infinite classes, " << prefix_classes.size() << " prefix-only";
        for (const auto& [letter, classes] : by_last_letter)
            out << "; F[" << height << "," << letter << "]=" << classes.size();
        return out.str();
    }
};

inline InfiniteEstimate infinite_factor_estimate(const FactorCensus& cen, int threshold_level) {
    InfiniteEstimate est;
    est.height = cen.height;
    est.threshold_level = threshold_level;
    for (std::size_t i = 0; i < cen.classes.size(); ++i) {
        if (cen.classes[i].max_level >= threshold_level) {
            est.infinite_classes.push_back(static_cast<int>(i));
            est.by_last_letter[cen.classes[i].deep_letter].push_back(static_cast<int>(i));
        } else {
            est.prefix_classes.push_back(static_cast<int>(i));
        }
    }
    return est;
}

/// For every infinite height-h class and every first letter c of a signature
/// word: the infinite height-(h+1) classes in F_{h+1,c} whose height-h
/// truncation is that class. Entries with two or more targets witness
/// failure of the unique-extension property.
struct ExtensionAnalysis {
    struct Entry {
        int class_h;
        int letter;
        std::vector<int> classes_h1;
    };
    std::vector<Entry> entries;
    std::vector<std::size_t> violations;  // entries with >= 2 extensions
};

inline ExtensionAnalysis extension_analysis(const LabeledSignature& sig, const FactorCensus& fh,
                                            const InfiniteEstimate& est_h, const FactorCensus& fh1,
                                            const InfiniteEstimate& est_h1) {
    if (fh1.height != fh.height + 1 || est_h.height != fh.height || est_h1.height != fh1.height)
        throw Error("extension_analysis: censuses must have heights h and h+1");
    std::map<std::pair<std::string, int>, std::vector<int>> table;
    for (int idx : est_h1.infinite_classes) {
        const FactorClass& cls = fh1.classes[static_cast<std::size_t>(idx)];
        std::string trunc_key = cls.rep.truncated(fh.height).key();
        table[{std::move(trunc_key), cls.deep_letter}].push_back(idx);
    }
    std::set<int> first_letters;
    for (const auto& w : sig.words()) first_letters.insert(w[0]);

    ExtensionAnalysis out;
    for (int idx : est_h.infinite_classes) {
        const std::string& key = fh.classes[static_cast<std::size_t>(idx)].class_key;
        for (int c : first_letters) {
            ExtensionAnalysis::Entry entry{idx, c, {}};
            auto it = table.find({key, c});
            if (it != table.end()) entry.classes_h1 = it->second;
            if (entry.classes_h1.size() >= 2) out.violations.push_back(out.entries.size());
            out.entries.push_back(std::move(entry));
        }
    }
    return out;
}

/// Semidecision of the distinguishing-extension hypothesis: search for words
/// u, v (canonical, non-empty, length <= max_len) with congruent values mod
/// q^h reaching different states that NO joint extension of length <= h
/// tells apart. Such a pair falsifies the hypothesis at h; absence up to the
/// bound proves nothing.
struct ConditionVerdict {
    bool fails = false;
    int height = 0;
    int max_len = 0;
    std::optional<std::pair<DigitWord, DigitWord>> witness;

    std::string describe() const {
        if (fails)
            return "FAILS(h=" + std::to_string(height) + "): u=" + to_text(witness->first) +
                   " v=" + to_text(witness->second);
        return "NO-COUNTEREXAMPLE-UP-TO(len=" + std::to_string(max_len) + ") at h=" +
               std::to_string(height);
    }
};

namespace detail {

inline std::vector<std::string> extension_profile(const Dfao& d, const LabeledSignature& sig,
                                                  NodeIndex residue_rep, int h, int state) {
    std::vector<std::string> profile;
    for (const auto& w : domain_words(sig, residue_rep, h, false))
        profile.push_back(d.out(d.run(state, DigitWord(w))));
    return profile;
}

}  // namespace detail

inline ConditionVerdict distinguishing_extension_check(const Dfao& d, const RationalBase& base,
                                                       int h, int max_len) {
    if (max_len < 1) throw Error("distinguishing_extension_check: max_len must be >= 1");
    LabeledSignature sig = derive_rational_signature(base);
    detail::check_alphabet_covers(d, sig);
    const long long qh = detail::pow_ll(base.q, h, "distinguishing_extension_check");
    if (qh > 1000000) throw Error("distinguishing_extension_check: q^h too large");

    ConditionVerdict verdict;
    verdict.height = h;
    verdict.max_len = max_len;

    NodeIndex end = sig.first_child(level_start(sig, max_len));  // first node of level max_len+1
    if (end > 20000000) throw Error("distinguishing_extension_check: search space too large");

    std::vector<int> state(static_cast<std::size_t>(end));
    state[0] = d.initial();
    for (NodeIndex m = 0; m < end; ++m) {
        int deg = sig.degree(m);
        for (int j = (m == 0 ? 1 : 0); j < deg; ++j) {
            TreeEdge e = child_index(sig, m, j);
            if (e.node >= end) break;
            state[static_cast<std::size_t>(e.node)] = d.step(state[static_cast<std::size_t>(m)], e.label);
        }
    }

    // residue -> (state -> first witness node)
    std::vector<std::map<int, NodeIndex>> by_residue(static_cast<std::size_t>(qh));
    for (NodeIndex n = 1; n < end; ++n)
        by_residue[static_cast<std::size_t>(n % qh)].emplace(state[static_cast<std::size_t>(n)], n);

    std::map<std::pair<long long, int>, std::vector<std::string>> profile_cache;
    auto profile = [&](long long residue, int s) -> const std::vector<std::string>& {
        auto key = std::make_pair(residue, s);
        auto it = profile_cache.find(key);
        if (it == profile_cache.end()) {
            NodeIndex rep_node = residue == 0 ? qh : residue;
            it = profile_cache.emplace(key, detail::extension_profile(d, sig, rep_node, h, s)).first;
        }
        return it->second;
    };

    for (long long r = 0; r < qh; ++r) {
        const auto& states_here = by_residue[static_cast<std::size_t>(r)];
        for (auto i = states_here.begin(); i != states_here.end(); ++i) {
            for (auto j = std::next(i); j != states_here.end(); ++j) {
                if (profile(r, i->first) == profile(r, j->first)) {
                    verdict.fails = true;
                    verdict.witness = {rep_ans(sig, i->second), rep_ans(sig, j->second)};
                    return verdict;
                }
            }
        }
    }
    return verdict;
}

/// Check a specific pair: true when u, v are congruent mod q^h, reach
/// distinct states, and no joint extension of length <= h separates their
/// outputs (i.e. the pair is a counterexample to the hypothesis).
inline bool condition_counterexample_pair(const Dfao& d, const RationalBase& base, int h,
                                          const DigitWord& u, const DigitWord& v) {
    if (u.empty() || v.empty())
        throw Error("condition_counterexample_pair: words must be non-empty");
    LabeledSignature sig = derive_rational_signature(base);
    NodeIndex nu = val_ans(sig, u);
    NodeIndex nv = val_ans(sig, v);
    const long long qh = detail::pow_ll(base.q, h, "condition_counterexample_pair");
    if (nu % qh != nv % qh) return false;
    int su = d.run(d.initial(), u);
    int sv = d.run(d.initial(), v);
    if (su == sv) return false;
    return detail::extension_profile(d, sig, nu, h, su) ==
           detail::extension_profile(d, sig, nu, h, sv);
}

/// Verdict on the census growth series #F_1..#F_H: a plateau is evidence of
/// a rational decorated tree; strict growth up to H decides nothing. Window
/// limited, so a probe rather than a proof.
struct RationalityVerdict {
    bool stabilized = false;
    int at_height = 0;  // first h with #F_h = #F_{h+1}, or H when growing
    std::string describe() const {
        if (stabilized) return "STABILIZED(h=" + std::to_string(at_height) + ")";
        return "STRICTLY-GROWING-UP-TO(" + std::to_string(at_height) + ")";
    }
};

inline RationalityVerdict rationality_probe(const std::vector<long long>& class_counts) {
    if (class_counts.size() < 2) throw Error("rationality_probe: need counts for at least two heights");
    RationalityVerdict v;
    for (std::size_t i = 0; i + 1 < class_counts.size(); ++i) {
        if (class_counts[i] == class_counts[i + 1]) {
            v.stabilized = true;
            v.at_height = static_cast<int>(i) + 1;
            return v;
        }
    }
    v.at_height = static_cast<int>(class_counts.size());
    return v;
}

/// DOT rendering of a decorated factor; decorations become node labels.
inline std::string factor_dot(const DecoratedFactor& f) {
    std::ostringstream out;
    out << "digraph factor {\n  rankdir=TB;\n";
    for (std::size_t i = 0; i < f.nodes.size(); ++i)
        out << "  n" << i << " [label=\"" << f.nodes[i].dec << "\"];\n";
    for (std::size_t i = 0; i < f.nodes.size(); ++i)
        if (f.nodes[i].parent >= 0)
            out << "  n" << f.nodes[i].parent << " -> n" << i << " [label=\"" << f.nodes[i].label
                << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace ratseq
