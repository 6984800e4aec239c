#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ratseq/digit_word.hpp"
#include "ratseq/numeration.hpp"
#include "ratseq/rational_base.hpp"

namespace ratseq {

/// Node rank in the breadth-first enumeration of the i-tree; equals the
/// integer the node represents.
using NodeIndex = long long;

// Tree walks stay below this to keep child arithmetic inside int64.
inline constexpr NodeIndex kMaxNodeIndex = NodeIndex(1) << 60;

/// A purely periodic labeled signature (w_0, ..., w_{r-1})^ω. Each word has
/// strictly increasing letters, and w_0 = 0x with x non-empty, so the
/// generated i-tree has the root as its own first child (the label-0
/// self-loop that absorbs leading zeros). Node m of the tree has
/// |w_{m mod r}| children; its first child is
///   S(m) = (m div r)*P + sum of |w_k| for k < m mod r,
/// where P is the period degree.
class LabeledSignature {
public:
    explicit LabeledSignature(std::vector<std::vector<int>> words) : words_(std::move(words)) {
        if (words_.empty()) throw Error("signature: no words");
        for (const auto& w : words_) {
            if (w.empty()) throw Error("signature: empty word");
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (w[i] < 0) throw Error("signature: negative letter");
                if (i > 0 && w[i] <= w[i - 1])
                    throw Error("signature: letters must be strictly increasing");
            }
        }
        if (words_[0][0] != 0 || words_[0].size() < 2)
            throw Error("signature: w_0 must be 0x with x non-empty");
        prefix_.assign(words_.size() + 1, 0);
        alphabet_bound_ = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            prefix_[i + 1] = prefix_[i] + static_cast<long long>(words_[i].size());
            alphabet_bound_ = std::max(alphabet_bound_, words_[i].back() + 1);
        }
    }

    int period() const { return static_cast<int>(words_.size()); }
    long long period_degree() const { return prefix_.back(); }  // P
    const std::vector<int>& word(int i) const { return words_[i]; }
    const std::vector<std::vector<int>>& words() const { return words_; }
    int alphabet_bound() const { return alphabet_bound_; }

    int degree(NodeIndex m) const { return static_cast<int>(words_[phase(m)].size()); }
    int phase(NodeIndex m) const { return static_cast<int>(m % period()); }

    /// S(m): rank of the first child of node m, in O(1).
    NodeIndex first_child(NodeIndex m) const {
        if (m < 0 || m > kMaxNodeIndex) throw Error("signature: node index out of range");
        return (m / period()) * period_degree() + prefix_[m % period()];
    }

    /// True when no letter appears in two distinct signature words.
    bool has_disjoint_letters() const {
        std::set<int> seen;
        for (const auto& w : words_)
            for (int a : w)
                if (!seen.insert(a).second) return false;
        return true;
    }

    friend bool operator==(const LabeledSignature& a, const LabeledSignature& b) {
        return a.words_ == b.words_;
    }

private:
    std::vector<std::vector<int>> words_;
    std::vector<long long> prefix_;  // prefix_[i] = sum of |w_k|, k < i
    int alphabet_bound_ = 0;
};

struct TreeEdge {
    NodeIndex node;
    int label;
};

/// j-th child of node m and the label of the connecting edge. Note that
/// child_index(0, 0) is 0: the i-tree root is its own first child.
inline TreeEdge child_index(const LabeledSignature& sig, NodeIndex m, int j) {
    const auto& w = sig.word(sig.phase(m));
    if (j < 0 || j >= static_cast<int>(w.size()))
        throw Error("child_index: child position " + std::to_string(j) + " out of range for node " +
                    std::to_string(m));
    return {sig.first_child(m) + j, w[j]};
}

/// Unique (parent, label) of node n >= 1: the m with S(m) <= n < S(m)+deg(m),
/// found by integer division into the period.
inline TreeEdge parent_of(const LabeledSignature& sig, NodeIndex n) {
    if (n < 1) throw Error("parent_of: the root has no proper parent");
    const long long P = sig.period_degree();
    NodeIndex block = n / P;
    long long rem = n % P;
    // For b < r, first_child(b) is the prefix degree sum over w_0..w_{b-1}.
    int b = 0;
    while (b + 1 < sig.period() && sig.first_child(NodeIndex(b + 1)) <= rem) ++b;
    NodeIndex m = block * sig.period() + b;
    int j = static_cast<int>(rem - sig.first_child(NodeIndex(b)));
    return {m, sig.word(b)[j]};
}

/// Path label from the root to node n, self-loop excluded; rep_ans(0) = ε.
inline DigitWord rep_ans(const LabeledSignature& sig, NodeIndex n) {
    if (n < 0) throw Error("rep_ans: negative node index");
    std::vector<int> labels;
    while (n > 0) {
        TreeEdge e = parent_of(sig, n);
        labels.push_back(e.label);
        n = e.node;
    }
    std::reverse(labels.begin(), labels.end());
    return DigitWord(std::move(labels), sig.alphabet_bound());
}

/// Inverse of rep_ans: walks down the i-tree. Reading 0 at the root follows
/// the self-loop, so leading zeros are absorbed. A letter absent from the
/// current node's signature word is a "not in language" error.
inline NodeIndex val_ans(const LabeledSignature& sig, const DigitWord& w) {
    NodeIndex node = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto& sw = sig.word(sig.phase(node));
        auto it = std::find(sw.begin(), sw.end(), w[i]);
        if (it == sw.end())
            throw Error("val_ans: word '" + to_text(w) + "' leaves the language at position " +
                        std::to_string(i) + " (letter " + std::to_string(w[i]) + ")");
        node = child_index(sig, node, static_cast<int>(it - sw.begin())).node;
        if (node > kMaxNodeIndex / 4) throw Error("val_ans: node index overflow");
    }
    return node;
}

/// First `count` words of L(s) in radix order. Each word is its parent's
/// word extended by the edge label, so the whole batch costs O(total output
/// length).
inline std::vector<DigitWord> enumerate_words(const LabeledSignature& sig, NodeIndex count) {
    if (count < 1) throw Error("enumerate_words: count must be >= 1");
    std::vector<DigitWord> words;
    words.reserve(static_cast<std::size_t>(count));
    words.emplace_back(std::vector<int>{}, sig.alphabet_bound());
    for (NodeIndex n = 1; n < count; ++n) {
        TreeEdge e = parent_of(sig, n);
        words.push_back(words[static_cast<std::size_t>(e.node)].appended(e.label));
    }
    return words;
}

/// Rank of the first node on the given level (level 0 is the root).
inline NodeIndex level_start(const LabeledSignature& sig, int level) {
    if (level < 0) throw Error("level_start: negative level");
    if (level == 0) return 0;
    NodeIndex start = 1;
    for (int l = 1; l < level; ++l) {
        start = sig.first_child(start);
        if (start > kMaxNodeIndex / 4) throw Error("level_start: overflow");
    }
    return start;
}

inline int level_of(const LabeledSignature& sig, NodeIndex n) {
    if (n < 0) throw Error("level_of: negative node index");
    if (n == 0) return 0;
    int level = 1;
    NodeIndex start = 1;
    while (true) {
        NodeIndex next = sig.first_child(start);
        if (n < next) return level;
        start = next;
        ++level;
    }
}

/// Signature of the i-tree of L_{p/q}: q words over A_p where
/// w_j = { a in A_p : a ≡ -p*j (mod q) }, sorted increasingly. The word
/// degrees sum to p, and node m reaches node n with label a exactly when
/// n = (p*m + a)/q.
inline LabeledSignature derive_rational_signature(const RationalBase& base) {
    std::vector<std::vector<int>> words(static_cast<std::size_t>(base.q));
    for (long long j = 0; j < base.q; ++j) {
        long long residue = ((-base.p * j) % base.q + base.q) % base.q;
        for (int a = 0; a < base.p; ++a)
            if (a % base.q == residue) words[static_cast<std::size_t>(j)].push_back(a);
    }
    return LabeledSignature(std::move(words));
}

/// Rename the letters of a signature through a bijective letter map.
/// The result must again satisfy the signature invariants (words sorted,
/// w_0 starting with 0); useful when aligning trees that differ only in
/// their labels.
inline LabeledSignature relabel(const LabeledSignature& sig, const std::map<int, int>& letter_map) {
    std::vector<std::vector<int>> words;
    for (const auto& w : sig.words()) {
        std::vector<int> nw;
        for (int a : w) {
            auto it = letter_map.find(a);
            if (it == letter_map.end())
                throw Error("relabel: letter " + std::to_string(a) + " missing from map");
            nw.push_back(it->second);
        }
        std::sort(nw.begin(), nw.end());
        words.push_back(std::move(nw));
    }
    return LabeledSignature(std::move(words));
}

/// Signature text format: words separated by commas, each word in the digit
/// word format ("02,1", "048,159,2.6.10,37").
inline std::string to_text(const LabeledSignature& sig) {
    std::string s;
    for (int i = 0; i < sig.period(); ++i) {
        if (i > 0) s += ',';
        s += to_text(DigitWord(sig.word(i)));
    }
    return s;
}

inline LabeledSignature signature_from_text(const std::string& text) {
    std::vector<std::vector<int>> words;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        words.push_back(word_from_text(tok).digits());
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return LabeledSignature(std::move(words));
}

/// DOT rendering of the first `levels` levels of the i-tree, self-loop
/// included. Node naming is deterministic: node rank k becomes "n<k>".
inline std::string itree_dot(const LabeledSignature& sig, int levels) {
    if (levels < 0) throw Error("itree_dot: negative level count");
    NodeIndex end = level_start(sig, levels) == 0 ? 1 : sig.first_child(level_start(sig, levels));
    // `end` = first node beyond the last requested level.
    std::ostringstream out;
    out << "digraph itree {\n  rankdir=TB;\n";
    for (NodeIndex n = 0; n < end; ++n) out << "  n" << n << " [label=\"" << n << "\"];\n";
    out << "  n0 -> n0 [label=\"0\"];\n";
    for (NodeIndex n = 1; n < end; ++n) {
        TreeEdge e = parent_of(sig, n);
        out << "  n" << e.node << " -> n" << n << " [label=\"" << e.label << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace ratseq
