#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ratseq/dfao.hpp"
#include "ratseq/signature.hpp"

namespace ratseq {

/// letter -> image word; letters are small integers.
using Morphism = std::map<int, std::vector<int>>;

/// r morphisms applied cyclically: the alternating fixed point starting with
/// `seed` is w = f_0(w_0) f_1(w_1) ... f_{i mod r}(w_i) ...
struct AlternatingSystem {
    std::vector<Morphism> morphisms;
    int seed = 0;

    int period() const { return static_cast<int>(morphisms.size()); }
};

/// Block substitution: a total map on length-r blocks, applied to consecutive
/// blocks of a word; a trailing incomplete block is ignored.
struct BlockSubstitution {
    int block_len = 1;
    std::map<std::vector<int>, std::vector<int>> images;
};

namespace detail {

inline const std::vector<int>& image(const Morphism& f, int letter, const char* who) {
    auto it = f.find(letter);
    if (it == f.end())
        throw Error(std::string(who) + ": morphism undefined on letter " + std::to_string(letter));
    return it->second;
}

inline std::set<int> system_alphabet(const AlternatingSystem& sys) {
    std::set<int> letters;
    for (const auto& f : sys.morphisms)
        for (const auto& [a, img] : f) {
            letters.insert(a);
            letters.insert(img.begin(), img.end());
        }
    return letters;
}

}  // namespace detail

/// First `count` letters of the alternating fixed point. Generation keeps a
/// cursor m over the word produced so far and appends f_{m mod r}(x_m);
/// prolongability of f_0 on the seed guarantees the cursor never catches up
/// as long as images stay non-empty (checked while expanding).
inline std::vector<int> alternating_prefix(const AlternatingSystem& sys, long long count) {
    if (count < 0) throw Error("alternating_prefix: negative count");
    if (sys.morphisms.empty()) throw Error("alternating_prefix: no morphisms");
    const int r = sys.period();
    const std::vector<int>& first = detail::image(sys.morphisms[0], sys.seed, "alternating_prefix");
    if (first.size() < 2 || first[0] != sys.seed)
        throw Error("alternating_prefix: f_0 is not prolongable on the seed");
    std::vector<int> x = first;
    for (long long m = 1; static_cast<long long>(x.size()) < count; ++m) {
        if (m >= static_cast<long long>(x.size()))
            throw Error("alternating_prefix: expansion stalls at position " + std::to_string(m));
        const std::vector<int>& img = detail::image(
            sys.morphisms[static_cast<std::size_t>(m % r)], x[static_cast<std::size_t>(m)],
            "alternating_prefix");
        if (img.empty())
            throw Error("alternating_prefix: empty image blocks growth at position " +
                        std::to_string(m));
        x.insert(x.end(), img.begin(), img.end());
    }
    x.resize(static_cast<std::size_t>(count));
    return x;
}

/// The r-block substitution with g(a_0...a_{r-1}) = f_0(a_0)...f_{r-1}(a_{r-1});
/// its fixed point from the matching seed block equals the alternating fixed
/// point.
inline BlockSubstitution to_block_substitution(const AlternatingSystem& sys) {
    if (sys.morphisms.empty()) throw Error("to_block_substitution: no morphisms");
    const int r = sys.period();
    std::set<int> letters = detail::system_alphabet(sys);
    if (letters.empty()) throw Error("to_block_substitution: empty alphabet");
    double block_count = 1;
    for (int i = 0; i < r; ++i) block_count *= static_cast<double>(letters.size());
    if (block_count > 1e6) throw Error("to_block_substitution: alphabet^r too large");

    std::vector<int> alpha(letters.begin(), letters.end());
    BlockSubstitution g;
    g.block_len = r;
    std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
    while (true) {
        std::vector<int> block;
        for (int i = 0; i < r; ++i) block.push_back(alpha[idx[static_cast<std::size_t>(i)]]);
        std::vector<int> img;
        for (int i = 0; i < r; ++i) {
            const auto& part = detail::image(sys.morphisms[static_cast<std::size_t>(i)],
                                             block[static_cast<std::size_t>(i)],
                                             "to_block_substitution");
            img.insert(img.end(), part.begin(), part.end());
        }
        g.images[std::move(block)] = std::move(img);
        int i = r - 1;
        while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == alpha.size()) {
            idx[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return g;
}

/// First `count` letters of the fixed point of g starting with the given
/// seed. The word is consumed block by block while its image stream is laid
/// down over it; every produced letter overlapping the already-known prefix
/// is verified. A block may reach into letters its own image is about to
/// produce; those letters are solved for by trying every alphabet value and
/// keeping the unique consistent choice.
inline std::vector<int> block_fixed_prefix(const BlockSubstitution& g, const std::vector<int>& seed,
                                           long long count) {
    if (count < 0) throw Error("block_fixed_prefix: negative count");
    const int r = g.block_len;
    if (static_cast<int>(seed.size()) < r)
        throw Error("block_fixed_prefix: seed shorter than the block length");

    std::set<int> letters;
    for (const auto& [block, img] : g.images) {
        letters.insert(block.begin(), block.end());
        letters.insert(img.begin(), img.end());
    }
    letters.insert(seed.begin(), seed.end());
    const std::vector<int> alpha(letters.begin(), letters.end());

    auto image_of = [&](const std::vector<int>& block) -> const std::vector<int>* {
        auto it = g.images.find(block);
        return it == g.images.end() ? nullptr : &it->second;
    };

    {
        std::vector<int> first_block(seed.begin(), seed.begin() + r);
        const std::vector<int>* img = image_of(first_block);
        if (img == nullptr)
            throw Error("block_fixed_prefix: substitution undefined on the seed block");
        for (std::size_t i = 0; i < std::min(img->size(), first_block.size()); ++i)
            if ((*img)[i] != first_block[i])
                throw Error("block_fixed_prefix: image of the seed block does not extend it");
    }

    std::vector<int> x = seed;  // known letters; positions < gen are verified
    long long gen = 0;          // length of the generated (verified) prefix
    for (long long k = 0; gen < count; ++k) {
        const long long lo = k * r;
        const long long hi = lo + r;
        std::vector<long long> unknown;
        for (long long pos = std::max(lo, static_cast<long long>(x.size())); pos < hi; ++pos)
            unknown.push_back(pos);

        std::vector<int> block(static_cast<std::size_t>(r), -1);
        for (long long pos = lo; pos < hi; ++pos)
            if (pos < static_cast<long long>(x.size()))
                block[static_cast<std::size_t>(pos - lo)] = x[static_cast<std::size_t>(pos)];

        const std::vector<int>* img = nullptr;
        if (unknown.empty()) {
            img = image_of(block);
            if (img == nullptr)
                throw Error("block_fixed_prefix: substitution not total (block at position " +
                            std::to_string(lo) + ")");
        } else {
            // The unknown letters sit inside this block's own image: letter at
            // position pos is image letter pos - gen.
            std::vector<int> chosen;
            const std::vector<int>* chosen_img = nullptr;
            std::vector<std::size_t> sel(unknown.size(), 0);
            while (true) {
                std::vector<int> cand = block;
                for (std::size_t u = 0; u < unknown.size(); ++u)
                    cand[static_cast<std::size_t>(unknown[u] - lo)] = alpha[sel[u]];
                const std::vector<int>* ci = image_of(cand);
                if (ci == nullptr)
                    throw Error("block_fixed_prefix: substitution not total (block at position " +
                                std::to_string(lo) + ")");
                bool ok = true;
                for (long long pos : unknown) {
                    long long off = pos - gen;
                    if (off < 0 || off >= static_cast<long long>(ci->size())) {
                        ok = false;  // letter not produced by this block: cannot verify
                        break;
                    }
                    if ((*ci)[static_cast<std::size_t>(off)] != cand[static_cast<std::size_t>(pos - lo)]) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    if (chosen_img != nullptr)
                        throw Error("block_fixed_prefix: ambiguous continuation at position " +
                                    std::to_string(lo));
                    chosen = cand;
                    chosen_img = ci;
                }
                std::size_t i = unknown.size();
                while (i > 0 && ++sel[i - 1] == alpha.size()) sel[--i] = 0;
                if (i == 0) break;
            }
            if (chosen_img == nullptr)
                throw Error("block_fixed_prefix: no consistent continuation at position " +
                            std::to_string(lo) + " (not a fixed point)");
            img = chosen_img;
            for (long long pos : unknown)
                if (pos == static_cast<long long>(x.size()))
                    x.push_back(chosen[static_cast<std::size_t>(pos - lo)]);
        }

        for (std::size_t t = 0; t < img->size(); ++t) {
            long long pos = gen + static_cast<long long>(t);
            if (pos < static_cast<long long>(x.size())) {
                if (x[static_cast<std::size_t>(pos)] != (*img)[t])
                    throw Error("block_fixed_prefix: iterate disagrees with known prefix at index " +
                                std::to_string(pos));
            } else {
                x.push_back((*img)[t]);
            }
        }
        gen += static_cast<long long>(img->size());
    }
    x.resize(static_cast<std::size_t>(count));
    return x;
}

/// State-sequence system of a DFAO over the i-tree of `sig`: morphisms over
/// the state alphabet with f_i(s) = delta(s, w_{i,0}) ... delta(s, w_{i,last}),
/// seeded at the initial state. The alternating fixed point is the sequence
/// of states reached when reading L(s) in radix order — provided the initial
/// state absorbs the label of the root self-loop (delta(q_0, w_{0,0}) = q_0),
/// which holds for every automaton that ignores leading zeros.
inline AlternatingSystem dfao_to_alternating(const Dfao& d, const LabeledSignature& sig) {
    detail::check_alphabet_covers(d, sig);
    AlternatingSystem sys;
    sys.seed = d.initial();
    for (int i = 0; i < sig.period(); ++i) {
        Morphism f;
        for (int s = 0; s < d.state_count(); ++s) {
            std::vector<int> img;
            for (int a : sig.word(i)) img.push_back(d.step(s, a));
            f[s] = std::move(img);
        }
        sys.morphisms.push_back(std::move(f));
    }
    return sys;
}

struct MorphicBridge {
    LabeledSignature sig;  // blocks of consecutive integers, one per morphism
    Dfao dfa;              // states are the letters; output is the state itself
};

/// The converse construction: uniform morphisms of lengths l_0..l_{r-1} give
/// the signature (0...l_0-1, l_0...l_0+l_1-1, ...) over consecutive digits
/// and a DFA on the letter set with delta(b, i) = [f_j(b)]_t where
/// i = l_0+...+l_{j-1} + t. Reading rep(n) yields the n-th letter of the
/// alternating fixed point.
inline MorphicBridge alternating_to_dfao(const AlternatingSystem& sys) {
    if (sys.morphisms.empty()) throw Error("alternating_to_dfao: no morphisms");
    const int r = sys.period();
    std::set<int> letters = detail::system_alphabet(sys);
    std::vector<int> alpha(letters.begin(), letters.end());
    std::map<int, int> letter_index;
    for (std::size_t i = 0; i < alpha.size(); ++i) letter_index[alpha[i]] = static_cast<int>(i);

    std::vector<int> lengths;
    for (int i = 0; i < r; ++i) {
        std::size_t len = 0;
        bool first = true;
        for (int a : alpha) {
            const auto& img = detail::image(sys.morphisms[static_cast<std::size_t>(i)], a,
                                            "alternating_to_dfao");
            if (first) {
                len = img.size();
                first = false;
            } else if (img.size() != len) {
                throw Error("alternating_to_dfao: morphism " + std::to_string(i) + " is not uniform");
            }
        }
        if (len == 0) throw Error("alternating_to_dfao: erasing morphism " + std::to_string(i));
        lengths.push_back(static_cast<int>(len));
    }
    const auto& first = detail::image(sys.morphisms[0], sys.seed, "alternating_to_dfao");
    if (first.size() < 2 || first[0] != sys.seed)
        throw Error("alternating_to_dfao: f_0 is not prolongable on the seed");

    std::vector<std::vector<int>> sig_words;
    int next_digit = 0;
    for (int len : lengths) {
        std::vector<int> w(static_cast<std::size_t>(len));
        std::iota(w.begin(), w.end(), next_digit);
        next_digit += len;
        sig_words.push_back(std::move(w));
    }

    std::vector<std::string> names;
    std::vector<std::string> output;
    for (int a : alpha) {
        names.push_back(std::to_string(a));
        output.push_back(std::to_string(a));
    }
    std::vector<int> alphabet(static_cast<std::size_t>(next_digit));
    std::iota(alphabet.begin(), alphabet.end(), 0);
    std::vector<std::vector<int>> delta;
    for (int b : alpha) {
        std::vector<int> row;
        for (int i = 0; i < next_digit; ++i) {
            int j = 0, base = 0;
            while (i >= base + lengths[static_cast<std::size_t>(j)]) {
                base += lengths[static_cast<std::size_t>(j)];
                ++j;
            }
            int t = i - base;
            int target = detail::image(sys.morphisms[static_cast<std::size_t>(j)], b,
                                       "alternating_to_dfao")[static_cast<std::size_t>(t)];
            row.push_back(letter_index.at(target));
        }
        delta.push_back(std::move(row));
    }
    return MorphicBridge{LabeledSignature(std::move(sig_words)),
                         Dfao(std::move(names), letter_index.at(sys.seed), std::move(alphabet),
                              std::move(delta), std::move(output))};
}

/// Round trip through both constructions: the DFAO sequence, the tau-coded
/// alternating fixed point of its state system, and the sequence of the
/// reconstructed automaton must agree on the first `count` terms.
inline bool cobham_roundtrip_check(const Dfao& d, const LabeledSignature& sig, long long count) {
    std::vector<std::string> direct = sequence_prefix(make_view(d, sig), count);

    AlternatingSystem sys = dfao_to_alternating(d, sig);
    std::vector<int> states = alternating_prefix(sys, count);
    for (long long i = 0; i < count; ++i)
        if (d.out(states[static_cast<std::size_t>(i)]) != direct[static_cast<std::size_t>(i)])
            return false;

    MorphicBridge bridge = alternating_to_dfao(sys);
    std::vector<std::string> rebuilt = sequence_prefix(make_view(bridge.dfa, bridge.sig), count);
    for (long long i = 0; i < count; ++i) {
        int state_letter = std::stoi(rebuilt[static_cast<std::size_t>(i)]);
        if (d.out(state_letter) != direct[static_cast<std::size_t>(i)]) return false;
    }
    return true;
}

/// The p-block substitution over {0,1} mapping a block a.u (letter a, word u
/// of length p-1) to g_0(a) followed by the bitwise complement of u, where
/// g_0: 0 -> 01, 1 -> 00. Images have length p+1.
inline BlockSubstitution lepisto_substitution(int p) {
    if (p < 2) throw Error("lepisto_substitution: p must be >= 2");
    if (p > 20) throw Error("lepisto_substitution: 2^p blocks is too large");
    BlockSubstitution g;
    g.block_len = p;
    for (int mask = 0; mask < (1 << p); ++mask) {
        std::vector<int> block;
        for (int i = p - 1; i >= 0; --i) block.push_back((mask >> i) & 1);
        std::vector<int> img = block[0] == 0 ? std::vector<int>{0, 1} : std::vector<int>{0, 0};
        for (int i = 1; i < p; ++i) img.push_back(1 - block[static_cast<std::size_t>(i)]);
        g.images[std::move(block)] = std::move(img);
    }
    return g;
}

/// Number of distinct length-n factors of a finite word: a lower bound for
/// the complexity of any infinite word it prefixes. Exact hashing of factor
/// slices, O(|w| * n).
inline long long factor_complexity(const std::vector<int>& w, std::size_t n) {
    if (n > w.size()) throw Error("factor_complexity: factor length exceeds the word");
    if (n == 0) return 1;
    std::unordered_set<std::string_view> seen;
    seen.reserve(w.size());
    const char* bytes = reinterpret_cast<const char*>(w.data());
    for (std::size_t i = 0; i + n <= w.size(); ++i)
        seen.insert(std::string_view(bytes + i * sizeof(int), n * sizeof(int)));
    return static_cast<long long>(seen.size());
}

/// Run-length encoding (the Delta map on words).
inline std::vector<int> run_lengths(const std::vector<int>& w) {
    std::vector<int> runs;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        runs.push_back(static_cast<int>(j - i));
        i = j;
    }
    return runs;
}

}  // namespace ratseq
