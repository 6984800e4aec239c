// Acceptance suite: one line per criterion, [PASS]/[FAIL], exit 1 on any
// failure. Scales and time budgets are pinned in the checks themselves.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ratseq/ratseq.hpp"

using namespace ratseq;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::function<void()> check;
    double time_budget_s;  // 0 = untimed
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
    if (!cond) throw Failure(what);
}

std::string t17() { return "00111011111011011"; }

std::vector<int> word_of(const char* s) {
    std::vector<int> w;
    for (const char* c = s; *c; ++c) w.push_back(*c - '0');
    return w;
}

// ---- criteria ----

void c01_word_list_and_round_trip() {
    RationalBase base32(3, 2);
    const char* expected[] = {"e", "2", "21", "210", "212", "2101", "2120", "2122"};
    for (long long n = 0; n <= 7; ++n)
        require(to_text(rep(base32, n)) == expected[n], "rep word list mismatch at n=" + std::to_string(n));
    for (const auto& base : {RationalBase(3, 2), RationalBase(5, 2), RationalBase(7, 3),
                             RationalBase(11, 4)}) {
        for (long long n = 0; n < 100000; ++n) {
            DigitWord w = rep(base, n);
            if (val(base, w) != Rational(n))
                throw Failure("val(rep(n)) != n for n=" + std::to_string(n) + " in base " + base.str());
            if (!is_canonical(base, w))
                throw Failure("rep(n) not canonical for n=" + std::to_string(n));
        }
    }
}

void c02_derived_signatures() {
    require(to_text(derive_rational_signature(RationalBase(3, 2))) == "02,1", "3/2 signature");
    require(to_text(derive_rational_signature(RationalBase(5, 2))) == "024,13", "5/2 signature");
    require(to_text(derive_rational_signature(RationalBase(7, 3))) == "036,25,14", "7/3 signature");
    require(to_text(derive_rational_signature(RationalBase(11, 4))) == "048,159,2.6.10,37",
            "11/4 signature");
}

void c03_sum_of_digits_fixture() {
    RationalBase base(3, 2);
    const int expected_s[] = {0, 2, 3, 3, 5, 4, 5, 7, 5, 5, 7, 8, 5, 7, 6, 7, 9};
    for (long long n = 0; n < 17; ++n) {
        int s = 0;
        for (int d : rep(base, n)) s += d;
        require(s == expected_s[n], "digit sum mismatch at n=" + std::to_string(n));
    }
    SequenceView view = make_view(builtin::sum_parity_dfao(3), base);
    require(join(sequence_prefix(view, 17)) == t17(), "t prefix mismatch");
}

void c04_three_route_equality() {
    SequenceView view = make_view(builtin::sum_parity_dfao(3), RationalBase(3, 2));
    auto direct = sequence_prefix(view, 10000);

    AlternatingSystem sys;
    sys.morphisms = {{{0, {0, 0}}, {1, {1, 1}}}, {{0, {1}}, {1, {0}}}};
    sys.seed = 0;
    std::vector<int> alternating = alternating_prefix(sys, 10000);

    BlockSubstitution g;
    g.block_len = 2;
    g.images[{0, 0}] = word_of("001");
    g.images[{0, 1}] = word_of("000");
    g.images[{1, 0}] = word_of("111");
    g.images[{1, 1}] = word_of("110");
    std::vector<int> blocks = block_fixed_prefix(g, word_of("00"), 10000);

    for (std::size_t i = 0; i < 10000; ++i) {
        require(std::to_string(alternating[i]) == direct[i],
                "alternating route differs at " + std::to_string(i));
        require(blocks[i] == alternating[i], "block route differs at " + std::to_string(i));
    }
}

void c05_block_shape() {
    std::mt19937_64 rng(20240607);
    for (const auto& base : {RationalBase(3, 2), RationalBase(5, 2)}) {
        LabeledSignature sig = derive_rational_signature(base);
        for (int trial = 0; trial < 10; ++trial) {
            std::uniform_int_distribution<int> nstates(1, 6);
            int n = nstates(rng);
            std::uniform_int_distribution<int> target(0, n - 1);
            std::vector<std::string> names, output;
            std::vector<std::vector<int>> delta;
            for (int s = 0; s < n; ++s) {
                names.push_back(std::to_string(s));
                output.push_back(std::to_string(target(rng)));
                std::vector<int> row;
                for (int a = 0; a < base.p; ++a) row.push_back(target(rng));
                delta.push_back(std::move(row));
            }
            std::vector<int> alphabet(static_cast<std::size_t>(base.p));
            std::iota(alphabet.begin(), alphabet.end(), 0);
            Dfao d(names, 0, alphabet, delta, output);
            BlockSubstitution g = to_block_substitution(dfao_to_alternating(d, sig));
            require(g.block_len == base.q, "block length != q");
            for (const auto& [block, img] : g.images)
                require(static_cast<long long>(img.size()) == base.p, "image length != p");
        }
    }
}

void c06_kolakoski() {
    AlternatingSystem sys;
    sys.morphisms = {{{1, {2}}, {2, {2, 2}}}, {{1, {1}}, {2, {1, 1}}}};
    sys.seed = 2;
    BlockSubstitution g = to_block_substitution(sys);
    std::vector<int> k = block_fixed_prefix(g, {2, 2}, 10000);
    std::vector<int> head(k.begin(), k.begin() + 13);
    require(head == word_of("2211212212211"), "kolakoski prefix mismatch");
    std::vector<int> runs = run_lengths(k);
    runs.pop_back();  // last run may be clipped by the prefix boundary
    for (std::size_t i = 0; i < runs.size(); ++i)
        require(runs[i] == k[i], "run-length self-encoding fails at " + std::to_string(i));
    require(runs.size() > 6000, "run census unexpectedly short");
}

void c07_lepisto() {
    std::vector<int> f2 = block_fixed_prefix(lepisto_substitution(2), word_of("01"), 10000);
    std::vector<int> head(f2.begin(), f2.begin() + 11);
    require(head == word_of("01001100001"), "F_2 prefix mismatch");
    SequenceView view = make_view(builtin::lepisto_f2_dfao(), RationalBase(3, 2));
    auto direct = sequence_prefix(view, 10000);
    for (std::size_t i = 0; i < 10000; ++i)
        require(std::to_string(f2[i]) == direct[i], "F_2 automaton differs at " + std::to_string(i));
}

void c08_ans_example() {
    LabeledSignature s = signature_from_text("023,14,5");
    const char* expected[] = {"e", "2", "3", "21", "24", "35", "210", "212", "213", "241", "244", "355"};
    auto words = enumerate_words(s, 12);
    for (std::size_t i = 0; i < 12; ++i)
        require(to_text(words[i]) == expected[i], "ANS word mismatch at " + std::to_string(i));
    require(to_text(rep_ans(s, 15)) == "2121", "rep(15) mismatch");
    SequenceView view = make_view(builtin::sum_parity_dfao(6), s);
    require(join(sequence_prefix(view, 12)) == "001100110101", "ANS sequence prefix mismatch");
}

void c09_censuses() {
    LabeledSignature s32 = signature_from_text("02,1");
    Decoration constant = Decoration::constant("c", 3);
    for (int h = 1; h <= 6; ++h) {
        long long count = census(s32, constant, h, 1000000).class_count();
        require(count == (1LL << h) + 1,
                "constant census h=" + std::to_string(h) + " gave " + std::to_string(count));
    }
    long long t2 = census(s32, Decoration::automaton(builtin::sum_parity_dfao(3)), 2, 1000000)
                       .class_count();
    require(t2 == 9, "t census #F_2 = " + std::to_string(t2));
    long long tm2 = census(signature_from_text("01"),
                           Decoration::automaton(builtin::sum_parity_dfao(2)), 2, 1000000)
                        .class_count();
    require(tm2 == 3, "Thue-Morse census #F_2 = " + std::to_string(tm2));
}

void c10_congruence_lemma() {
    for (int h = 1; h <= 4; ++h) {
        CongruenceReport report = congruence_domain_check(RationalBase(3, 2), h, 10000);
        require(report.violations.empty(),
                "lemma violations at h=" + std::to_string(h) + ": " + report.summary());
        require(report.partition_ok, "partition broken at h=" + std::to_string(h));
        long long qh = 1;
        for (int i = 0; i < h; ++i) qh *= 2;
        require(report.domain_classes == qh, "unexpected class count at h=" + std::to_string(h));
    }
}

void c11_rationality_probe() {
    LabeledSignature s2 = signature_from_text("01");
    Decoration tm = Decoration::automaton(builtin::sum_parity_dfao(2));
    std::vector<long long> tm_counts;
    for (int h = 1; h <= 5; ++h) tm_counts.push_back(census(s2, tm, h, 100000).class_count());
    require(rationality_probe(tm_counts).stabilized, "Thue-Morse probe did not stabilize");

    LabeledSignature s32 = signature_from_text("02,1");
    Decoration t = Decoration::automaton(builtin::sum_parity_dfao(3));
    std::vector<long long> t_counts;
    for (int h = 1; h <= 5; ++h) t_counts.push_back(census(s32, t, h, 200000).class_count());
    for (std::size_t i = 0; i + 1 < t_counts.size(); ++i)
        require(t_counts[i] < t_counts[i + 1], "t census not strictly growing");
    require(!rationality_probe(t_counts).stabilized, "t probe stabilized unexpectedly");
}

DecoratedFactor acceptance_factor(int height, bool root,
                                  std::vector<std::tuple<int, int, const char*>> spec_nodes) {
    DecoratedFactor f;
    f.height = height;
    f.is_root_factor = root;
    for (auto& [parent, label, dec] : spec_nodes) {
        int depth = parent < 0 ? 0 : f.nodes[static_cast<std::size_t>(parent)].depth + 1;
        f.nodes.push_back({parent, label, depth, dec});
    }
    return f;
}

void c12_nfa_construction() {
    FactorNfaInput in;
    in.t = 1;
    in.h = 1;
    in.prefix = acceptance_factor(1, true, {{-1, -1, "0"}, {0, 2, "0"}});
    in.infinite = {
        acceptance_factor(1, false, {{-1, -1, "0"}, {0, 1, "1"}}),
        acceptance_factor(1, false, {{-1, -1, "0"}, {0, 0, "0"}, {0, 2, "0"}}),
        acceptance_factor(1, false, {{-1, -1, "1"}, {0, 1, "0"}}),
        acceptance_factor(1, false, {{-1, -1, "1"}, {0, 0, "1"}, {0, 2, "1"}}),
    };
    in.entry = {{1, 0}};
    in.extensions = {
        {{0, 0}, acceptance_factor(2, false, {{-1, -1, "0"}, {0, 1, "1"}, {1, 0, "1"}, {1, 2, "1"}})},
        {{0, 1}, acceptance_factor(2, false, {{-1, -1, "0"}, {0, 1, "1"}, {1, 1, "0"}})},
        {{1, 0}, acceptance_factor(2, false, {{-1, -1, "0"}, {0, 0, "0"}, {0, 2, "0"}, {1, 0, "0"}, {1, 2, "0"}, {2, 1, "1"}})},
        {{1, 1}, acceptance_factor(2, false, {{-1, -1, "0"}, {0, 0, "0"}, {0, 2, "0"}, {1, 1, "1"}, {2, 0, "0"}, {2, 2, "0"}})},
        {{2, 0}, acceptance_factor(2, false, {{-1, -1, "1"}, {0, 1, "0"}, {1, 0, "0"}, {1, 2, "0"}})},
        {{2, 1}, acceptance_factor(2, false, {{-1, -1, "1"}, {0, 1, "0"}, {1, 1, "1"}})},
        {{3, 0}, acceptance_factor(2, false, {{-1, -1, "1"}, {0, 0, "1"}, {0, 2, "1"}, {1, 0, "1"}, {1, 2, "1"}, {2, 1, "0"}})},
        {{3, 1}, acceptance_factor(2, false, {{-1, -1, "1"}, {0, 0, "1"}, {0, 2, "1"}, {1, 1, "0"}, {2, 0, "1"}, {2, 2, "1"}})},
    };
    FactorNfa nfa = build_factor_nfa(in);

    const std::vector<std::pair<std::string, std::string>> runs_table = {
        {"e", "q_0"},
        {"2", "q_0,q_1"},
        {"21", "q_0,0,1"},
        {"210", "q_0,0,7,8"},
        {"212", "q_0,0,7,9"},
        {"2101", "q_0,0,7,5,6"},
        {"2120", "q_0,0,7,7,8"},
        {"2122", "q_0,0,7,7,9"},
        {"21011", "q_0,0,7,5,0,1"},
        {"21200", "q_0,0,7,7,7,8"},
        {"21202", "q_0,0,7,7,7,9"},
        {"21221", "q_0,0,7,7,5,6"},
    };
    for (const auto& [word_text, expected] : runs_table) {
        auto runs = successful_runs(nfa, word_from_text(word_text));
        require(runs.size() == 1, "word " + word_text + " has " + std::to_string(runs.size()) +
                                      " successful runs");
        std::string got;
        for (int s : runs[0]) {
            if (!got.empty()) got += ',';
            got += nfa.names[static_cast<std::size_t>(s)];
        }
        require(got == expected, "run of " + word_text + " is " + got + ", expected " + expected);
    }

    Dfao det = determinize(nfa);
    require(det.state_count() == 5, "determinization has " + std::to_string(det.state_count()) +
                                        " states, expected 5");
    int sentinels = 0;
    for (int s = 0; s < det.state_count(); ++s)
        if (det.out(s) == kSentinelOutput) ++sentinels;
    require(sentinels == 1, "expected exactly one sentinel state");

    // Isomorphy with the reference automaton: pair states along transitions.
    Dfao expected = builtin::t_five_state_dfao();
    std::map<int, int> pairing{{det.initial(), expected.initial()}};
    std::vector<int> queue{det.initial()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        int a = queue[i], b = pairing.at(a);
        require(det.out(a) == expected.out(b), "output mismatch in isomorphism check");
        for (int digit : det.alphabet()) {
            int ta = det.step(a, digit), tb = expected.step(b, digit);
            auto it = pairing.find(ta);
            if (it == pairing.end()) {
                pairing[ta] = tb;
                queue.push_back(ta);
            } else {
                require(it->second == tb, "transition mismatch in isomorphism check");
            }
        }
    }
    require(pairing.size() == 5, "isomorphism pairing incomplete");

    auto det_seq = sequence_prefix(make_view(det, RationalBase(3, 2)), 10000);
    auto t_seq = sequence_prefix(make_view(builtin::sum_parity_dfao(3), RationalBase(3, 2)), 10000);
    require(det_seq == t_seq, "determinized automaton does not generate t");
}

void c13_condition_checker() {
    RationalBase base(3, 2);
    Dfao four = builtin::four_state_dfao();
    ConditionVerdict verdict = distinguishing_extension_check(four, base, 4, 15);
    require(verdict.fails, "four-state automaton should fail at h=4");
    require(verdict.witness.has_value(), "missing witness");
    require(condition_counterexample_pair(four, base, 4, verdict.witness->first,
                                          verdict.witness->second),
            "returned witness is not a counterexample");

    DigitWord u = word_from_text("212001220110220");
    DigitWord v = word_from_text("212022000012021");
    LabeledSignature sig = derive_rational_signature(base);
    require(val_ans(sig, u) == 591 && val_ans(sig, v) == 623, "witness values");
    require(val_ans(sig, u) % 16 == 15 && val_ans(sig, v) % 16 == 15, "witness congruence mod 16");
    require(condition_counterexample_pair(four, base, 4, u, v),
            "documented pair is not a counterexample at h=4");

    Decoration deco = Decoration::automaton(four);
    DecoratedFactor fu = factor_at(sig, deco, u, 4);
    DecoratedFactor fv = factor_at(sig, deco, v, 4);
    require(fu == fv, "T[u,4] != T[v,4]");
    std::vector<std::string> depth4;
    for (const auto& [word, dec] : fu.entries())
        if (word.size() == 4) depth4.push_back(to_text(word));
    require(depth4 == std::vector<std::string>{"1111"}, "height-4 domain is not {1111}");
    require(factor_at(sig, deco, u, 5) != factor_at(sig, deco, v, 5), "T[u,5] == T[v,5]");

    ConditionVerdict cycle = distinguishing_extension_check(builtin::cycle3_dfao(), base, 2, 15);
    require(!cycle.fails, "three-state cycle should have no counterexample up to length 15");
}

void c14_digit_conversion() {
    for (const auto& base : {RationalBase(3, 2), RationalBase(5, 2), RationalBase(7, 3)}) {
        long long carry_cap_mul = 0, carry_cap_add = 0;
        for (long long n = 0; n < 10000; ++n) {
            DigitWord w = rep(base, n);
            for (long long a = 1; a <= 20; ++a) {
                std::vector<long long> lsd;
                for (auto it = w.end(); it != w.begin();) lsd.push_back(a * *--it);
                NormalizeResult r = normalize_lsd(base, lsd);
                if (!(r.word == rep(base, a * n)))
                    throw Failure("multiply mismatch n=" + std::to_string(n) + " a=" +
                                  std::to_string(a) + " base " + base.str());
                carry_cap_mul = std::max(carry_cap_mul, r.max_carry);
            }
            for (long long b = 0; b <= 20; ++b) {
                std::vector<long long> lsd;
                for (auto it = w.end(); it != w.begin();) lsd.push_back(*--it);
                if (lsd.empty()) lsd.push_back(0);
                lsd[0] += base.q * b;
                NormalizeResult r = normalize_lsd(base, lsd);
                if (!(r.word == rep(base, n + b)))
                    throw Failure("add mismatch n=" + std::to_string(n) + " b=" + std::to_string(b));
                carry_cap_add = std::max(carry_cap_add, r.max_carry);
            }
        }
        long long mul_bound = CarryTransducer(base, 20 * (base.p - 1)).c_max;
        long long add_bound = CarryTransducer(base, (base.p - 1) + base.q * 20).c_max;
        require(carry_cap_mul <= mul_bound, "multiply carries exceed the bound in " + base.str());
        require(carry_cap_add <= add_bound, "add carries exceed the bound in " + base.str());
    }
}

void c15_affine_subsequences() {
    RationalBase base(3, 2);
    for (const Dfao& d : {builtin::sum_parity_dfao(3), builtin::lepisto_f2_dfao()}) {
        SequenceView view = make_view(d, base);
        for (long long a = 1; a <= 5; ++a) {
            for (long long b = 0; b <= 5; ++b) {
                Dfao affine = affine_subsequence_dfao(view, a, b);
                SequenceView affine_view = make_view(affine, base, Reading::lsd_first);
                for (NodeIndex n = 0; n < 10000; ++n)
                    if (eval(affine_view, n) != eval(view, a * n + b))
                        throw Failure("affine mismatch a=" + std::to_string(a) + " b=" +
                                      std::to_string(b) + " n=" + std::to_string(n));
            }
        }
    }
}

void c16_reversal() {
    struct Fixture {
        Dfao dfao;
        LabeledSignature sig;
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({builtin::sum_parity_dfao(3), signature_from_text("02,1")});
    fixtures.push_back({builtin::lepisto_f2_dfao(), signature_from_text("02,1")});
    fixtures.push_back({builtin::cycle3_dfao(), signature_from_text("02,1")});
    fixtures.push_back({builtin::four_state_dfao(), signature_from_text("02,1")});
    fixtures.push_back({builtin::t_five_state_dfao(), signature_from_text("02,1")});
    fixtures.push_back({builtin::sum_parity_dfao(6), signature_from_text("023,14,5")});
    for (const auto& fx : fixtures) {
        SequenceView msd = make_view(fx.dfao, fx.sig);
        SequenceView lsd = make_view(reverse_reading(fx.dfao), fx.sig, Reading::lsd_first);
        for (NodeIndex n = 0; n < 10000; ++n)
            if (eval(lsd, n) != eval(msd, n))
                throw Failure("reversal mismatch at n=" + std::to_string(n));
    }
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "base-3/2 word list and val/rep round trip (4 bases, n < 1e5)", c01_word_list_and_round_trip, 5.0},
        {2, "derived signatures of 3/2, 5/2, 7/3, 11/4", c02_derived_signatures, 0},
        {3, "sum-of-digits values and t prefix", c03_sum_of_digits_fixture, 0},
        {4, "three-route equality for t (1e4 terms)", c04_three_route_equality, 1.0},
        {5, "q-block/p-image shape for 20 random automata", c05_block_shape, 0},
        {6, "kolakoski prefix and run-length self-encoding (1e4 terms)", c06_kolakoski, 0},
        {7, "lepisto fixed point equals its automaton (1e4 terms)", c07_lepisto, 0},
        {8, "ANS (023,14,5) words and sequence", c08_ans_example, 0},
        {9, "factor censuses (constant h<=6, t h=2, Thue-Morse h=2; window 1e6)", c09_censuses, 60.0},
        {10, "congruence/domain lemma, 1e4 pairs per h in 1..4", c10_congruence_lemma, 0},
        {11, "rationality probe: Thue-Morse stabilizes, t grows (h <= 5)", c11_rationality_probe, 0},
        {12, "factor NFA runs table, determinization, sequence (1e4 terms)", c12_nfa_construction, 0},
        {13, "distinguishing-extension checker verdicts and witnesses", c13_condition_checker, 0},
        {14, "digit conversion vs rep oracle (n < 1e4, a,b <= 20, 3 bases)", c14_digit_conversion, 30.0},
        {15, "affine subsequence automata (a,b <= 5, n < 1e4)", c15_affine_subsequences, 0},
        {16, "lsd-first reversal agrees with msd-first (all fixtures, n < 1e4)", c16_reversal, 0},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string message;
        bool ok = true;
        try {
            criterion.check();
        } catch (const std::exception& e) {
            ok = false;
            message = e.what();
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && criterion.time_budget_s > 0 && elapsed > criterion.time_budget_s) {
            ok = false;
            message = "time budget exceeded (" + std::to_string(elapsed) + "s > " +
                      std::to_string(criterion.time_budget_s) + "s)";
        }
        std::printf("[%s] %2d. %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", criterion.number,
                    criterion.title.c_str(), elapsed, message.empty() ? "" : " — ",
                    message.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
