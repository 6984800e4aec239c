#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "ratseq/ratseq.hpp"

using namespace ratseq;

TEST_CASE("normalize traces") {
    RationalBase base(3, 2);
    // lsd (2,4): digits of "21" doubled; a_0=2 carry 0, a_1=1 carry 2, flush 2.
    CHECK(to_text(normalize(base, {2, 4})) == "212");
    // lsd (7,2): "21" with q*b = 6 added at the least significant digit.
    CHECK(to_text(normalize(base, {7, 2})) == "2101");
    CHECK(normalize(base, {0, 0, 0}).empty());
    CHECK(normalize(base, {}).empty());
    CHECK_THROWS_AS(normalize(base, {-1}), Error);
}

TEST_CASE("normalize preserves the exact value") {
    std::mt19937_64 rng(11);
    for (const auto& base : {RationalBase(3, 2), RationalBase(5, 2), RationalBase(7, 3)}) {
        std::uniform_int_distribution<int> len(0, 25);
        std::uniform_int_distribution<long long> digit(0, 40);
        for (int trial = 0; trial < 10000; ++trial) {
            std::vector<long long> lsd(static_cast<std::size_t>(len(rng)));
            long long e_max = 0;
            for (auto& e : lsd) {
                e = digit(rng);
                e_max = std::max(e_max, e);
            }
            NormalizeResult result = normalize_lsd(base, lsd);
            // Exact value of the input stream.
            Rational value = 0;
            Rational weight(1, base.q);
            for (long long e : lsd) {
                value += weight * e;
                weight *= Rational(base.p, base.q);
            }
            REQUIRE(val(base, result.word) == value);
            REQUIRE(result.max_carry <= CarryTransducer(base, e_max).c_max);
        }
    }
}

TEST_CASE("multiply_constant equals the rep oracle") {
    RationalBase base(3, 2);
    CHECK(to_text(multiply_constant(base, word_from_text("21"), 2)) == "212");
    CHECK(multiply_constant(base, word_from_text("2122"), 3) == rep(base, 21));
    DigitWord w = rep(base, 123);
    CHECK(multiply_constant(base, w, 1) == w);
    CHECK_THROWS_AS(multiply_constant(base, word_from_text("1"), 2), Error);  // not canonical

    for (const auto& b : {RationalBase(3, 2), RationalBase(7, 3)}) {
        for (long long n = 0; n < 500; ++n)
            for (long long a = 1; a <= 10; ++a)
                REQUIRE(multiply_constant(b, rep(b, n), a) == rep(b, a * n));
    }
}

TEST_CASE("add_constant equals the rep oracle") {
    RationalBase base(3, 2);
    CHECK(to_text(add_constant(base, word_from_text("21"), 3)) == "2101");
    CHECK(add_constant(base, DigitWord(), 7) == rep(base, 7));
    DigitWord w = rep(base, 55);
    CHECK(add_constant(base, w, 0) == w);

    for (const auto& b : {RationalBase(3, 2), RationalBase(5, 2)}) {
        for (long long n = 0; n < 500; ++n)
            for (long long c = 0; c <= 10; ++c)
                REQUIRE(add_constant(b, rep(b, n), c) == rep(b, n + c));
    }
}

TEST_CASE("carry bound is the stated ceiling") {
    CarryTransducer t(RationalBase(3, 2), 4);
    CHECK(t.c_max == 8);  // ceil(2*4/1)
    CarryTransducer u(RationalBase(7, 3), 12);
    CHECK(u.c_max == 9);  // ceil(3*12/4)
}

TEST_CASE("affine subsequence automata") {
    SequenceView t = make_view(builtin::sum_parity_dfao(3), RationalBase(3, 2));

    SequenceView identity = make_view(affine_subsequence_dfao(t, 1, 0), RationalBase(3, 2),
                                      Reading::lsd_first);
    for (NodeIndex n = 0; n < 10000; ++n) REQUIRE(eval(identity, n) == eval(t, n));

    SequenceView doubled = make_view(affine_subsequence_dfao(t, 2, 0), RationalBase(3, 2),
                                     Reading::lsd_first);
    for (NodeIndex n = 0; n < 10000; ++n) REQUIRE(eval(doubled, n) == eval(t, 2 * n));

    SequenceView shifted = make_view(affine_subsequence_dfao(t, 3, 1), RationalBase(3, 2),
                                     Reading::lsd_first);
    for (NodeIndex n = 0; n < 10000; ++n) REQUIRE(eval(shifted, n) == eval(t, 3 * n + 1));

    CHECK_THROWS_AS(affine_subsequence_dfao(t, 0, 0), Error);
    SequenceView no_base = make_view(builtin::sum_parity_dfao(3), signature_from_text("02,1"));
    CHECK_THROWS_AS(affine_subsequence_dfao(no_base, 2, 0), Error);
}
