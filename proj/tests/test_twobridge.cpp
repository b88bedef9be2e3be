#include <doctest.h>

#include "qh/errors.hpp"
#include "qh/twobridge.hpp"

using namespace qh;

TEST_SUITE("twobridge") {
    TEST_CASE("continued fractions and fractions") {
        CHECK(cf_to_fraction(parse_cf("3,2")) == Fraction{7, 2});
        CHECK(cf_to_fraction(parse_cf("[2,2]")) == Fraction{5, 2});
        CHECK(cf_to_fraction(parse_cf("1")) == Fraction{1, 1});
        CHECK(fraction_to_cf(7, 2) == ContinuedFraction{{3, 2}});
        CHECK(fraction_to_cf(5, 1) == ContinuedFraction{{5}});
        for (auto& L : enumerate_corpus(8)) {
            if (L.cf.entries.size() > 1 && L.cf.entries.back() == 1) continue;
            CHECK(fraction_to_cf(L.fraction.p, L.fraction.q) == L.cf);
        }
    }

    TEST_CASE("operator word applies a_1 first as top twists") {
        OperatorWord w = operator_word(parse_cf("3,2"));
        REQUIRE(w.size() == 2);
        CHECK(w[0] == TwistGroup{TwistOp::T, 2});
        CHECK(w[1] == TwistGroup{TwistOp::R, 3});
        auto seq = twist_sequence(parse_cf("1,2,3"));
        CHECK(seq == std::vector<TwistOp>{TwistOp::T, TwistOp::T, TwistOp::T, TwistOp::R, TwistOp::R, TwistOp::T});
    }

    TEST_CASE("component count follows the parity of the numerator") {
        CHECK(component_count(parse_cf("1")) == 1);
        CHECK(component_count(parse_cf("2")) == 2);
        CHECK(component_count(parse_cf("3")) == 1);
        CHECK(component_count(parse_cf("2,2")) == 1);
        CHECK(component_count(parse_cf("4")) == 2);
        for (auto& L : enumerate_corpus(9)) CHECK(L.components == (L.fraction.p % 2 == 0 ? 2 : 1));
    }

    TEST_CASE("corpus enumeration") {
        auto c4 = enumerate_corpus(4);
        CHECK(c4.size() == 15);
        CHECK(enumerate_corpus(8).size() == 255);
        for (auto& L : c4) CHECK(L.crossings <= 4);
        CHECK(c4.front().cf == ContinuedFraction{{1}});
        CHECK_THROWS_AS(enumerate_corpus(0), InvalidInput);
    }

    TEST_CASE("malformed input is rejected") {
        CHECK_THROWS_AS(parse_cf(""), InvalidInput);
        CHECK_THROWS_AS(parse_cf("0"), InvalidInput);
        CHECK_THROWS_AS(parse_cf("3,"), InvalidInput);
        CHECK_THROWS_AS(parse_cf("3,-2"), InvalidInput);
        CHECK_THROWS_AS(parse_cf("[3,2"), InvalidInput);
        CHECK_THROWS_AS(parse_fraction("7/0"), InvalidInput);
        CHECK_THROWS_AS(parse_fraction("6/4"), InvalidInput);
        CHECK_THROWS_AS(parse_fraction("x"), InvalidInput);
        CHECK_THROWS_AS(fraction_to_cf(2, 7), InvalidInput);
        CHECK(format_cf(parse_cf(" 3, 2 ")) == "3,2");
        CHECK(format_fraction(parse_fraction("7/2")) == "7/2");
    }
}
