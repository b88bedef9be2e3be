#include <doctest.h>

#include <functional>
#include <random>

#include "qh/errors.hpp"
#include "qh/holonomy.hpp"
#include "qh/qcombinatorics.hpp"
#include "qh/serialize.hpp"
#include "qh/skein_engine.hpp"
#include "random_poly.hpp"

using namespace qh;

namespace {

SequenceWindow window(int count, const std::function<QScalar(int)>& f, int first = 0) {
    SequenceWindow w;
    w.link_id = "test";
    w.first = first;
    for (int n = first; n < first + count; ++n) w.values.push_back(f(n));
    return w;
}

QScalar qpow(int e) { return QScalar(LaurentPoly::monomial(1, 0, e, 0)); }

GuessOptions small(int d, int m) {
    GuessOptions o;
    o.d_max = d;
    o.mdeg_max = m;
    return o;
}

// L composed with A
RecurrenceOperator shift_left(const RecurrenceOperator& A) {
    RecurrenceOperator B = RecurrenceOperator::zero(A.order + 1, A.mdeg);
    for (int l = 0; l <= A.order; ++l)
        for (int m = 0; m <= A.mdeg; ++m)
            B.coeffs[static_cast<std::size_t>(l + 1)][static_cast<std::size_t>(m)] =
                A.coeffs[static_cast<std::size_t>(l)][static_cast<std::size_t>(m)] * qpow(m);
    return B;
}

SequenceWindow unknot_window(int count) { return window(count, [](int n) { return unknot_colored(n); }); }

}  // namespace

TEST_SUITE("holonomy") {
    TEST_CASE("operator application") {
        SequenceWindow f = window(6, [](int n) { return QScalar(LaurentPoly::monomial(n + 1, 1, n, 0)); });
        RecurrenceOperator ML = RecurrenceOperator::zero(1, 1);
        ML.coeffs[1][1] = QScalar(1);
        // L M written in normal form is q M L
        RecurrenceOperator LM = ML.scaled(qpow(1));
        for (int n = 0; n < 5; ++n) {
            CHECK(apply_operator(ML, f, n) == qpow(n) * f.at(n + 1));
            CHECK(apply_operator(LM, f, n) == qpow(n + 1) * f.at(n + 1));
        }
        CHECK_THROWS_AS(apply_operator(ML, f, 5), WindowTooShort);
        CHECK_THROWS_AS(f.at(6), WindowTooShort);
    }

    TEST_CASE("simple sequences") {
        auto one = guess_recurrence(window(12, [](int) { return QScalar(1); }), small(1, 1));
        REQUIRE(one);
        CHECK(one->to_string() == "L - 1");
        CHECK(one->is_a_free());

        auto qn = guess_recurrence(window(12, [](int n) { return qpow(n); }), small(1, 1));
        REQUIRE(qn);
        CHECK(qn->to_string() == "L - q");

        auto tri = guess_recurrence(window(12, [](int n) { return qpow(n * (n + 1) / 2); }), small(1, 1));
        REQUIRE(tri);
        CHECK(tri->to_string() == "L - q M");
    }

    TEST_CASE("colored unknot") {
        SequenceWindow f = unknot_window(20);
        auto A = guess_recurrence(f, small(2, 3));
        REQUIRE(A);
        CHECK(A->order == 1);
        CHECK(A->mdeg == 2);
        CHECK_FALSE(A->is_a_free());
        CHECK(validate(*A, f, 5).pass);
        auto B = guess_recurrence(f, [] {
            GuessOptions o = small(2, 3);
            o.a_free = true;
            return o;
        }());
        CHECK_FALSE(B);
    }

    TEST_CASE("validation reports the first failing color") {
        SequenceWindow f = window(10, [](int n) { return qpow(n); });
        RecurrenceOperator A = RecurrenceOperator::zero(1, 0);
        A.coeffs[1][0] = QScalar(1);
        A.coeffs[0][0] = QScalar(-1);
        ValidationReport r = validate(A, f, 3);
        CHECK_FALSE(r.pass);
        REQUIRE(r.first_failure);
        CHECK(*r.first_failure == 7);
        A.coeffs[0][0] = -qpow(1);
        r = validate(A, f, 3);
        CHECK(r.pass);
        CHECK(r.checked == std::vector<int>{7, 8, 9});
        CHECK_FALSE(validate(A, f, 0).pass);
        CHECK_FALSE(validate(A, f, 10).pass);
    }

    TEST_CASE("validation is invariant under scaling and left multiplication") {
        SequenceWindow f = unknot_window(20);
        auto A = guess_recurrence(f, small(2, 3));
        REQUIRE(A);
        std::mt19937_64 rng(3);
        for (int i = 0; i < 3; ++i) {
            QScalar c;
            do c = testing::random_scalar(rng, false);
            while (c.is_zero());
            CHECK(validate(A->scaled(c), f, 5).pass);
            SequenceWindow g = f;
            for (auto& v : g.values) v = v * c;
            auto B = guess_recurrence(g, small(2, 3));
            REQUIRE(B);
            CHECK(B->to_string() == A->to_string());
        }
        RecurrenceOperator LA = shift_left(*A);
        CHECK(validate(LA, f, 5).pass);
    }

    TEST_CASE("short windows and bad bounds") {
        CHECK(required_window(4, 8, 5) == 54);
        SequenceWindow f = window(26, [](int) { return QScalar(1); });
        CHECK_THROWS_AS(guess_recurrence(f, GuessOptions{}), WindowTooShort);
        CHECK_THROWS_AS(guess_recurrence(f, small(-1, 2)), InvalidInput);
    }

    TEST_CASE("no recurrence within bounds") {
        SequenceWindow f = window(20, [](int n) { return qpow(n * n * n); });
        CHECK_FALSE(guess_recurrence(f, small(1, 2)));
    }

    TEST_CASE("trefoil sequence has no a-free operator of order 1") {
        TwoBridgeLink L = make_link(parse_cf("3"));
        SequenceWindow f = window(14, [&](int n) { return eval_reduced(L, n, Start::Auto, Normalize::Raw); });
        GuessOptions o = small(1, 2);
        o.a_free = true;
        CHECK_FALSE(guess_recurrence(f, o));
    }

    TEST_CASE("operators serialize") {
        auto A = guess_recurrence(unknot_window(20), small(2, 3));
        REQUIRE(A);
        RecurrenceOperator B = operator_from_json(operator_to_json(*A));
        CHECK(B.to_string() == A->to_string());
    }
}
