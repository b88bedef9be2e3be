#include <doctest.h>

#include <fstream>

#include "qh/errors.hpp"
#include "qh/homfly_oracle.hpp"
#include "qh/nested_sum.hpp"
#include "qh/qcombinatorics.hpp"
#include "qh/serialize.hpp"
#include "qh/skein_engine.hpp"

using namespace qh;

namespace {

const Family kFamilies[] = {Family::UP, Family::UPs, Family::OP, Family::OPs, Family::RI, Family::RIs};

QScalar at_a_qpow(const QScalar& x, int k) {
    Substitution sub;
    sub.a = SignedQPower{1, k};
    return x.substitute(sub);
}

// Hopf link colored (i, j) from the S-matrix style single sum
QScalar hopf_formula(int i, int j) {
    std::vector<QScalar> parts;
    for (int r = 0; r <= std::min(i, j); ++r) {
        QScalar t(qbinom(i, r));
        t = t * QScalar(LaurentPoly::monomial(1, r, r * (2 - i) - i * (j - r), 0));
        t = t * QScalar(shifted_factor_product(j - r, 1, 0, -i), factorial_den(j - r));
        parts.push_back(t);
    }
    return QScalar::sum(parts) * unknot_colored(i);
}

}  // namespace

TEST_SUITE("engine") {
    TEST_CASE("transition table is total and each twist is an involution") {
        for (TwistOp op : {TwistOp::T, TwistOp::R})
            for (Family f : kFamilies) CHECK(twist_target(op, twist_target(op, f)) == f);
        CHECK(closes_vertically(Family::UP));
        CHECK(closes_vertically(Family::OP));
        CHECK(closes_horizontally(Family::RI));
        CHECK(closes_horizontally(Family::OPs));
        for (Family f : {Family::UPs, Family::RIs}) {
            CHECK_FALSE(closes_vertically(f));
            CHECK_FALSE(closes_horizontally(f));
        }
    }

    TEST_CASE("unknot diagrams evaluate to one") {
        for (int j = 0; j <= 10; ++j) CHECK(eval_reduced(make_link(parse_cf("1")), j, Start::Auto, Normalize::Canonical) == QScalar(1));
        for (auto& L : enumerate_corpus(6))
            for (Start st : {Start::UP, Start::OP}) {
                QScalar v;
                try {
                    v = eval_reduced(L, 0, st, Normalize::Raw);
                } catch (const UnclosableFamily&) {
                    continue;
                }
                CHECK(v == QScalar(1));
            }
    }

    TEST_CASE("trefoil fundamental color") {
        auto L = make_link(parse_cf("3"));
        QScalar e = eval_reduced(L, 1, Start::Auto, Normalize::Canonical);
        QScalar o = homfly(build_plat(L.cf, resolve_start(L, Start::Auto))).canonicalize();
        CHECK(e == o);
        CHECK(e.to_string() == "1 + q^4 - a^2 q^2");
    }

    TEST_CASE("agrees with the brute-force multi-sum") {
        for (auto& L : enumerate_corpus(4))
            for (Family start : {Family::UP, Family::OP})
                for (int j = 0; j <= 3; ++j) {
                    Start st = start == Family::UP ? Start::UP : Start::OP;
                    bool closable = final_family(L.cf, start, L.components == 1).has_value();
                    if (!closable) {
                        CHECK_THROWS_AS(eval_reduced(L, j, st, Normalize::Raw), UnclosableFamily);
                        CHECK_THROWS_AS(nested_sum_reduced(L, j, start), UnclosableFamily);
                        continue;
                    }
                    INFO(format_cf(L.cf), " j=", j);
                    CHECK(eval_reduced(L, j, st, Normalize::Raw) == nested_sum_reduced(L, j, start));
                }
    }

    TEST_CASE("knot values are Laurent polynomials and give monomials at a = q^j") {
        for (auto& L : enumerate_corpus(6)) {
            if (L.components != 1) continue;
            for (int j = 1; j <= 3; ++j) {
                INFO(format_cf(L.cf), " j=", j);
                QScalar v = eval_reduced(L, j, Start::Auto, Normalize::Raw);
                CHECK_FALSE(v.normalized().has_den());
                CHECK(at_a_qpow(v, j).normalized().is_monomial());
            }
        }
    }

    TEST_CASE("figure eight is amphichiral") {
        auto L = make_link(parse_cf("2,2"));
        for (int j = 1; j <= 3; ++j) {
            QScalar v = eval_reduced(L, j, Start::Auto, Normalize::Canonical);
            CHECK(v == v.mirrored().canonicalize());
        }
        auto T = make_link(parse_cf("3"));
        QScalar t = eval_reduced(T, 1, Start::Auto, Normalize::Canonical);
        CHECK_FALSE(t == t.mirrored().canonicalize());
    }

    TEST_CASE("Hopf link specializations match the single-sum formula") {
        auto L = make_link(parse_cf("2"));
        for (int j = 0; j <= 3; ++j)
            for (int i = j; i <= 4; ++i) {
                INFO("i=", i, " j=", j);
                QScalar f = hopf_formula(i, j).canonicalize();
                QScalar op = specialize_two_component(eval_reduced(L, j, Start::OP, Normalize::Raw), i, j).canonicalize();
                QScalar up = specialize_two_component(eval_reduced(L, j, Start::UP, Normalize::Raw), i, j).canonicalize();
                CHECK(op == f);
                CHECK(up == f.mirrored().canonicalize());
            }
    }

    TEST_CASE("frozen Hopf fixture matches the single-sum formula") {
        std::ifstream in(QH_FIXTURE_DIR "/hopf_i3_j2.json");
        REQUIRE(in.good());
        json rec = json::parse(in);
        CHECK(rec.at("start") == "up");
        QScalar v = scalar_from_json(rec.at("value"));
        CHECK(v == hopf_formula(3, 2).mirrored().canonicalize());
    }

    TEST_CASE("unclosable starts are reported") {
        auto T = make_link(parse_cf("3"));
        CHECK_THROWS_AS(resolve_start(T, Start::OP), UnclosableFamily);
        CHECK_THROWS_AS(eval_reduced(T, 2, Start::OP, Normalize::Raw), UnclosableFamily);
        SkeinState st = apply_twist(initial_state(2, Family::UP), TwistOp::T);
        CHECK(st.family == Family::UPs);
        CHECK_THROWS_AS(close(st), UnclosableFamily);
    }

    TEST_CASE("input errors") {
        auto T = make_link(parse_cf("3"));
        CHECK_THROWS_AS(eval_reduced(T, -1, Start::Auto, Normalize::Raw), InvalidInput);
        CHECK_THROWS_AS(specialize_two_component(QScalar(1), 1, 2), InvalidInput);
        CHECK_THROWS_AS(specialize_two_component(QScalar(1), 1, -1), InvalidInput);
        CHECK_THROWS_AS(row_colored(QScalar(LaurentPoly::monomial(1, 0, 0, 1)), 1), InvalidInput);
        CHECK_THROWS_AS(row_colored(QScalar(1), -1), InvalidInput);
    }

    TEST_CASE("row coloring of the unknot gives symmetric powers") {
        for (int r = 0; r <= 4; ++r) {
            QScalar row = row_colored(unknot_colored(r), r);
            CHECK(row_colored(row, r) == unknot_colored(r));
            for (int N = 1; N <= 4; ++N) CHECK(at_a_qpow(row, N) == QScalar(qbinom(N + r - 1, r)));
        }
    }
}
