#include <doctest.h>

#include <cstdlib>
#include <map>

#include "qh/checks.hpp"
#include "qh/homfly_oracle.hpp"
#include "qh/skein_engine.hpp"

using namespace qh;

namespace {

PlanarDiagram diagram(const TwoBridgeLink& L) { return build_plat(L.cf, resolve_start(L, Start::Auto)); }

QScalar at_a_q2(const QScalar& x) {
    Substitution sub;
    sub.a = SignedQPower{1, 2};
    return x.substitute(sub);
}

}  // namespace

TEST_SUITE("oracle") {
    TEST_CASE("plat diagrams have the expected shape") {
        for (auto& L : enumerate_corpus(8)) {
            PlanarDiagram d = diagram(L);
            INFO(format_cf(L.cf));
            CHECK(static_cast<int>(d.crossings.size()) == L.crossings);
            CHECK(diagram_components(d) == L.components);
            CHECK(is_alternating(d));
            GaussCode g = gauss_code(d);
            std::size_t visits = 0;
            for (auto& comp : g) visits += comp.size();
            CHECK(visits == 2 * d.crossings.size());
        }
    }

    TEST_CASE("writhe of small knots") {
        auto T = make_link(parse_cf("3"));
        CHECK(std::abs(writhe(diagram(T))) == 3);
        auto F = make_link(parse_cf("2,2"));
        CHECK(writhe(diagram(F)) == 0);
    }

    TEST_CASE("HOMFLY at a = q^2 is the Jones polynomial") {
        for (auto& L : enumerate_corpus(8)) {
            for (Family start : {Family::UP, Family::OP}) {
                if (L.components == 1 && start != resolve_start(L, Start::Auto)) continue;
                PlanarDiagram d = build_plat(L.cf, start);
                INFO(format_cf(L.cf));
                CHECK(at_a_q2(homfly(d)) == jones_kauffman(d));
            }
        }
    }

    TEST_CASE("memoization does not change results") {
        for (auto& L : enumerate_corpus(6)) {
            PlanarDiagram d = diagram(L);
            CHECK(homfly(d, SkeinConvention::Standard, true).identical(homfly(d, SkeinConvention::Standard, false)));
        }
    }

    TEST_CASE("mirrored convention is the mirror image") {
        for (auto& L : enumerate_corpus(7)) {
            PlanarDiagram d = diagram(L);
            QScalar h = homfly(d);
            QScalar m = homfly(d, SkeinConvention::Mirrored);
            CHECK(m.canonicalize() == h.mirrored().canonicalize());
        }
    }

    TEST_CASE("knots with equal fractions are mirror images") {
        std::map<std::string, std::vector<TwoBridgeLink>> byfrac;
        for (auto& L : enumerate_corpus(8))
            if (L.components == 1) byfrac[format_fraction(L.fraction)].push_back(L);
        int pairs = 0;
        for (auto& [f, v] : byfrac) {
            if (v.size() < 2) continue;
            ++pairs;
            for (int j = 1; j <= 2; ++j) {
                INFO(f, " j=", j);
                QScalar x = eval_reduced(v[0], j, Start::Auto, Normalize::Canonical);
                QScalar y = eval_reduced(v[1], j, Start::Auto, Normalize::Canonical);
                CHECK(x == y.mirrored().canonicalize());
            }
        }
        CHECK(pairs > 10);
    }

    TEST_CASE("textbook values up to chirality") {
        auto T = make_link(parse_cf("3"));
        std::string h = homfly(diagram(T)).canonicalize().to_string();
        CHECK((h == "1 + q^4 - a^2 q^2" || h == "q^2 - a^2 - a^2 q^4"));
        std::string v = jones_kauffman(diagram(T)).canonicalize().to_string();
        CHECK((v == "1 + q^4 - q^6" || v == "1 - q^2 - q^6"));
        auto F = make_link(parse_cf("2,2"));
        CHECK(jones_kauffman(diagram(F)).canonicalize().to_string() == "1 - q^2 + q^4 - q^6 + q^8");
        auto U = make_link(parse_cf("1"));
        CHECK(homfly(diagram(U)) == QScalar(1));
    }

    TEST_CASE("check functions on small inputs") {
        auto F = make_link(parse_cf("2,2"));
        CHECK(check_homfly(F).ok);
        CHECK(check_jones(F).ok);
        CHECK(check_nested_sum(F, 2).ok);
        CHECK(check_integrality(F, 2).ok);
        CHECK(check_determinant(F, 2).ok);
        CHECK(check_amphichiral(F, 2).ok);
        CHECK(is_amphichiral_fraction(F.fraction));
        CHECK_FALSE(is_amphichiral_fraction(make_link(parse_cf("3")).fraction));
        auto H = make_link(parse_cf("2"));
        CHECK(check_integrality(H, 1).detail.rfind("skipped", 0) == 0);
    }
}
