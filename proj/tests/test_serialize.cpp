#include <doctest.h>

#include <random>

#include "qh/errors.hpp"
#include "qh/serialize.hpp"
#include "random_poly.hpp"

using namespace qh;

TEST_SUITE("serialize") {
    TEST_CASE("scalars round trip exactly") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 100; ++i) {
            QScalar x = testing::random_scalar(rng);
            QScalar y = scalar_from_json(json::parse(scalar_to_json(x).dump()));
            CHECK(y.identical(x));
        }
        QScalar big(LaurentPoly(mpz_class("-123456789012345678901234567890")));
        CHECK(scalar_from_json(scalar_to_json(big)).identical(big));
    }

    TEST_CASE("records round trip") {
        ResultRecord r;
        for (auto& L : enumerate_corpus(6))
            if (L.crossings == 6 && final_family(L.cf, Family::OP, L.components == 1)) {
                r.cf = L.cf;
                break;
            }
        REQUIRE_FALSE(r.cf.entries.empty());
        r.fraction = cf_to_fraction(r.cf);
        r.color = 3;
        r.start = Family::OP;
        r.normalized = false;
        r.components = component_count(r.cf);
        r.value = eval_reduced(make_link(r.cf), 3, Start::OP, Normalize::Raw);
        ResultRecord s = record_from_json(json::parse(record_to_json(r).dump()));
        CHECK(s.cf == r.cf);
        CHECK(s.fraction == r.fraction);
        CHECK(s.color == 3);
        CHECK(s.start == Family::OP);
        CHECK_FALSE(s.normalized);
        CHECK(s.components == r.components);
        CHECK(s.value.identical(r.value));
    }

    TEST_CASE("operators round trip") {
        std::mt19937_64 rng(5);
        RecurrenceOperator A = RecurrenceOperator::zero(2, 3);
        for (auto& row : A.coeffs)
            for (auto& c : row) c = testing::random_scalar(rng);
        RecurrenceOperator B = operator_from_json(json::parse(operator_to_json(A).dump()));
        REQUIRE(B.order == 2);
        REQUIRE(B.mdeg == 3);
        for (std::size_t l = 0; l < A.coeffs.size(); ++l)
            for (std::size_t k = 0; k < A.coeffs[l].size(); ++k) CHECK(B.coeffs[l][k].identical(A.coeffs[l][k]));
    }

    TEST_CASE("malformed input is rejected") {
        CHECK_THROWS_AS(scalar_from_json(json::parse(R"({"num":[{"a":0,"q":0,"s":0,"c":"x1"}],"den":[]})")), InvalidInput);
        CHECK_THROWS_AS(scalar_from_json(json::parse(R"({"num":[]})")), InvalidInput);
        CHECK_THROWS_AS(record_from_json(json::parse(R"({"cf":[3]})")), InvalidInput);
        CHECK_THROWS_AS(operator_from_json(json::parse(R"({"order":1,"mdeg":0,"coeffs":[[]]})")), InvalidInput);
    }
}
