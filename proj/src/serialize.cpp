#include "qh/serialize.hpp"

#include "qh/errors.hpp"

namespace qh {

json scalar_to_json(const QScalar& x) {
    json num = json::array();
    for (auto& t : x.num().terms()) {
        Exponent e = LaurentPoly::unpack(t.key);
        num.push_back({{"a", e.a}, {"q", e.q}, {"s", e.s}, {"c", t.c.get_str()}});
    }
    json den = json::array();
    for (auto& [l, m] : x.den()) den.push_back({{"l", l}, {"mult", m}});
    return {{"num", num}, {"den", den}};
}

QScalar scalar_from_json(const json& j) {
    try {
        std::vector<LaurentPoly::Term> terms;
        for (auto& t : j.at("num")) {
            mpz_class c;
            if (c.set_str(t.at("c").get<std::string>(), 10) != 0) throw InvalidInput("bad coefficient");
            terms.push_back({LaurentPoly::pack(t.at("a").get<int>(), t.at("q").get<int>(), t.at("s").get<int>()), c});
        }
        QScalar::Den den;
        for (auto& f : j.at("den")) den.emplace_back(f.at("l").get<int>(), f.at("mult").get<int>());
        return QScalar::unnormalized(LaurentPoly::from_terms(std::move(terms)), std::move(den));
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed scalar JSON: ") + e.what());
    }
}

json record_to_json(const ResultRecord& r) {
    return {{"cf", r.cf.entries},
            {"fraction", format_fraction(r.fraction)},
            {"color", r.color},
            {"start", r.start == Family::UP ? "up" : "op"},
            {"normalized", r.normalized},
            {"components", r.components},
            {"value", scalar_to_json(r.value)}};
}

ResultRecord record_from_json(const json& j) {
    try {
        ResultRecord r;
        r.cf.entries = j.at("cf").get<std::vector<int>>();
        r.fraction = parse_fraction(j.at("fraction").get<std::string>());
        r.color = j.at("color").get<int>();
        std::string st = j.at("start").get<std::string>();
        if (st != "up" && st != "op") throw InvalidInput("bad start family in record");
        r.start = st == "up" ? Family::UP : Family::OP;
        r.normalized = j.at("normalized").get<bool>();
        r.components = j.at("components").get<int>();
        r.value = scalar_from_json(j.at("value"));
        return r;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed result record: ") + e.what());
    }
}

json operator_to_json(const RecurrenceOperator& A) {
    json coeffs = json::array();
    for (auto& row : A.coeffs) {
        json r = json::array();
        for (auto& c : row) r.push_back(scalar_to_json(c));
        coeffs.push_back(r);
    }
    return {{"order", A.order}, {"mdeg", A.mdeg}, {"coeffs", coeffs}};
}

RecurrenceOperator operator_from_json(const json& j) {
    try {
        RecurrenceOperator A = RecurrenceOperator::zero(j.at("order").get<int>(), j.at("mdeg").get<int>());
        const json& c = j.at("coeffs");
        if (c.size() != A.coeffs.size()) throw InvalidInput("operator coefficient rows do not match its order");
        for (std::size_t l = 0; l < c.size(); ++l) {
            if (c[l].size() != A.coeffs[l].size()) throw InvalidInput("operator coefficient row does not match its M-degree");
            for (std::size_t k = 0; k < c[l].size(); ++k) A.coeffs[l][k] = scalar_from_json(c[l][k]);
        }
        return A;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed operator JSON: ") + e.what());
    }
}

}  // namespace qh
