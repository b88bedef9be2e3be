#pragma once

#include <string>

#include <json.hpp>

#include "qh/holonomy.hpp"
#include "qh/qscalar.hpp"
#include "qh/skein_engine.hpp"
#include "qh/twobridge.hpp"

namespace qh {

using json = nlohmann::json;

json scalar_to_json(const QScalar& x);
QScalar scalar_from_json(const json& j);

struct ResultRecord {
    ContinuedFraction cf;
    Fraction fraction;
    int color = 0;
    Family start = Family::UP;
    bool normalized = true;
    int components = 1;
    QScalar value;
};

json record_to_json(const ResultRecord& r);
ResultRecord record_from_json(const json& j);

json operator_to_json(const RecurrenceOperator& A);
RecurrenceOperator operator_from_json(const json& j);

}  // namespace qh
