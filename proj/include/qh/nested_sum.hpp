#pragma once

#include "qh/qscalar.hpp"
#include "qh/skein_engine.hpp"
#include "qh/twobridge.hpp"

namespace qh {

// Brute-force multi-sum with one summation index per crossing. Shares no
// evaluation code with the operator engine; only meant for small inputs.
QScalar nested_sum_reduced(const TwoBridgeLink& link, int j, Family start);

}  // namespace qh
