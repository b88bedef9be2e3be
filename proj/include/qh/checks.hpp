#pragma once

#include <string>

#include "qh/twobridge.hpp"

namespace qh {

struct CheckOutcome {
    bool ok = true;
    std::string detail;
};

// j = 1 engine value (s = 1, canonical) against the skein-recursion oracle
CheckOutcome check_homfly(const TwoBridgeLink& link);
// a = q^2 specialization of the j = 1 engine value against the bracket oracle
CheckOutcome check_jones(const TwoBridgeLink& link);
// operator engine against the brute-force multi-sum, raw
CheckOutcome check_nested_sum(const TwoBridgeLink& link, int j);
// knots only: the s = 1 value has no denominator
CheckOutcome check_integrality(const TwoBridgeLink& link, int j);
// knots only: a = q^j, s = 1 gives a signed q-monomial
CheckOutcome check_determinant(const TwoBridgeLink& link, int j);
// knots only: invariance under (a, q) -> (a^-1, q^-1) when the fraction says the knot is amphichiral
CheckOutcome check_amphichiral(const TwoBridgeLink& link, int j);

// p/q with q^2 = -1 mod p
bool is_amphichiral_fraction(const Fraction& f);

}  // namespace qh
