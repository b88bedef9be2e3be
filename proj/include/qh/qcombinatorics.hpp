#pragma once

#include "qh/laurent_poly.hpp"
#include "qh/qscalar.hpp"

namespace qh {

enum class ClosureKind { UpType, OpType };

LaurentPoly quantum_int(int l);

// balanced q-binomial; memoized, safe to call concurrently
const LaurentPoly& qbinom(int n, int m);

// prod_{l<n} (x q^{c-l} - x^-1 q^{l-c}) with x = a^xa s^xs
LaurentPoly shifted_factor_product(int n, int xa, int xs, int c);
// {[1], ..., [n]}
QScalar::Den factorial_den(int n);

QScalar abinom(int m, int n);
QScalar closure_s_factor(ClosureKind kind, int count, int j);
QScalar unknot_colored(int n);

}  // namespace qh
