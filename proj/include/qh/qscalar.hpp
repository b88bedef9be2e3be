#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qh/laurent_poly.hpp"

namespace qh {

// Target of a substitution: sign * q^power.
struct SignedQPower {
    int sign = 1;
    int power = 0;
};

struct Substitution {
    std::optional<SignedQPower> a;
    std::optional<SignedQPower> s;
    bool invert_q = false;
};

// num / prod_l (q^l - q^-l)^mult
class QScalar {
public:
    using Den = std::vector<std::pair<int, int>>;  // (l, mult), sorted by l

    QScalar() = default;
    QScalar(long c) : num_(c) {}
    QScalar(LaurentPoly num) : num_(std::move(num)) {}
    QScalar(LaurentPoly num, Den den);

    // no normalization; den must be sorted with positive entries
    static QScalar unnormalized(LaurentPoly num, Den den);

    const LaurentPoly& num() const { return num_; }
    const Den& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool has_den() const { return !den_.empty(); }
    bool is_normalized() const;

    QScalar normalized() const;

    QScalar operator-() const;
    QScalar operator+(const QScalar& o) const;
    QScalar operator-(const QScalar& o) const;
    QScalar operator*(const QScalar& o) const;
    QScalar& operator+=(const QScalar& o) { return *this = *this + o; }
    QScalar& operator*=(const QScalar& o) { return *this = *this * o; }

    // value equality (cross-multiplied); identical() compares representations
    bool operator==(const QScalar& o) const;
    bool identical(const QScalar& o) const { return num_ == o.num_ && den_ == o.den_; }

    static QScalar sum(const std::vector<QScalar>& parts);

    QScalar substitute(const Substitution& sub) const;
    QScalar canonicalize() const;
    QScalar mirrored() const;  // (a, q, s) -> (a^-1, q^-1, s^-1)

    // true if the value is a signed monomial (after normalization)
    bool is_monomial() const;

    std::string to_string() const;

private:
    LaurentPoly num_;
    Den den_;

    static void check_den(const Den& d);
};

// mult-wise maximum / sum of two factor multisets
QScalar::Den den_lcm(const QScalar::Den& x, const QScalar::Den& y);
QScalar::Den den_product(const QScalar::Den& x, const QScalar::Den& y);
// big / small, where small divides big as a multiset
QScalar::Den den_quotient(const QScalar::Den& big, const QScalar::Den& small);
LaurentPoly den_poly(const QScalar::Den& d);
// coefficients of the cyclotomic polynomial Phi_n(q), ascending
const std::vector<long>& cyclotomic(int n);

}  // namespace qh
