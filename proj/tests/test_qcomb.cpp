#include <doctest.h>

#include "qh/errors.hpp"
#include "qh/qcombinatorics.hpp"

using namespace qh;

namespace {

LaurentPoly qm(int e) { return LaurentPoly::monomial(1, 0, e, 0); }

QScalar at_a(const QScalar& x, int power) {
    Substitution sub;
    sub.a = SignedQPower{1, power};
    return x.substitute(sub);
}

}  // namespace

TEST_SUITE("qcomb") {
    TEST_CASE("quantum integers") {
        CHECK(quantum_int(0).is_zero());
        CHECK(quantum_int(1) == LaurentPoly(1));
        CHECK(quantum_int(3) == qm(2) + LaurentPoly(1) + qm(-2));
        for (int l = -6; l <= 6; ++l) CHECK(quantum_int(l) * LaurentPoly::binomial(0, 1, 0) == LaurentPoly::binomial(0, l, 0));
    }

    TEST_CASE("q-binomials satisfy Pascal's rule for n <= 12") {
        for (int n = 1; n <= 12; ++n)
            for (int m = 0; m <= n; ++m) {
                LaurentPoly rhs = qbinom(n - 1, m).shifted(0, -m, 0) + qbinom(n - 1, m - 1).shifted(0, n - m, 0);
                CHECK(qbinom(n, m) == rhs);
            }
    }

    TEST_CASE("q-binomials are symmetric in m and in q") {
        Substitution inv;
        inv.invert_q = true;
        for (int n = 0; n <= 12; ++n)
            for (int m = 0; m <= n; ++m) {
                CHECK(qbinom(n, m) == qbinom(n, n - m));
                CHECK(QScalar(qbinom(n, m)).substitute(inv) == QScalar(qbinom(n, m)));
            }
    }

    TEST_CASE("q-binomials agree with the factorial ratio") {
        for (int n = 0; n <= 10; ++n)
            for (int m = 0; m <= n; ++m) {
                LaurentPoly num(1);
                QScalar::Den den;
                for (int t = 1; t <= m; ++t) {
                    num = num * quantum_int(n - m + t);
                    num = num.mul_by_quantum(1);
                    den.emplace_back(t, 1);
                }
                CHECK(QScalar(num, den) == QScalar(qbinom(n, m)));
            }
    }

    TEST_CASE("q-binomials vanish outside 0 <= m <= n") {
        CHECK(qbinom(3, 4).is_zero());
        CHECK(qbinom(3, -1).is_zero());
        CHECK(qbinom(0, 0) == LaurentPoly(1));
    }

    TEST_CASE("a-binomials vanish where a factor does") {
        for (int n = 1; n <= 5; ++n)
            for (int m = -3; m <= 3; ++m)
                for (int N = -6; N <= 6; ++N) {
                    bool zero = N + m >= 0 && N + m < n;
                    CHECK(at_a(abinom(m, n), N).is_zero() == zero);
                }
    }

    TEST_CASE("colored unknot is the quantum dimension of the exterior power") {
        CHECK(unknot_colored(0) == QScalar(1));
        CHECK(unknot_colored(1) == QScalar(LaurentPoly::binomial(1, 0, 0), {{1, 1}}));
        for (int n = 0; n <= 5; ++n)
            for (int N = 0; N <= 7; ++N) CHECK(at_a(unknot_colored(n), N) == QScalar(qbinom(N, n)));
        CHECK_THROWS_AS(unknot_colored(-1), InvalidInput);
    }

    TEST_CASE("shifted factor products") {
        CHECK(shifted_factor_product(0, 1, 0, 3) == LaurentPoly(1));
        CHECK(shifted_factor_product(1, 1, -1, 2) == LaurentPoly::binomial(1, 2, -1));
        LaurentPoly two = LaurentPoly::binomial(1, 0, 0) * LaurentPoly::binomial(1, -1, 0);
        CHECK(shifted_factor_product(2, 1, 0, 0) == two);
        CHECK(factorial_den(3) == QScalar::Den{{1, 1}, {2, 1}, {3, 1}});
    }

    TEST_CASE("closure s-factors specialize to q-binomials") {
        for (int j = 0; j <= 4; ++j)
            for (int count = 0; count <= j; ++count)
                for (int i = j; i <= j + 3; ++i) {
                    Substitution sub;
                    sub.s = SignedQPower{1, i - j};
                    CHECK(closure_s_factor(ClosureKind::OpType, count, j).substitute(sub) == QScalar(qbinom(i, count)));
                }
    }
}
