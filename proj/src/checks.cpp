#include "qh/checks.hpp"

#include "qh/homfly_oracle.hpp"
#include "qh/nested_sum.hpp"
#include "qh/skein_engine.hpp"

namespace qh {

namespace {

QScalar engine_s1(const TwoBridgeLink& link, int j, Normalize norm) {
    QScalar v = eval_reduced(link, j, Start::Auto, Normalize::Raw);
    if (v.num().has_s()) v = v.substitute(Substitution{std::nullopt, SignedQPower{1, 0}, false});
    return norm == Normalize::Canonical ? v.canonicalize() : v;
}

CheckOutcome mismatch(const QScalar& got, const QScalar& want) {
    return {false, "engine " + got.to_string() + " oracle " + want.to_string()};
}

CheckOutcome knots_only(const TwoBridgeLink& link) {
    if (link.components == 1) return {true, ""};
    return {true, "skipped: not a knot"};
}

}  // namespace

CheckOutcome check_homfly(const TwoBridgeLink& link) {
    QScalar e = engine_s1(link, 1, Normalize::Canonical);
    QScalar h = homfly(build_plat(link.cf, resolve_start(link, Start::Auto))).canonicalize();
    if (!(e == h)) return mismatch(e, h);
    return {};
}

CheckOutcome check_jones(const TwoBridgeLink& link) {
    Substitution sub;
    sub.a = SignedQPower{1, 2};
    QScalar e = engine_s1(link, 1, Normalize::Canonical).substitute(sub).canonicalize();
    QScalar v = jones_kauffman(build_plat(link.cf, resolve_start(link, Start::Auto))).canonicalize();
    if (!(e == v)) return mismatch(e, v);
    return {};
}

CheckOutcome check_nested_sum(const TwoBridgeLink& link, int j) {
    QScalar e = eval_reduced(link, j, Start::Auto, Normalize::Raw);
    QScalar n = nested_sum_reduced(link, j, resolve_start(link, Start::Auto));
    if (!(e == n)) return mismatch(e, n);
    return {};
}

CheckOutcome check_integrality(const TwoBridgeLink& link, int j) {
    if (link.components != 1) return knots_only(link);
    QScalar v = engine_s1(link, j, Normalize::Raw).normalized();
    if (v.has_den()) return {false, "denominator remains: " + v.to_string()};
    return {};
}

CheckOutcome check_determinant(const TwoBridgeLink& link, int j) {
    if (link.components != 1) return knots_only(link);
    Substitution sub;
    sub.a = SignedQPower{1, j};
    QScalar v = engine_s1(link, j, Normalize::Raw).substitute(sub);
    if (!v.is_monomial()) return {false, "not a monomial: " + v.to_string()};
    return {};
}

CheckOutcome check_amphichiral(const TwoBridgeLink& link, int j) {
    if (link.components != 1) return knots_only(link);
    if (!is_amphichiral_fraction(link.fraction)) return {true, "skipped: chiral"};
    QScalar v = engine_s1(link, j, Normalize::Canonical);
    QScalar m = v.mirrored().canonicalize();
    if (!(v == m)) return {false, "mirror differs: " + v.to_string() + " vs " + m.to_string()};
    return {};
}

bool is_amphichiral_fraction(const Fraction& f) {
    mpz_class r = (f.q * f.q + 1) % f.p;
    return r == 0;
}

}  // namespace qh
