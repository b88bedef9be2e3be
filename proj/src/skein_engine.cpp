#include "qh/skein_engine.hpp"

#include "qh/errors.hpp"
#include "qh/qcombinatorics.hpp"

namespace qh {

const char* family_name(Family f) {
    switch (f) {
        case Family::UP: return "UP";
        case Family::UPs: return "UPs";
        case Family::OP: return "OP";
        case Family::OPs: return "OPs";
        case Family::RI: return "RI";
        case Family::RIs: return "RIs";
    }
    return "?";
}

Family twist_target(TwistOp op, Family f) {
    if (op == TwistOp::T) {
        switch (f) {
            case Family::UP: return Family::UPs;
            case Family::UPs: return Family::UP;
            case Family::OP: return Family::RIs;
            case Family::OPs: return Family::RI;
            case Family::RI: return Family::OPs;
            case Family::RIs: return Family::OP;
        }
    }
    switch (f) {
        case Family::UP: return Family::OP;
        case Family::UPs: return Family::OPs;
        case Family::OP: return Family::UP;
        case Family::OPs: return Family::UPs;
        case Family::RI: return Family::RIs;
        case Family::RIs: return Family::RI;
    }
    return f;
}

RuleTerm twist_coefficient(TwistOp op, Family f, int j, int h, int k) {
    int sign = h % 2 == 0 ? 1 : -1;
    if (op == TwistOp::T) {
        int e = h * (k + 1);
        switch (f) {
            case Family::UP: return {sign, 0, e, k, h, k};
            case Family::UPs: return {sign, 0, e, h, h, k};
            case Family::OPs: return {sign, k, e - 2 * j * k, h - k, h, k};
            case Family::OP: return {sign, k, e - 2 * j * k, -k, h, k};
            case Family::RI: return {sign, h, h * (k + 1 - 2 * j), k - h, h, k};
            case Family::RIs: return {sign, h, h * (k + 1 - 2 * j), -h, h, k};
        }
    }
    switch (f) {
        case Family::UP: return {sign, h, j * k + h * (1 - k - j), k - h, j - h, k - h};
        case Family::UPs: return {sign, h, j * k + h * (1 - k - j), -h, j - h, k - h};
        case Family::OP: return {sign, k, -j * k + h * (1 + j - k), h - k, j - h, k - h};
        case Family::OPs: return {sign, k, -j * k + h * (1 + j - k), -k, j - h, k - h};
        case Family::RI: return {sign, 0, j * k + h * (1 + j - k), k, j - h, k - h};
        case Family::RIs: return {sign, 0, j * k + h * (1 + j - k), h, j - h, k - h};
    }
    return {};
}

bool closes_vertically(Family f) { return f == Family::UP || f == Family::OP; }
bool closes_horizontally(Family f) { return f == Family::RI || f == Family::OPs; }

SkeinState initial_state(int j, Family start) {
    if (j < 0) throw InvalidInput("color must be nonnegative");
    if (start != Family::UP && start != Family::OP) throw InvalidInput("start family must be UP or OP");
    SkeinState st;
    st.j = j;
    st.family = start;
    st.coeffs.assign(static_cast<std::size_t>(j) + 1, QScalar());
    st.coeffs[0] = QScalar(1);
    return st;
}

SkeinState apply_twist(const SkeinState& state, TwistOp op) {
    int j = state.j;
    std::vector<std::vector<LaurentPoly>> parts(static_cast<std::size_t>(j) + 1);
    std::vector<std::vector<QScalar>> fractional(static_cast<std::size_t>(j) + 1);
    for (int k = 0; k <= j; ++k) {
        const QScalar& c = state.coeffs[k];
        if (c.is_zero()) continue;
        int lo = op == TwistOp::T ? k : 0;
        int hi = op == TwistOp::T ? j : k;
        for (int h = lo; h <= hi; ++h) {
            RuleTerm r = twist_coefficient(op, state.family, j, h, k);
            const LaurentPoly& b = qbinom(r.binom_n, r.binom_m);
            if (b.is_zero()) continue;
            LaurentPoly t = (b * c.num()).shifted(r.ea, r.eq, state.s_is_one ? 0 : r.es);
            if (r.sign < 0) t = -t;
            if (c.has_den())
                fractional[h].push_back(QScalar::unnormalized(std::move(t), c.den()));
            else
                parts[h].push_back(std::move(t));
        }
    }
    SkeinState out;
    out.j = j;
    out.family = twist_target(op, state.family);
    out.s_is_one = state.s_is_one;
    out.coeffs.resize(static_cast<std::size_t>(j) + 1);
    for (int h = 0; h <= j; ++h) {
        QScalar v(LaurentPoly::sum(std::move(parts[h])));
        if (!fractional[h].empty()) {
            fractional[h].push_back(v);
            v = QScalar::sum(fractional[h]);
        }
        out.coeffs[h] = std::move(v);
    }
    return out;
}

namespace {

struct ClosureParts {
    LaurentPoly num;
    QScalar::Den den;
};

ClosureParts closure_parts(Family f, int j, int k, bool s_is_one) {
    LaurentPoly n1, n2;
    int c1 = 0, c2 = 0;
    switch (f) {
        case Family::UP:
            n1 = shifted_factor_product(j - k, 1, 0, -k);
            n2 = shifted_factor_product(k, 1, -1, -j);
            c1 = j - k;
            c2 = k;
            break;
        case Family::OP:
            n1 = shifted_factor_product(j - k, 1, 0, -k);
            n2 = shifted_factor_product(k, 0, 1, j);
            c1 = j - k;
            c2 = k;
            break;
        case Family::RI:
            n1 = shifted_factor_product(k, 1, 0, k - j);
            n2 = shifted_factor_product(j - k, 1, -1, -j);
            c1 = k;
            c2 = j - k;
            break;
        case Family::OPs:
            n1 = shifted_factor_product(k, 1, 0, k - j);
            n2 = shifted_factor_product(j - k, 0, 1, j);
            c1 = k;
            c2 = j - k;
            break;
        default:
            throw UnclosableFamily(std::string("family ") + family_name(f) + " has no closure");
    }
    if (s_is_one) {
        n1 = n1.set_s_one();
        n2 = n2.set_s_one();
    }
    ClosureParts p;
    p.num = n1 * n2;
    p.den = den_product(factorial_den(c1), factorial_den(c2));
    return p;
}

}  // namespace

QScalar closure_factor(Family f, int j, int k, bool s_is_one) {
    ClosureParts p = closure_parts(f, j, k, s_is_one);
    return QScalar::unnormalized(std::move(p.num), std::move(p.den)).normalized();
}

QScalar close(const SkeinState& state) {
    if (!closes_vertically(state.family) && !closes_horizontally(state.family))
        throw UnclosableFamily(std::string("family ") + family_name(state.family) + " has no closure");
    int j = state.j;
    std::vector<ClosureParts> parts(static_cast<std::size_t>(j) + 1);
    QScalar::Den common;
    for (int k = 0; k <= j; ++k) {
        if (state.coeffs[k].is_zero()) continue;
        parts[k] = closure_parts(state.family, j, k, state.s_is_one);
        parts[k].den = den_product(parts[k].den, state.coeffs[k].den());
        common = den_lcm(common, parts[k].den);
    }
    std::vector<LaurentPoly> nums;
    for (int k = 0; k <= j; ++k) {
        if (state.coeffs[k].is_zero()) continue;
        LaurentPoly factor = parts[k].num * den_poly(den_quotient(common, parts[k].den));
        nums.push_back(state.coeffs[k].num() * factor);
    }
    return QScalar::unnormalized(LaurentPoly::sum(std::move(nums)), common).normalized();
}

namespace {

Family knot_identified(Family f) {
    if (f == Family::UPs) return Family::UP;
    if (f == Family::RIs) return Family::RI;
    return f;
}

// The family to twist from at the last step: knots may trade UP for UPs
// (or RI for RIs) so that the result closes the way the last twist demands.
Family last_step_family(Family f, TwistOp op) {
    if (op == TwistOp::R && f == Family::UP) return Family::UPs;
    if (op == TwistOp::T && f == Family::RI) return Family::RIs;
    return f;
}

bool closure_matches(Family f, TwistOp last) {
    return last == TwistOp::T ? closes_vertically(f) : closes_horizontally(f);
}

}  // namespace

std::optional<Family> final_family(const ContinuedFraction& cf, Family start, bool knot) {
    auto seq = twist_sequence(cf);
    Family f = start;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (knot && i + 1 == seq.size()) f = last_step_family(f, seq[i]);
        f = twist_target(seq[i], f);
    }
    if (knot) f = knot_identified(f);
    if (!closure_matches(f, seq.back())) return std::nullopt;
    return f;
}

Family resolve_start(const TwoBridgeLink& link, Start start) {
    bool knot = link.components == 1;
    if (start == Start::Auto) {
        if (!knot) return Family::UP;
        if (final_family(link.cf, Family::UP, true)) return Family::UP;
        if (final_family(link.cf, Family::OP, true)) return Family::OP;
        throw UnclosableFamily("no orientation-consistent start for " + format_cf(link.cf));
    }
    Family f = start == Start::UP ? Family::UP : Family::OP;
    if (!final_family(link.cf, f, knot))
        throw UnclosableFamily(std::string("start ") + family_name(f) + " cannot close " + format_cf(link.cf) +
                               (knot ? " (orientation-inconsistent for this knot)" : ""));
    return f;
}

QScalar eval_reduced(const TwoBridgeLink& link, int j, Start start, Normalize normalize) {
    if (j < 0) throw InvalidInput("color must be nonnegative");
    bool knot = link.components == 1;
    Family f0 = resolve_start(link, start);
    SkeinState st = initial_state(j, f0);
    st.s_is_one = knot;
    auto seq = twist_sequence(link.cf);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (knot && i + 1 == seq.size()) st.family = last_step_family(st.family, seq[i]);
        st = apply_twist(st, seq[i]);
    }
    if (knot) st.family = knot_identified(st.family);
    if (!closure_matches(st.family, seq.back()))
        throw UnclosableFamily(std::string("evaluation ended in ") + family_name(st.family) + " for " +
                               format_cf(link.cf));
    QScalar v = close(st);
    if (normalize == Normalize::Canonical) v = v.canonicalize();
    return v;
}

QScalar specialize_two_component(const QScalar& ptilde, int i, int j) {
    if (j < 0 || i < j) throw InvalidInput("specialization needs i >= j >= 0");
    Substitution sub;
    sub.s = SignedQPower{1, i - j};
    return ptilde.substitute(sub) * unknot_colored(i);
}

QScalar row_colored(const QScalar& p_col, int r) {
    if (r < 0) throw InvalidInput("color must be nonnegative");
    if (p_col.num().has_s()) throw InvalidInput("row transform needs an s-free value");
    Substitution sub;
    sub.invert_q = true;
    QScalar v = p_col.substitute(sub);
    return r % 2 == 0 ? v : -v;
}

}  // namespace qh
