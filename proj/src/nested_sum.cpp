#include "qh/nested_sum.hpp"

#include <map>

#include "qh/errors.hpp"

namespace qh {

namespace {

enum Fam { UP, UPs, OP, OPs, RI, RIs };

// balanced q-binomials by Pascal's rule
class Pascal {
public:
    const LaurentPoly& get(int n, int m) {
        auto key = std::make_pair(n, m);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        LaurentPoly v;
        if (m < 0 || m > n)
            v = LaurentPoly();
        else if (m == 0 || m == n)
            v = LaurentPoly(1);
        else
            v = get(n - 1, m).shifted(0, -m, 0) + get(n - 1, m - 1).shifted(0, n - m, 0);
        return memo_.emplace(key, std::move(v)).first->second;
    }

private:
    std::map<std::pair<int, int>, LaurentPoly> memo_;
};

struct Step {
    Fam target;
    // exponents of a, s, q and the q-binomial arguments, as functions of (j, h, k)
    int ea, es, eq;
    int bn, bm;
};

Step rule(TwistOp op, Fam f, int j, int h, int k) {
    if (op == TwistOp::T) {
        switch (f) {
            case UP: return {UPs, 0, k, h * (k + 1), h, k};
            case UPs: return {UP, 0, h, h * (k + 1), h, k};
            case OPs: return {RI, k, h - k, -2 * j * k + h * (k + 1), h, k};
            case OP: return {RIs, k, -k, -2 * j * k + h * (k + 1), h, k};
            case RI: return {OPs, h, k - h, h * (k + 1 - 2 * j), h, k};
            case RIs: return {OP, h, -h, h * (k + 1 - 2 * j), h, k};
        }
    }
    switch (f) {
        case UP: return {OP, h, k - h, j * k + h * (1 - k - j), j - h, k - h};
        case UPs: return {OPs, h, -h, j * k + h * (1 - k - j), j - h, k - h};
        case OP: return {UP, k, h - k, -j * k + h * (1 + j - k), j - h, k - h};
        case OPs: return {UPs, k, -k, -j * k + h * (1 + j - k), j - h, k - h};
        case RI: return {RIs, 0, k, j * k + h * (1 + j - k), j - h, k - h};
        case RIs: return {RI, 0, h, j * k + h * (1 + j - k), j - h, k - h};
    }
    throw InvalidInput("unknown family");
}

// prod_{l<n} (x q^{m-l} - x^-1 q^{l-m}) / (q^{l+1} - q^{-l-1}) with x = a^xa s^xs
QScalar pochhammer_ratio(int n, int xa, int xs, int m) {
    LaurentPoly num(1);
    QScalar::Den den;
    for (int l = 0; l < n; ++l) {
        LaurentPoly f = LaurentPoly::monomial(1, xa, m - l, xs) - LaurentPoly::monomial(1, -xa, l - m, -xs);
        num = num * f;
        den.emplace_back(l + 1, 1);
    }
    return QScalar(num, den);
}

QScalar closure(Fam f, int j, int k) {
    switch (f) {
        case UP: return pochhammer_ratio(j - k, 1, 0, -k) * pochhammer_ratio(k, 1, -1, -j);
        case OP: return pochhammer_ratio(j - k, 1, 0, -k) * pochhammer_ratio(k, 0, 1, j);
        case RI: return pochhammer_ratio(k, 1, 0, k - j) * pochhammer_ratio(j - k, 1, -1, -j);
        case OPs: return pochhammer_ratio(k, 1, 0, k - j) * pochhammer_ratio(j - k, 0, 1, j);
        default: throw UnclosableFamily("nested sum ended in a family without closure");
    }
}

struct Walker {
    int j;
    std::vector<TwistOp> ops;
    std::vector<Fam> fams;  // family before each twist
    Pascal pascal;
    std::vector<LaurentPoly> acc;  // summed products keyed by the last index

    void walk(std::size_t step, int k, const LaurentPoly& prod) {
        if (step == ops.size()) {
            acc[static_cast<std::size_t>(k)] += prod;
            return;
        }
        TwistOp op = ops[step];
        int lo = op == TwistOp::T ? k : 0;
        int hi = op == TwistOp::T ? j : k;
        for (int h = lo; h <= hi; ++h) {
            Step st = rule(op, fams[step], j, h, k);
            const LaurentPoly& b = pascal.get(st.bn, st.bm);
            if (b.is_zero()) continue;
            LaurentPoly t = (prod * b).shifted(st.ea, st.eq, st.es);
            walk(step + 1, h, h % 2 == 0 ? t : -t);
        }
    }
};

}  // namespace

QScalar nested_sum_reduced(const TwoBridgeLink& link, int j, Family start) {
    if (j < 0) throw InvalidInput("color must be nonnegative");
    Fam f;
    if (start == Family::UP)
        f = UP;
    else if (start == Family::OP)
        f = OP;
    else
        throw InvalidInput("nested sum starts from UP or OP");
    bool knot = link.components == 1;
    Walker w;
    w.j = j;
    w.ops = twist_sequence(link.cf);
    for (std::size_t i = 0; i < w.ops.size(); ++i) {
        bool last = i + 1 == w.ops.size();
        if (knot && last && w.ops[i] == TwistOp::R && f == UP) f = UPs;
        if (knot && last && w.ops[i] == TwistOp::T && f == RI) f = RIs;
        w.fams.push_back(f);
        f = rule(w.ops[i], f, j, 0, 0).target;
    }
    if (knot && f == UPs) f = UP;
    if (knot && f == RIs) f = RI;
    bool vertical = f == UP || f == OP;
    if (vertical != (w.ops.back() == TwistOp::T)) throw UnclosableFamily("nested sum start cannot close this link");
    w.acc.assign(static_cast<std::size_t>(j) + 1, LaurentPoly());
    w.walk(0, 0, LaurentPoly(1));
    std::vector<QScalar> parts;
    for (int k = 0; k <= j; ++k)
        if (!w.acc[static_cast<std::size_t>(k)].is_zero())
            parts.push_back(QScalar(w.acc[static_cast<std::size_t>(k)]) * closure(f, j, k));
    QScalar v = QScalar::sum(parts);
    if (knot) v = v.substitute(Substitution{std::nullopt, SignedQPower{1, 0}, false});
    return v;
}

}  // namespace qh
