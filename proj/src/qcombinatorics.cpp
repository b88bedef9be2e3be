#include "qh/qcombinatorics.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

#include "qh/errors.hpp"

namespace qh {

LaurentPoly quantum_int(int l) {
    if (l < 0) return -quantum_int(-l);
    std::vector<LaurentPoly::Term> t;
    for (int i = 0; i < l; ++i) t.push_back({LaurentPoly::pack(0, l - 1 - 2 * i, 0), mpz_class(1)});
    return LaurentPoly::from_terms(std::move(t));
}

namespace {

// Gaussian coefficients in x = q^2 from prod_{t=1}^{m} (1 - x^{n-m+t}) / (1 - x^t).
LaurentPoly balanced_binomial(int n, int m) {
    std::vector<mpz_class> c(1, mpz_class(1));
    for (int t = 1; t <= m; ++t) {
        int up = n - m + t;
        std::vector<mpz_class> next(c.size() + static_cast<std::size_t>(up));
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];
            next[i + static_cast<std::size_t>(up)] -= c[i];
        }
        // divide by (1 - x^t)
        for (std::size_t i = static_cast<std::size_t>(t); i < next.size(); ++i) next[i] += next[i - static_cast<std::size_t>(t)];
        next.resize(next.size() - static_cast<std::size_t>(t));
        c = std::move(next);
    }
    std::vector<LaurentPoly::Term> terms;
    int shift = -m * (n - m);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (sgn(c[i]) != 0) terms.push_back({LaurentPoly::pack(0, 2 * static_cast<int>(i) + shift, 0), c[i]});
    return LaurentPoly::from_terms(std::move(terms));
}

LaurentPoly compute_qbinom(int n, int m) {
    if (m < 0) return LaurentPoly();
    if (n >= 0) {
        if (m > n) return LaurentPoly();
        return balanced_binomial(n, m);
    }
    // prod_{t=1}^{m} [n-m+t]/[t] with every factor negative
    LaurentPoly r = balanced_binomial(m - n - 1, m);
    return (m % 2 == 0) ? r : -r;
}

}  // namespace

const LaurentPoly& qbinom(int n, int m) {
    static std::shared_mutex mu;
    static std::map<std::pair<int, int>, LaurentPoly> memo;
    auto key = std::make_pair(n, m);
    {
        std::shared_lock lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    LaurentPoly v = compute_qbinom(n, m);
    std::unique_lock lock(mu);
    return memo.emplace(key, std::move(v)).first->second;
}

LaurentPoly shifted_factor_product(int n, int xa, int xs, int c) {
    LaurentPoly r(1);
    for (int l = 0; l < n; ++l) {
        LaurentPoly hi = r.shifted(xa, c - l, xs);
        LaurentPoly lo = r.shifted(-xa, l - c, -xs);
        r = hi - lo;
    }
    return r;
}

QScalar::Den factorial_den(int n) {
    QScalar::Den d;
    for (int l = 1; l <= n; ++l) d.emplace_back(l, 1);
    return d;
}

QScalar abinom(int m, int n) {
    if (n < 0) throw InvalidInput("a-binomial needs n >= 0");
    return QScalar::unnormalized(shifted_factor_product(n, 1, 0, m), factorial_den(n)).normalized();
}

QScalar closure_s_factor(ClosureKind kind, int count, int j) {
    if (count < 0) throw InvalidInput("closure factor count must be nonnegative");
    LaurentPoly num = kind == ClosureKind::UpType ? shifted_factor_product(count, 1, -1, -j)
                                                  : shifted_factor_product(count, 0, 1, j);
    return QScalar::unnormalized(std::move(num), factorial_den(count)).normalized();
}

QScalar unknot_colored(int n) {
    if (n < 0) throw InvalidInput("color must be nonnegative");
    return abinom(0, n);
}

}  // namespace qh
