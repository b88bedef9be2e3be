#pragma once

#include <random>

#include "qh/qscalar.hpp"

namespace qh::testing {

inline LaurentPoly random_poly(std::mt19937_64& rng, int max_terms = 6, int span = 4, bool with_s = true) {
    std::uniform_int_distribution<int> nt(0, max_terms), ex(-span, span), co(-20, 20);
    std::vector<LaurentPoly::Term> t;
    int n = nt(rng);
    for (int i = 0; i < n; ++i)
        t.push_back({LaurentPoly::pack(ex(rng), ex(rng), with_s ? ex(rng) : 0), mpz_class(co(rng))});
    return LaurentPoly::from_terms(std::move(t));
}

inline LaurentPoly random_nonzero(std::mt19937_64& rng, int max_terms = 6, int span = 4, bool with_s = true) {
    while (true) {
        LaurentPoly p = random_poly(rng, max_terms, span, with_s);
        if (!p.is_zero()) return p;
    }
}

inline QScalar random_scalar(std::mt19937_64& rng, bool with_s = true) {
    std::uniform_int_distribution<int> mult(0, 2);
    QScalar::Den den;
    for (int l = 1; l <= 4; ++l)
        if (int m = mult(rng)) den.emplace_back(l, m);
    return QScalar(random_poly(rng, 6, 4, with_s), den);
}

}  // namespace qh::testing
