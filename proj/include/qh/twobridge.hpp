#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace qh {

enum class TwistOp { T, R };

// entries in display order [a_r, ..., a_1]
struct ContinuedFraction {
    std::vector<int> entries;
    bool operator==(const ContinuedFraction&) const = default;
};

struct Fraction {
    mpz_class p;
    mpz_class q;
    bool operator==(const Fraction& o) const { return p == o.p && q == o.q; }
};

struct TwistGroup {
    TwistOp op;
    int count;
    bool operator==(const TwistGroup&) const = default;
};

using OperatorWord = std::vector<TwistGroup>;

struct TwoBridgeLink {
    ContinuedFraction cf;
    Fraction fraction;
    int crossings = 0;
    int components = 0;
};

void validate_cf(const ContinuedFraction& cf);
Fraction cf_to_fraction(const ContinuedFraction& cf);
ContinuedFraction fraction_to_cf(const mpz_class& p, const mpz_class& q);
OperatorWord operator_word(const ContinuedFraction& cf);
// the word expanded into single twists, in application order
std::vector<TwistOp> twist_sequence(const ContinuedFraction& cf);
int component_count(const ContinuedFraction& cf);
TwoBridgeLink make_link(const ContinuedFraction& cf);
std::vector<TwoBridgeLink> enumerate_corpus(int max_crossings);

ContinuedFraction parse_cf(const std::string& text);
Fraction parse_fraction(const std::string& text);
std::string format_cf(const ContinuedFraction& cf);
std::string format_fraction(const Fraction& f);

}  // namespace qh
