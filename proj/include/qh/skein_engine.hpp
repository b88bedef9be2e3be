#pragma once

#include <string>
#include <vector>

#include "qh/qscalar.hpp"
#include "qh/twobridge.hpp"

namespace qh {

enum class Family { UP, UPs, OP, OPs, RI, RIs };
enum class Start { Auto, UP, OP };
enum class Normalize { Raw, Canonical };

const char* family_name(Family f);

struct SkeinState {
    int j = 0;
    Family family = Family::UP;
    std::vector<QScalar> coeffs;
    bool s_is_one = false;  // knot evaluations specialize s = 1 from the start
};

// sign * a^ea q^eq s^es * qbinom(binom_n, binom_m)
struct RuleTerm {
    int sign;
    int ea, eq, es;
    int binom_n, binom_m;
};

Family twist_target(TwistOp op, Family f);
RuleTerm twist_coefficient(TwistOp op, Family f, int j, int h, int k);

bool closes_vertically(Family f);
bool closes_horizontally(Family f);

SkeinState initial_state(int j, Family start);
SkeinState apply_twist(const SkeinState& state, TwistOp op);
QScalar closure_factor(Family f, int j, int k, bool s_is_one);
QScalar close(const SkeinState& state);

// family reached after the whole word; nullopt if the start cannot close
std::optional<Family> final_family(const ContinuedFraction& cf, Family start, bool knot);
Family resolve_start(const TwoBridgeLink& link, Start start);

QScalar eval_reduced(const TwoBridgeLink& link, int j, Start start, Normalize normalize);
QScalar specialize_two_component(const QScalar& ptilde, int i, int j);
QScalar row_colored(const QScalar& p_col, int r);

}  // namespace qh
