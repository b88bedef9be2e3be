#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qh/qscalar.hpp"

namespace qh {

// sum_l sum_m coeffs[l][m] M^m L^l with (M f)_n = q^n f_n and (L f)_n = f_{n+1}
struct RecurrenceOperator {
    int order = 0;
    int mdeg = 0;
    std::vector<std::vector<QScalar>> coeffs;

    static RecurrenceOperator zero(int order, int mdeg);
    bool is_a_free() const;
    // left multiplication by a nonzero field element
    RecurrenceOperator scaled(const QScalar& c) const;
    std::string to_string() const;
};

// consecutive values f_first, f_first+1, ...
struct SequenceWindow {
    std::string link_id;
    int first = 0;
    std::vector<QScalar> values;

    int end() const { return first + static_cast<int>(values.size()); }
    bool contains(int n) const { return n >= first && n < end(); }
    const QScalar& at(int n) const;
};

struct GuessOptions {
    int d_max = 4;
    int mdeg_max = 8;
    int holdout = 5;
    bool a_free = false;
    std::size_t term_budget = 200000;
};

int required_window(int d_max, int mdeg_max, int holdout);

QScalar apply_operator(const RecurrenceOperator& A, const SequenceWindow& f, int n);

// fits on all but the last opts.holdout values; nullopt means none found
std::optional<RecurrenceOperator> guess_recurrence(const SequenceWindow& f, const GuessOptions& opts);

struct ValidationReport {
    bool pass = false;
    std::vector<int> checked;
    std::optional<int> first_failure;
    std::string message;
};

// checks the last `holdout` equations, each one reaching a different trailing value
ValidationReport validate(const RecurrenceOperator& A, const SequenceWindow& f, int holdout);

}  // namespace qh
