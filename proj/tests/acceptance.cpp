#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qh/checks.hpp"
#include "qh/errors.hpp"
#include "qh/holonomy.hpp"
#include "qh/skein_engine.hpp"
#include "random_poly.hpp"

using namespace qh;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

Verdict fail(std::string why) { return {false, std::move(why)}; }

template <class F>
Verdict over_corpus(int max_crossings, bool knots_only, const std::vector<int>& colors, F&& check) {
    int n = 0;
    for (auto& L : enumerate_corpus(max_crossings)) {
        if (knots_only && L.components != 1) continue;
        for (int j : colors) {
            CheckOutcome o = check(L, j);
            if (!o.ok) return fail(format_cf(L.cf) + " j=" + std::to_string(j) + ": " + o.detail);
            ++n;
        }
    }
    return {true, std::to_string(n) + " cases"};
}

std::vector<int> range(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

Verdict nested_sums() { return over_corpus(4, false, range(0, 3), check_nested_sum); }

Verdict classical() {
    return over_corpus(8, false, {1}, [](const TwoBridgeLink& L, int) {
        CheckOutcome h = check_homfly(L);
        if (!h.ok) return CheckOutcome{false, "HOMFLY " + h.detail};
        CheckOutcome v = check_jones(L);
        if (!v.ok) return CheckOutcome{false, "Jones " + v.detail};
        return CheckOutcome{};
    });
}

Verdict smoke() {
    TwoBridgeLink U = make_link(parse_cf("1"));
    for (int j = 0; j <= 10; ++j)
        if (!(eval_reduced(U, j, Start::Auto, Normalize::Canonical) == QScalar(1)))
            return fail("unknot at j=" + std::to_string(j));
    int n = 0;
    for (auto& L : enumerate_corpus(6)) {
        QScalar v = eval_reduced(L, 0, Start::Auto, Normalize::Canonical);
        if (!(v == QScalar(1))) return fail(format_cf(L.cf) + " at j=0 gives " + v.to_string());
        ++n;
    }
    return {true, "unknot j<=10, " + std::to_string(n) + " CFs at j=0"};
}

Verdict integrality() { return over_corpus(8, true, range(0, 4), check_integrality); }

Verdict figure_eight() {
    TwoBridgeLink F = make_link(parse_cf("2,2"));
    for (int j = 1; j <= 3; ++j) {
        QScalar v = eval_reduced(F, j, Start::Auto, Normalize::Canonical);
        if (!(v == v.mirrored().canonicalize())) return fail("not invariant at j=" + std::to_string(j));
    }
    return {true, "j=1..3"};
}

Verdict determinant() { return over_corpus(6, true, range(1, 3), check_determinant); }

SequenceWindow sequence(const std::string& cf, int hi) {
    TwoBridgeLink L = make_link(parse_cf(cf));
    SequenceWindow w;
    w.link_id = cf;
    for (int j = 0; j <= hi; ++j) w.values.push_back(eval_reduced(L, j, Start::Auto, Normalize::Canonical));
    return w;
}

Verdict recurrences() {
    GuessOptions opts;
    std::string trefoil;
    bool trefoil_ok = false;
    try {
        SequenceWindow t = sequence("3", 25);
        auto A = guess_recurrence(t, opts);
        if (!A) {
            trefoil = "trefoil: no operator within (4, 8)";
        } else {
            ValidationReport r = validate(*A, t, opts.holdout);
            trefoil_ok = r.pass;
            trefoil = "trefoil: " + A->to_string() + ", " + r.message;
        }
    } catch (const WindowTooShort& e) {
        trefoil = std::string("trefoil: ") + e.what();
    }
    std::string unknot;
    bool unknot_ok = false;
    SequenceWindow u = sequence("1", required_window(opts.d_max, opts.mdeg_max, opts.holdout) - 1);
    auto B = guess_recurrence(u, opts);
    if (!B) {
        unknot = "unknot: none found";
    } else {
        ValidationReport r = validate(*B, u, opts.holdout);
        unknot_ok = r.pass && B->to_string() == "L - 1";
        unknot = "unknot: " + B->to_string() + ", " + r.message;
    }
    return {trefoil_ok && unknot_ok, trefoil + "; " + unknot};
}

Verdict arithmetic() {
    std::mt19937_64 rng(20261019);
    int n = 0;
    for (int i = 0; i < 400; ++i, ++n) {
        QScalar x = testing::random_scalar(rng), y = testing::random_scalar(rng), z = testing::random_scalar(rng);
        if (!((x + y) + z == x + (y + z)) || !((x * y) * z == x * (y * z)) || !(x * y == y * x) ||
            !(x * (y + z) == x * y + x * z) || !((x - x).is_zero()))
            return fail("ring axiom case " + std::to_string(i));
    }
    for (int i = 0; i < 300; ++i, ++n) {
        QScalar x;
        do x = testing::random_scalar(rng);
        while (x.is_zero());
        QScalar c = x.canonicalize();
        if (!c.canonicalize().identical(c)) return fail("canonicalize not idempotent, case " + std::to_string(i));
    }
    for (int i = 0; i < 300; ++i, ++n) {
        LaurentPoly a = testing::random_poly(rng), b = testing::random_nonzero(rng);
        auto back = (a * b).exact_div(b);
        if (!back || !(*back == a)) return fail("exact division case " + std::to_string(i));
    }
    return {true, std::to_string(n) + " cases"};
}

Verdict performance() {
    auto t0 = std::chrono::steady_clock::now();
    QScalar v = eval_reduced(make_link(parse_cf("3")), 50, Start::Auto, Normalize::Raw);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream os;
    os << "trefoil j=50 in " << s << " s, " << v.num().size() << " terms";
    return {s < 60.0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance suite"};
    int only = 0;
    app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::function<Verdict()>> criteria = {nested_sums, classical,   smoke,       integrality, figure_eight,
                                                            determinant, recurrences, arithmetic, performance};
    bool all = true;
    for (int i = 1; i <= 9; ++i) {
        if (only != 0 && only != i) continue;
        auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[static_cast<std::size_t>(i - 1)]();
        } catch (const std::exception& e) {
            v = fail(std::string("exception: ") + e.what());
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d: %s (%s, %.2f s)\n", i, v.pass ? "PASS" : "FAIL", v.detail.c_str(), s);
        std::fflush(stdout);
        all = all && v.pass;
    }
    return all ? 0 : 1;
}
