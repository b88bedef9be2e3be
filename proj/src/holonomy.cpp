#include "qh/holonomy.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "qh/errors.hpp"

namespace qh {

namespace {

using u64 = std::uint64_t;
constexpr u64 kP = (1ULL << 61) - 1;

u64 mulm(u64 x, u64 y) {
    unsigned __int128 r = static_cast<unsigned __int128>(x) * y;
    u64 lo = static_cast<u64>(r & kP);
    u64 hi = static_cast<u64>(r >> 61);
    u64 s = lo + hi;
    if (s >= kP) s -= kP;
    return s;
}

u64 addm(u64 x, u64 y) {
    u64 s = x + y;
    return s >= kP ? s - kP : s;
}

u64 subm(u64 x, u64 y) { return x >= y ? x - y : x + kP - y; }

u64 powm(u64 x, long e) {
    long m = static_cast<long>(kP - 1);
    e %= m;
    if (e < 0) e += m;
    u64 r = 1;
    while (e > 0) {
        if (e & 1) r = mulm(r, x);
        x = mulm(x, x);
        e >>= 1;
    }
    return r;
}

u64 invm(u64 x) { return powm(x, static_cast<long>(kP - 2)); }

u64 mod_of(const mpz_class& c) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), kP);
    return r.get_ui();
}

struct Point {
    u64 a, q, s;
};

using Key = std::pair<int, int>;  // (a exponent, s exponent)

u64 eval_den(const QScalar::Den& d, u64 q) {
    u64 r = 1;
    for (auto& [l, mult] : d) {
        u64 f = subm(powm(q, l), powm(q, -l));
        for (int i = 0; i < mult; ++i) r = mulm(r, f);
    }
    return r;
}

// value of x at the point, or of each (a, s) coefficient at q when grouped
std::map<Key, u64> eval_scalar(const QScalar& x, const Point& pt, bool grouped) {
    std::map<Key, u64> out;
    u64 dinv = invm(eval_den(x.den(), pt.q));
    for (auto& t : x.num().terms()) {
        Exponent e = LaurentPoly::unpack(t.key);
        u64 v = mulm(mod_of(t.c), powm(pt.q, e.q));
        Key k{0, 0};
        if (grouped)
            k = {e.a, e.s};
        else
            v = mulm(v, mulm(powm(pt.a, e.a), powm(pt.s, e.s)));
        out[k] = addm(out[k], v);
    }
    for (auto& [k, v] : out) v = mulm(v, dinv);
    return out;
}

struct RowId {
    int n;  // offset into the window
    Key key;
};

struct Ansatz {
    int d, m;
    int cols() const { return (d + 1) * (m + 1); }
    // columns run over l = d..0, then M-power 0..m
    int col(int l, int k) const { return (d - l) * (m + 1) + k; }
};

std::vector<RowId> rows_for(const Ansatz& z, int fit, bool grouped, const std::vector<std::map<Key, u64>>& vals) {
    std::vector<RowId> rows;
    for (int n = 0; n + z.d < fit; ++n) {
        if (!grouped) {
            rows.push_back({n, {0, 0}});
            continue;
        }
        std::set<Key> keys;
        for (int l = 0; l <= z.d; ++l)
            for (auto& kv : vals[static_cast<std::size_t>(n + l)]) keys.insert(kv.first);
        for (auto& k : keys) rows.push_back({n, k});
    }
    return rows;
}

struct ModResult {
    bool kernel = false;
    std::vector<std::size_t> independent;  // indices into the row list
};

ModResult mod_rank(const Ansatz& z, const std::vector<RowId>& rows, int first, const Point& pt,
                   const std::vector<std::map<Key, u64>>& vals) {
    std::size_t C = static_cast<std::size_t>(z.cols());
    std::vector<std::vector<u64>> mat;
    mat.reserve(rows.size());
    for (auto& r : rows) {
        std::vector<u64> row(C, 0);
        for (int l = 0; l <= z.d; ++l) {
            auto& v = vals[static_cast<std::size_t>(r.n + l)];
            auto it = v.find(r.key);
            if (it == v.end()) continue;
            u64 qn = powm(pt.q, first + r.n);
            u64 x = it->second;
            for (int k = 0; k <= z.m; ++k) {
                row[static_cast<std::size_t>(z.col(l, k))] = x;
                x = mulm(x, qn);
            }
        }
        mat.push_back(std::move(row));
    }
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    ModResult res;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < C && rank < mat.size(); ++c) {
        std::size_t piv = rank;
        while (piv < mat.size() && mat[piv][c] == 0) ++piv;
        if (piv == mat.size()) continue;
        std::swap(mat[piv], mat[rank]);
        std::swap(order[piv], order[rank]);
        u64 inv = invm(mat[rank][c]);
        for (std::size_t i = rank + 1; i < mat.size(); ++i) {
            if (mat[i][c] == 0) continue;
            u64 f = mulm(mat[i][c], inv);
            for (std::size_t k = c; k < C; ++k) mat[i][k] = subm(mat[i][k], mulm(f, mat[rank][k]));
        }
        res.independent.push_back(order[rank]);
        ++rank;
    }
    res.kernel = rank < C;
    return res;
}

void check_budget(const LaurentPoly& p, std::size_t budget) {
    if (p.size() > budget) throw ResourceBudget("recurrence elimination exceeded the term budget");
}

// row of the cleared system for equation n (and coefficient key when grouped)
std::vector<LaurentPoly> exact_row(const Ansatz& z, const RowId& r, const SequenceWindow& f, bool grouped) {
    int n = f.first + r.n;
    QScalar::Den common;
    for (int l = 0; l <= z.d; ++l) common = den_lcm(common, f.at(n + l).den());
    std::vector<LaurentPoly> row(static_cast<std::size_t>(z.cols()));
    for (int l = 0; l <= z.d; ++l) {
        const QScalar& v = f.at(n + l);
        if (v.is_zero()) continue;
        QScalar::Den co = den_quotient(common, v.den());
        LaurentPoly p = co.empty() ? v.num() : v.num() * den_poly(co);
        if (grouped) {
            std::vector<LaurentPoly::Term> t;
            for (auto& term : p.terms()) {
                Exponent e = LaurentPoly::unpack(term.key);
                if (e.a == r.key.first && e.s == r.key.second) t.push_back({LaurentPoly::pack(0, e.q, 0), term.c});
            }
            p = LaurentPoly::from_terms(std::move(t));
        }
        for (int k = 0; k <= z.m; ++k) row[static_cast<std::size_t>(z.col(l, k))] = p.shifted(0, n * k, 0);
    }
    return row;
}

// fraction-free Gauss-Jordan; every pivot ends up equal to the returned determinant
LaurentPoly bareiss(std::vector<std::vector<LaurentPoly>>& mat, std::vector<int>& pivcol, std::size_t budget) {
    std::size_t R = mat.size();
    std::size_t C = R ? mat[0].size() : 0;
    LaurentPoly prev(1);
    std::size_t rank = 0;
    pivcol.clear();
    for (std::size_t c = 0; c < C && rank < R; ++c) {
        std::size_t piv = R;
        for (std::size_t i = rank; i < R; ++i)
            if (!mat[i][c].is_zero() && (piv == R || mat[i][c].size() < mat[piv][c].size())) piv = i;
        if (piv == R) continue;
        std::swap(mat[piv], mat[rank]);
        LaurentPoly p = mat[rank][c];
        for (std::size_t i = 0; i < R; ++i) {
            if (i == rank) continue;
            LaurentPoly mic = mat[i][c];
            for (std::size_t k = 0; k < C; ++k) {
                if (k == c) continue;
                if (mat[i][k].is_zero() && (mic.is_zero() || mat[rank][k].is_zero())) continue;
                LaurentPoly v = p * mat[i][k];
                if (!mic.is_zero() && !mat[rank][k].is_zero()) v -= mic * mat[rank][k];
                auto q = v.exact_div(prev);
                if (!q) throw std::logic_error("inexact fraction-free elimination step");
                check_budget(*q, budget);
                mat[i][k] = std::move(*q);
            }
            mat[i][c] = LaurentPoly();
        }
        prev = p;
        pivcol.push_back(static_cast<int>(c));
        ++rank;
    }
    mat.resize(rank);
    return prev;
}

void strip_common_factors(std::vector<LaurentPoly>& v) {
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) nz.push_back(i);
    if (nz.empty()) return;
    auto all_divide = [&](auto&& div) {
        std::vector<LaurentPoly> out = v;
        for (auto i : nz) {
            auto r = div(v[i]);
            if (!r) return false;
            out[i] = std::move(*r);
        }
        v = std::move(out);
        return true;
    };
    std::size_t small = nz.front();
    for (auto i : nz)
        if (v[i].size() < v[small].size()) small = i;
    if (!v[small].is_monomial()) {
        LaurentPoly s = v[small];
        all_divide([&](const LaurentPoly& x) { return x.exact_div(s); });
    }
    int span = 0;
    for (auto i : nz) {
        Exponent lo = v[i].min_exponents(), hi = v[i].max_exponents();
        if (i == nz.front() || hi.q - lo.q < span) span = hi.q - lo.q;
    }
    for (int d = 1; d <= span; ++d) {
        const std::vector<long>& phi = cyclotomic(d);
        while (all_divide([&](const LaurentPoly& x) { return x.exact_div_q_poly(phi); })) {
        }
    }
    mpz_class g;
    for (auto i : nz) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[i].content().get_mpz_t());
    Exponent lo = v[nz.front()].min_exponents();
    for (auto i : nz) {
        Exponent e = v[i].min_exponents();
        lo.a = std::min(lo.a, e.a);
        lo.q = std::min(lo.q, e.q);
        lo.s = std::min(lo.s, e.s);
    }
    for (auto i : nz) {
        auto r = v[i].exact_div(LaurentPoly(g));
        v[i] = r->shifted(-lo.a, -lo.q, -lo.s);
    }
}

RecurrenceOperator to_operator(const Ansatz& z, std::vector<LaurentPoly> v) {
    strip_common_factors(v);
    RecurrenceOperator A = RecurrenceOperator::zero(z.d, z.m);
    int sign = 1;
    for (int k = z.m; k >= 0; --k) {
        const LaurentPoly& lead = v[static_cast<std::size_t>(z.col(z.d, k))];
        if (lead.is_zero()) continue;
        sign = sgn(lead.terms().back().c) < 0 ? -1 : 1;
        break;
    }
    for (int l = 0; l <= z.d; ++l)
        for (int k = 0; k <= z.m; ++k) {
            LaurentPoly p = v[static_cast<std::size_t>(z.col(l, k))];
            A.coeffs[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] = QScalar(sign < 0 ? -p : p);
        }
    return A;
}

bool top_nonzero(const RecurrenceOperator& A) {
    for (auto& c : A.coeffs.back())
        if (!c.is_zero()) return true;
    return false;
}

// exact kernel of the selected rows; grows the selection until the operator fits every row
std::optional<RecurrenceOperator> exact_fit(const Ansatz& z, const std::vector<RowId>& rows,
                                            std::vector<std::size_t> chosen, const SequenceWindow& f, int fit,
                                            bool grouped, std::size_t budget) {
    std::set<std::size_t> in(chosen.begin(), chosen.end());
    while (true) {
        std::vector<std::vector<LaurentPoly>> mat;
        for (auto i : chosen) mat.push_back(exact_row(z, rows[i], f, grouped));
        std::vector<int> pivcol;
        LaurentPoly det = bareiss(mat, pivcol, budget);
        std::set<int> piv(pivcol.begin(), pivcol.end());
        std::optional<RecurrenceOperator> found;
        for (int fc = 0; fc < z.cols() && !found; ++fc) {
            if (piv.count(fc)) continue;
            std::vector<LaurentPoly> v(static_cast<std::size_t>(z.cols()));
            v[static_cast<std::size_t>(fc)] = det;
            for (std::size_t i = 0; i < pivcol.size(); ++i)
                v[static_cast<std::size_t>(pivcol[i])] = -mat[i][static_cast<std::size_t>(fc)];
            RecurrenceOperator A = to_operator(z, std::move(v));
            if (top_nonzero(A)) found = std::move(A);
        }
        if (!found) return std::nullopt;
        std::vector<std::size_t> extra;
        for (int n = 0; n + z.d < fit; ++n) {
            if (apply_operator(*found, f, f.first + n).is_zero()) continue;
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (rows[i].n == n && !in.count(i)) extra.push_back(i);
        }
        if (extra.empty()) return found;
        for (auto i : extra)
            if (in.insert(i).second) chosen.push_back(i);
    }
}

}  // namespace

RecurrenceOperator RecurrenceOperator::zero(int order, int mdeg) {
    if (order < 0 || mdeg < 0) throw InvalidInput("operator order and M-degree must be nonnegative");
    RecurrenceOperator A;
    A.order = order;
    A.mdeg = mdeg;
    A.coeffs.assign(static_cast<std::size_t>(order) + 1, std::vector<QScalar>(static_cast<std::size_t>(mdeg) + 1));
    return A;
}

bool RecurrenceOperator::is_a_free() const {
    for (auto& row : coeffs)
        for (auto& c : row)
            if (c.num().has_a()) return false;
    return true;
}

RecurrenceOperator RecurrenceOperator::scaled(const QScalar& c) const {
    if (c.is_zero()) throw InvalidInput("cannot scale an operator by zero");
    RecurrenceOperator A = *this;
    for (auto& row : A.coeffs)
        for (auto& x : row)
            if (!x.is_zero()) x = x * c;
    return A;
}

std::string RecurrenceOperator::to_string() const {
    std::string out;
    for (int l = order; l >= 0; --l) {
        for (int k = mdeg; k >= 0; --k) {
            const QScalar& c = coeffs[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
            if (c.is_zero()) continue;
            std::string op;
            if (k > 0) op += k == 1 ? "M" : "M^" + std::to_string(k);
            if (l > 0) {
                if (!op.empty()) op += ' ';
                op += l == 1 ? "L" : "L^" + std::to_string(l);
            }
            bool neg = false;
            std::string body;
            if (!c.has_den() && c.num().is_monomial()) {
                LaurentPoly mag = c.num();
                neg = sgn(mag.terms().front().c) < 0;
                if (neg) mag = -mag;
                if (!mag.is_constant() || mag != LaurentPoly(1) || op.empty()) body = mag.to_string();
            } else {
                body = "(" + c.to_string() + ")";
            }
            std::string term = body;
            if (!op.empty()) term += (body.empty() ? "" : " ") + op;
            if (out.empty())
                out = (neg ? "-" : "") + term;
            else
                out += (neg ? " - " : " + ") + term;
        }
    }
    return out.empty() ? "0" : out;
}

const QScalar& SequenceWindow::at(int n) const {
    if (!contains(n)) throw WindowTooShort("sequence window has no value at color " + std::to_string(n));
    return values[static_cast<std::size_t>(n - first)];
}

int required_window(int d_max, int mdeg_max, int holdout) {
    return (d_max + 1) * (mdeg_max + 1) + d_max + holdout;
}

QScalar apply_operator(const RecurrenceOperator& A, const SequenceWindow& f, int n) {
    if (!f.contains(n) || !f.contains(n + A.order))
        throw WindowTooShort("applying an order " + std::to_string(A.order) + " operator at " + std::to_string(n) +
                             " needs colors " + std::to_string(n) + ".." + std::to_string(n + A.order));
    std::vector<QScalar> parts;
    for (int l = 0; l <= A.order; ++l)
        for (int k = 0; k <= A.mdeg; ++k) {
            const QScalar& c = A.coeffs[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
            if (c.is_zero()) continue;
            const QScalar& v = f.at(n + l);
            if (v.is_zero()) continue;
            parts.push_back(c * QScalar(LaurentPoly::monomial(1, 0, n * k, 0)) * v);
        }
    return QScalar::sum(parts);
}

std::optional<RecurrenceOperator> guess_recurrence(const SequenceWindow& f, const GuessOptions& opts) {
    if (opts.d_max < 0 || opts.mdeg_max < 0 || opts.holdout < 0)
        throw InvalidInput("recurrence bounds and holdout must be nonnegative");
    int need = required_window(opts.d_max, opts.mdeg_max, opts.holdout);
    int have = static_cast<int>(f.values.size());
    if (have < need)
        throw WindowTooShort("window has " + std::to_string(have) + " terms but bounds (order " +
                             std::to_string(opts.d_max) + ", M-degree " + std::to_string(opts.mdeg_max) +
                             ") with holdout " + std::to_string(opts.holdout) + " need " + std::to_string(need));
    int fit = have - opts.holdout;

    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<u64> pick(2, kP - 2);
    Point pt{};
    std::vector<std::map<Key, u64>> vals;
    while (true) {
        pt = {pick(rng), pick(rng), pick(rng)};
        bool ok = true;
        for (int i = 0; i < fit && ok; ++i)
            if (eval_den(f.values[static_cast<std::size_t>(i)].den(), pt.q) == 0) ok = false;
        if (!ok) continue;
        vals.clear();
        for (int i = 0; i < fit; ++i) vals.push_back(eval_scalar(f.values[static_cast<std::size_t>(i)], pt, opts.a_free));
        break;
    }

    std::vector<Ansatz> grid;
    for (int d = 0; d <= opts.d_max; ++d)
        for (int m = 0; m <= opts.mdeg_max; ++m) grid.push_back({d, m});
    std::vector<std::vector<RowId>> rows(grid.size());
    std::vector<ModResult> mod(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t g; (g = next++) < grid.size();) {
            rows[g] = rows_for(grid[g], fit, opts.a_free, vals);
            mod[g] = mod_rank(grid[g], rows[g], f.first, pt, vals);
        }
    };
    unsigned nthreads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (std::size_t g = 0; g < grid.size(); ++g) {
        if (!mod[g].kernel) continue;
        auto A = exact_fit(grid[g], rows[g], mod[g].independent, f, fit, opts.a_free, opts.term_budget);
        if (A) return A;
    }
    return std::nullopt;
}

ValidationReport validate(const RecurrenceOperator& A, const SequenceWindow& f, int holdout) {
    ValidationReport rep;
    if (holdout < 1) {
        rep.message = "holdout must be positive";
        return rep;
    }
    int lo = f.end() - holdout - A.order;
    if (lo < f.first) {
        rep.message = "window too short for " + std::to_string(holdout) + " held-out checks";
        return rep;
    }
    for (int n = lo; n + A.order < f.end(); ++n) {
        rep.checked.push_back(n + A.order);
        if (!apply_operator(A, f, n).is_zero()) {
            rep.first_failure = n + A.order;
            rep.message = "operator does not vanish at color " + std::to_string(n + A.order);
            return rep;
        }
    }
    rep.pass = true;
    rep.message = "vanishes at colors " + std::to_string(rep.checked.front()) + ".." + std::to_string(rep.checked.back());
    return rep;
}

}  // namespace qh
