#include "qh/homfly_oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include "qh/errors.hpp"

namespace qh {

namespace {

constexpr int kLL = 0, kLR = 1, kUL = 2, kUR = 3;

// arc endpoints: crossing slot c*4+s (>= 0) or boundary point -1-b
int xslot(int c, int s) { return c * 4 + s; }
int bnd(int b) { return -1 - b; }

struct Plat {
    std::vector<std::array<int, 2>> arcs;
    std::array<int, 4> closure{};
    std::map<int, std::pair<int, int>> endmap;  // endpoint -> (arc, side)
    int ncross = 0;

    void index() {
        endmap.clear();
        for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
            endmap[arcs[i][0]] = {i, 0};
            endmap[arcs[i][1]] = {i, 1};
        }
    }

    // crossing slot reached by leaving endpoint e along its arc
    int enter(int e) const {
        for (;;) {
            auto [a, side] = endmap.at(e);
            int other = arcs[a][1 - side];
            if (other >= 0) return other;
            e = bnd(closure[-1 - other]);
        }
    }
};

Plat make_plat(const ContinuedFraction& cf) {
    auto seq = twist_sequence(cf);
    Plat p;
    p.arcs = {{bnd(kLL), bnd(kUL)}, {bnd(kLR), bnd(kUR)}};
    std::array<std::pair<int, int>, 4> where{};
    where[kLL] = {0, 0};
    where[kUL] = {0, 1};
    where[kLR] = {1, 0};
    where[kUR] = {1, 1};
    for (TwistOp op : seq) {
        int c = p.ncross++;
        auto attach = [&](int b, int slot) { p.arcs[where[b].first][where[b].second] = xslot(c, slot); };
        auto fresh = [&](int slot, int b) {
            p.arcs.push_back({xslot(c, slot), bnd(b)});
            where[b] = {static_cast<int>(p.arcs.size()) - 1, 1};
        };
        if (op == TwistOp::T) {
            attach(kUL, 0);
            attach(kUR, 1);
            fresh(2, kUR);
            fresh(3, kUL);
        } else {
            attach(kUR, 3);
            attach(kLR, 0);
            fresh(2, kUR);
            fresh(1, kLR);
        }
    }
    if (seq.back() == TwistOp::T)
        p.closure = {kUL, kUR, kLL, kLR};
    else
        p.closure = {kLR, kLL, kUR, kUL};
    p.index();
    return p;
}

int find_root(std::vector<int>& parent, int x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

}  // namespace

PlanarDiagram build_plat(const ContinuedFraction& cf, Family start) {
    if (start != Family::UP && start != Family::OP) throw InvalidInput("start family must be UP or OP");
    Plat p = make_plat(cf);
    int n = p.ncross;
    // 0 unvisited, 1 incoming, 2 outgoing
    std::vector<int> dir(static_cast<std::size_t>(n) * 4, 0);
    auto walk = [&](int slot) {
        while (dir[slot] == 0) {
            int c = slot / 4, s = slot % 4;
            int out = xslot(c, (s + 2) % 4);
            dir[slot] = 1;
            dir[out] = 2;
            slot = p.enter(out);
        }
    };
    walk(p.enter(bnd(kLL)));
    bool done = std::all_of(dir.begin(), dir.end(), [](int v) { return v != 0; });
    if (!done) {
        const auto& arc = p.arcs[1];
        walk(start == Family::UP ? p.enter(arc[0]) : p.enter(arc[1]));
    }
    for (int v : dir)
        if (v == 0) throw Error("plat traversal left a strand unvisited");

    std::vector<int> parent(p.arcs.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (int b = 0; b < 4; ++b) {
        int x = find_root(parent, p.endmap.at(bnd(b)).first);
        int y = find_root(parent, p.endmap.at(bnd(p.closure[b])).first);
        parent[x] = y;
    }
    std::map<int, int> ids;
    PlanarDiagram d;
    for (int c = 0; c < n; ++c) {
        std::array<int, 4> slot_arc{};
        for (int s = 0; s < 4; ++s) {
            int root = find_root(parent, p.endmap.at(xslot(c, s)).first);
            auto it = ids.emplace(root, static_cast<int>(ids.size())).first;
            slot_arc[s] = it->second;
        }
        // even slots carry the under-strand
        int u = dir[xslot(c, 0)] == 1 ? 0 : 2;
        PDCrossing x;
        x.sign = dir[xslot(c, (u + 3) % 4)] == 1 ? 1 : -1;
        for (int t = 0; t < 4; ++t) x.arcs[t] = slot_arc[(u + t) % 4];
        d.crossings.push_back(x);
    }
    d.num_arcs = static_cast<int>(ids.size());
    return d;
}

GaussCode gauss_code(const PlanarDiagram& d) {
    int n = static_cast<int>(d.crossings.size());
    auto over_in = [&](int c) { return d.crossings[c].sign > 0 ? 3 : 1; };
    std::vector<std::pair<int, int>> incoming(static_cast<std::size_t>(d.num_arcs), {-1, -1});
    for (int c = 0; c < n; ++c) {
        incoming[d.crossings[c].arcs[0]] = {c, 0};
        incoming[d.crossings[c].arcs[over_in(c)]] = {c, over_in(c)};
    }
    std::vector<std::array<bool, 4>> seen(static_cast<std::size_t>(n), std::array<bool, 4>{});
    GaussCode code;
    for (int c = 0; c < n; ++c) {
        for (int s : {0, over_in(c)}) {
            if (seen[c][s]) continue;
            std::vector<std::pair<int, bool>> comp;
            int cc = c, ss = s;
            while (!seen[cc][ss]) {
                seen[cc][ss] = true;
                comp.emplace_back(cc, ss != 0);
                int arc = d.crossings[cc].arcs[(ss + 2) % 4];
                std::tie(cc, ss) = incoming[arc];
                if (cc < 0) throw Error("malformed planar diagram");
            }
            code.push_back(std::move(comp));
        }
    }
    return code;
}

int diagram_components(const PlanarDiagram& d) { return static_cast<int>(gauss_code(d).size()); }

int writhe(const PlanarDiagram& d) {
    int w = 0;
    for (auto& x : d.crossings) w += x.sign;
    return w;
}

bool is_alternating(const PlanarDiagram& d) {
    for (auto& comp : gauss_code(d))
        for (std::size_t i = 0; i < comp.size(); ++i)
            if (comp[i].second == comp[(i + 1) % comp.size()].second) return false;
    return true;
}

namespace {

GaussCode smooth(const GaussCode& code, int c) {
    std::vector<std::pair<std::size_t, std::size_t>> occ;
    for (std::size_t i = 0; i < code.size(); ++i)
        for (std::size_t p = 0; p < code[i].size(); ++p)
            if (code[i][p].first == c) occ.emplace_back(i, p);
    auto [i1, p1] = occ[0];
    auto [i2, p2] = occ[1];
    GaussCode out;
    if (i1 == i2) {
        const auto& comp = code[i1];
        std::vector<std::pair<int, bool>> inner(comp.begin() + static_cast<long>(p1) + 1, comp.begin() + static_cast<long>(p2));
        std::vector<std::pair<int, bool>> outer(comp.begin() + static_cast<long>(p2) + 1, comp.end());
        outer.insert(outer.end(), comp.begin(), comp.begin() + static_cast<long>(p1));
        for (std::size_t i = 0; i < code.size(); ++i)
            if (i != i1) out.push_back(code[i]);
        out.push_back(std::move(inner));
        out.push_back(std::move(outer));
    } else {
        auto rotate_after = [](const std::vector<std::pair<int, bool>>& comp, std::size_t p) {
            std::vector<std::pair<int, bool>> r(comp.begin() + static_cast<long>(p) + 1, comp.end());
            r.insert(r.end(), comp.begin(), comp.begin() + static_cast<long>(p));
            return r;
        };
        auto merged = rotate_after(code[i1], p1);
        auto tail = rotate_after(code[i2], p2);
        merged.insert(merged.end(), tail.begin(), tail.end());
        for (std::size_t i = 0; i < code.size(); ++i)
            if (i != i1 && i != i2) out.push_back(code[i]);
        out.push_back(std::move(merged));
    }
    return out;
}

class HomflyRecursion {
public:
    HomflyRecursion(SkeinConvention conv, bool use_memo) : ae_(conv == SkeinConvention::Standard ? 1 : -1), memo_on_(use_memo) {
        unknot_ = QScalar(LaurentPoly::binomial(ae_, 0, 0), {{1, 1}});
        z_ = LaurentPoly::binomial(0, 1, 0);
    }

    QScalar run(const GaussCode& code, std::map<int, int> signs) { return rec(code, signs); }

private:
    int ae_;
    bool memo_on_;
    QScalar unknot_;
    LaurentPoly z_;
    std::map<std::string, QScalar> memo_;

    static std::string key(const GaussCode& code, const std::map<int, int>& signs) {
        std::string k;
        for (auto& comp : code) {
            for (auto& [c, o] : comp) {
                k += std::to_string(c);
                k += o ? '+' : '-';
            }
            k += '|';
        }
        k += '#';
        for (auto& [c, s] : signs) k += std::to_string(c) + (s > 0 ? "p" : "n");
        return k;
    }

    QScalar rec(const GaussCode& code, const std::map<int, int>& signs) {
        std::string k;
        if (memo_on_) {
            k = key(code, signs);
            auto it = memo_.find(k);
            if (it != memo_.end()) return it->second;
        }
        std::vector<bool> met;
        int bad = -1;
        for (auto& comp : code) {
            for (auto& [c, over] : comp) {
                if (static_cast<std::size_t>(c) >= met.size()) met.resize(static_cast<std::size_t>(c) + 1, false);
                if (met[c]) continue;
                met[c] = true;
                if (!over) {
                    bad = c;
                    break;
                }
            }
            if (bad >= 0) break;
        }
        QScalar r;
        if (bad < 0) {
            r = QScalar(1);
            for (std::size_t i = 1; i < code.size(); ++i) r = r * unknot_;
        } else {
            int e = signs.at(bad);
            GaussCode switched = code;
            for (auto& comp : switched)
                for (auto& [c, over] : comp)
                    if (c == bad) over = !over;
            std::map<int, int> s2 = signs;
            s2[bad] = -e;
            std::map<int, int> s3 = signs;
            s3.erase(bad);
            QScalar A = rec(switched, s2);
            QScalar B = rec(smooth(code, bad), s3);
            // P+ = a^-2 P- + a^-1 z P0 and P- = a^2 P+ - a z P0
            if (e > 0)
                r = A * QScalar(LaurentPoly::monomial(1, -2 * ae_, 0, 0)) + B * QScalar(z_.shifted(-ae_, 0, 0));
            else
                r = A * QScalar(LaurentPoly::monomial(1, 2 * ae_, 0, 0)) - B * QScalar(z_.shifted(ae_, 0, 0));
        }
        if (memo_on_) memo_.emplace(std::move(k), r);
        return r;
    }
};

}  // namespace

QScalar homfly(const PlanarDiagram& d, SkeinConvention conv, bool memo) {
    if (d.crossings.size() > 16) throw ResourceBudget("skein recursion limited to 16 crossings");
    std::map<int, int> signs;
    for (std::size_t c = 0; c < d.crossings.size(); ++c) signs[static_cast<int>(c)] = d.crossings[c].sign;
    HomflyRecursion h(conv, memo);
    return h.run(gauss_code(d), signs);
}

QScalar jones_kauffman(const PlanarDiagram& d) {
    int n = static_cast<int>(d.crossings.size());
    if (n > 20) throw ResourceBudget("state sum limited to 20 crossings");
    // histogram over (#A - #B, loops)
    std::map<std::pair<int, int>, long> hist;
    std::vector<int> parent(static_cast<std::size_t>(d.num_arcs));
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        std::iota(parent.begin(), parent.end(), 0);
        int balance = 0;
        for (int c = 0; c < n; ++c) {
            const auto& x = d.crossings[c].arcs;
            auto join = [&](int i, int k) { parent[find_root(parent, x[i])] = find_root(parent, x[k]); };
            if (mask >> c & 1UL) {
                join(0, 3);
                join(1, 2);
                ++balance;
            } else {
                join(0, 1);
                join(2, 3);
                --balance;
            }
        }
        int loops = 0;
        for (int i = 0; i < d.num_arcs; ++i)
            if (find_root(parent, i) == i) ++loops;
        ++hist[{balance, loops}];
    }
    // polynomials in A, stored in the q slot
    LaurentPoly delta = -(LaurentPoly::monomial(1, 0, 2, 0) + LaurentPoly::monomial(1, 0, -2, 0));
    std::map<int, LaurentPoly> delta_pow;
    LaurentPoly bracket;
    for (auto& [key, count] : hist) {
        auto [balance, loops] = key;
        auto it = delta_pow.find(loops - 1);
        if (it == delta_pow.end()) {
            LaurentPoly p(1);
            for (int i = 0; i < loops - 1; ++i) p = p * delta;
            it = delta_pow.emplace(loops - 1, p).first;
        }
        bracket += it->second.shifted(0, balance, 0).scaled(mpz_class(count));
    }
    int w = writhe(d);
    bracket = bracket.shifted(0, 3 * w, 0);
    if (w % 2 != 0) bracket = -bracket;
    // A^{2m} -> (-1)^m q^-m
    std::vector<LaurentPoly::Term> terms;
    for (auto& t : bracket.terms()) {
        int e = LaurentPoly::unpack(t.key).q;
        if (e % 2 != 0) throw Error("bracket exponent parity violated");
        int m = e / 2;
        terms.push_back({LaurentPoly::pack(0, -m, 0), (m % 2 == 0) ? t.c : mpz_class(-t.c)});
    }
    return QScalar(LaurentPoly::from_terms(std::move(terms)));
}

}  // namespace qh
