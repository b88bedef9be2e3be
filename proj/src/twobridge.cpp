#include "qh/twobridge.hpp"

#include <array>
#include <sstream>

#include "qh/errors.hpp"

namespace qh {

void validate_cf(const ContinuedFraction& cf) {
    if (cf.entries.empty()) throw InvalidInput("continued fraction must be nonempty");
    for (int a : cf.entries)
        if (a < 1) throw InvalidInput("continued fraction entries must be positive");
}

Fraction cf_to_fraction(const ContinuedFraction& cf) {
    validate_cf(cf);
    // innermost entry a_1 is the last one
    mpz_class p = cf.entries.back(), q = 1;
    for (auto it = cf.entries.rbegin() + 1; it != cf.entries.rend(); ++it) {
        mpz_class np = *it * p + q;
        q = p;
        p = np;
    }
    mpz_class g = gcd(p, q);
    return {p / g, q / g};
}

ContinuedFraction fraction_to_cf(const mpz_class& p, const mpz_class& q) {
    if (p < 1 || q < 1) throw InvalidInput("fraction must be positive");
    if (gcd(p, q) != 1) throw InvalidInput("fraction must be in lowest terms");
    if (!(p > q || q == 1)) throw InvalidInput("fraction must satisfy p > q >= 1 or q = 1");
    ContinuedFraction cf;
    mpz_class x = p, y = q;
    while (y != 0) {
        mpz_class a = x / y;
        if (!a.fits_sint_p()) throw InvalidInput("continued fraction entry too large");
        cf.entries.push_back(static_cast<int>(a.get_si()));
        mpz_class r = x - a * y;
        x = y;
        y = r;
    }
    return cf;
}

OperatorWord operator_word(const ContinuedFraction& cf) {
    validate_cf(cf);
    OperatorWord w;
    int idx = 0;
    for (auto it = cf.entries.rbegin(); it != cf.entries.rend(); ++it, ++idx)
        w.push_back({idx % 2 == 0 ? TwistOp::T : TwistOp::R, *it});
    return w;
}

std::vector<TwistOp> twist_sequence(const ContinuedFraction& cf) {
    std::vector<TwistOp> seq;
    for (auto& g : operator_word(cf))
        for (int i = 0; i < g.count; ++i) seq.push_back(g.op);
    return seq;
}

int component_count(const ContinuedFraction& cf) {
    // endpoints 0=LL 1=LR 2=UL 3=UR; partner[e] is the other end of e's strand
    std::array<int, 4> partner{2, 3, 0, 1};
    auto seq = twist_sequence(cf);
    for (TwistOp op : seq) {
        int x = op == TwistOp::T ? 2 : 1;
        int y = 3;
        if (partner[x] == y) continue;
        int px = partner[x], py = partner[y];
        partner[px] = y;
        partner[y] = px;
        partner[py] = x;
        partner[x] = py;
    }
    std::array<int, 4> closure = seq.back() == TwistOp::T ? std::array<int, 4>{2, 3, 0, 1}
                                                          : std::array<int, 4>{1, 0, 3, 2};
    std::array<bool, 4> seen{};
    int cycles = 0;
    for (int e = 0; e < 4; ++e) {
        if (seen[e]) continue;
        ++cycles;
        int v = e;
        while (!seen[v]) {
            seen[v] = true;
            int w = partner[v];
            seen[w] = true;
            v = closure[w];
        }
    }
    return cycles;
}

TwoBridgeLink make_link(const ContinuedFraction& cf) {
    validate_cf(cf);
    TwoBridgeLink l;
    l.cf = cf;
    l.fraction = cf_to_fraction(cf);
    for (int a : cf.entries) l.crossings += a;
    l.components = component_count(cf);
    return l;
}

namespace {

void compositions(int total, std::vector<int>& cur, std::vector<TwoBridgeLink>& out) {
    if (total == 0) {
        out.push_back(make_link(ContinuedFraction{cur}));
        return;
    }
    for (int first = 1; first <= total; ++first) {
        cur.push_back(first);
        compositions(total - first, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<TwoBridgeLink> enumerate_corpus(int max_crossings) {
    if (max_crossings < 1) throw InvalidInput("max crossings must be positive");
    std::vector<TwoBridgeLink> out;
    std::vector<int> cur;
    for (int m = 1; m <= max_crossings; ++m) compositions(m, cur, out);
    return out;
}

ContinuedFraction parse_cf(const std::string& raw) {
    std::string text = raw;
    std::size_t b = text.find_first_not_of(" \t"), e = text.find_last_not_of(" \t");
    text = b == std::string::npos ? "" : text.substr(b, e - b + 1);
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') throw InvalidInput("unbalanced bracket in continued fraction");
        text = text.substr(1, text.size() - 2);
    }
    ContinuedFraction cf;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        std::size_t b = item.find_first_not_of(" \t");
        std::size_t e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw InvalidInput("empty continued fraction entry");
        item = item.substr(b, e - b + 1);
        if (item.find_first_not_of("0123456789") != std::string::npos || item.size() > 6)
            throw InvalidInput("malformed continued fraction entry '" + item + "'");
        cf.entries.push_back(std::stoi(item));
    }
    if (!text.empty() && text.back() == ',') throw InvalidInput("trailing comma in continued fraction");
    validate_cf(cf);
    return cf;
}

Fraction parse_fraction(const std::string& text) {
    std::size_t slash = text.find('/');
    std::string ps = text.substr(0, slash);
    std::string qs = slash == std::string::npos ? "1" : text.substr(slash + 1);
    auto digits = [](const std::string& s) {
        return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
    };
    if (!digits(ps) || !digits(qs)) throw InvalidInput("malformed fraction '" + text + "'");
    Fraction f{mpz_class(ps), mpz_class(qs)};
    if (f.p < 1 || f.q < 1) throw InvalidInput("fraction must be positive");
    if (gcd(f.p, f.q) != 1) throw InvalidInput("fraction must be in lowest terms");
    return f;
}

std::string format_cf(const ContinuedFraction& cf) {
    std::string s;
    for (std::size_t i = 0; i < cf.entries.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(cf.entries[i]);
    }
    return s;
}

std::string format_fraction(const Fraction& f) { return f.p.get_str() + "/" + f.q.get_str(); }

}  // namespace qh
