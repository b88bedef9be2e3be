#include "qh/laurent_poly.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <numeric>
#include <sstream>

#include "qh/errors.hpp"

static_assert(GMP_NUMB_BITS == 64, "limb packing assumes 64-bit limbs");

namespace qh {

namespace {

constexpr std::uint64_t kBias = 1u << 20;
constexpr std::uint64_t kMask = (1u << 21) - 1;
constexpr std::uint64_t kZeroKey = (kBias << 42) | (kBias << 21) | kBias;

inline std::uint64_t group_of(std::uint64_t key) { return key >> 21; }
inline int q_of(std::uint64_t key) { return static_cast<int>(key & kMask) - static_cast<int>(kBias); }

void check_range(long e) {
    if (e <= -LaurentPoly::kExpLimit || e >= LaurentPoly::kExpLimit)
        throw ResourceBudget("exponent out of supported range");
}

void combine_sorted(std::vector<LaurentPoly::Term>& v) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t k = i + 1;
        while (k < v.size() && v[k].key == v[i].key) {
            v[i].c += v[k].c;
            ++k;
        }
        if (sgn(v[i].c) != 0) {
            if (out != i) v[out] = std::move(v[i]);
            ++out;
        }
        i = k;
    }
    v.resize(out);
}

}  // namespace

LaurentPoly::LaurentPoly(long c) {
    if (c != 0) terms_.push_back({kZeroKey, mpz_class(c)});
}

LaurentPoly::LaurentPoly(const mpz_class& c) {
    if (sgn(c) != 0) terms_.push_back({kZeroKey, c});
}

std::uint64_t LaurentPoly::pack(int a, int q, int s) {
    check_range(a);
    check_range(q);
    check_range(s);
    return ((static_cast<std::uint64_t>(a + static_cast<long>(kBias))) << 42) |
           ((static_cast<std::uint64_t>(s + static_cast<long>(kBias))) << 21) |
           static_cast<std::uint64_t>(q + static_cast<long>(kBias));
}

Exponent LaurentPoly::unpack(std::uint64_t key) {
    Exponent e;
    e.q = static_cast<int>(key & kMask) - static_cast<int>(kBias);
    e.s = static_cast<int>((key >> 21) & kMask) - static_cast<int>(kBias);
    e.a = static_cast<int>((key >> 42) & kMask) - static_cast<int>(kBias);
    return e;
}

LaurentPoly LaurentPoly::monomial(const mpz_class& c, int a, int q, int s) {
    LaurentPoly p;
    if (sgn(c) != 0) p.terms_.push_back({pack(a, q, s), c});
    return p;
}

LaurentPoly LaurentPoly::monomial(long c, int a, int q, int s) { return monomial(mpz_class(c), a, q, s); }

LaurentPoly LaurentPoly::binomial(int xa, int xq, int xs) {
    std::vector<Term> t;
    t.push_back({pack(xa, xq, xs), mpz_class(1)});
    t.push_back({pack(-xa, -xq, -xs), mpz_class(-1)});
    return from_terms(std::move(t));
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.key < y.key; });
    combine_sorted(terms);
    LaurentPoly p;
    p.terms_ = std::move(terms);
    return p;
}

LaurentPoly LaurentPoly::sum(std::vector<LaurentPoly> parts) {
    std::size_t n = 0;
    for (auto& p : parts) n += p.size();
    std::vector<Term> all;
    all.reserve(n);
    for (auto& p : parts)
        for (auto& t : p.terms_) all.push_back(std::move(t));
    return from_terms(std::move(all));
}

bool LaurentPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].key == kZeroKey);
}

bool LaurentPoly::has_a() const {
    for (auto& t : terms_)
        if (unpack(t.key).a != 0) return true;
    return false;
}

bool LaurentPoly::has_s() const {
    for (auto& t : terms_)
        if (unpack(t.key).s != 0) return true;
    return false;
}

bool LaurentPoly::has_q() const {
    for (auto& t : terms_)
        if (unpack(t.key).q != 0) return true;
    return false;
}

Exponent LaurentPoly::min_exponents() const {
    Exponent m = unpack(terms_.front().key);
    for (auto& t : terms_) {
        Exponent e = unpack(t.key);
        m.a = std::min(m.a, e.a);
        m.q = std::min(m.q, e.q);
        m.s = std::min(m.s, e.s);
    }
    return m;
}

Exponent LaurentPoly::max_exponents() const {
    Exponent m = unpack(terms_.front().key);
    for (auto& t : terms_) {
        Exponent e = unpack(t.key);
        m.a = std::max(m.a, e.a);
        m.q = std::max(m.q, e.q);
        m.s = std::max(m.s, e.s);
    }
    return m;
}

std::size_t LaurentPoly::max_coeff_bits() const {
    std::size_t b = 0;
    for (auto& t : terms_) b = std::max(b, mpz_sizeinbase(t.c.get_mpz_t(), 2));
    return b;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) mpz_neg(t.c.get_mpz_t(), t.c.get_mpz_t());
    return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, k = 0;
    while (i < terms_.size() || k < o.terms_.size()) {
        if (k == o.terms_.size() || (i < terms_.size() && terms_[i].key < o.terms_[k].key)) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[k].key < terms_[i].key) {
            r.terms_.push_back(o.terms_[k++]);
        } else {
            mpz_class c = terms_[i].c + o.terms_[k].c;
            if (sgn(c) != 0) r.terms_.push_back({terms_[i].key, std::move(c)});
            ++i;
            ++k;
        }
    }
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) { return *this = *this + o; }
LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this = *this - o; }
LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

bool LaurentPoly::operator==(const LaurentPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].key != o.terms_[i].key || terms_[i].c != o.terms_[i].c) return false;
    return true;
}

LaurentPoly LaurentPoly::shifted(int a, int q, int s) const {
    if (terms_.empty() || (a == 0 && q == 0 && s == 0)) return *this;
    Exponent lo = min_exponents(), hi = max_exponents();
    check_range(static_cast<long>(lo.a) + a);
    check_range(static_cast<long>(hi.a) + a);
    check_range(static_cast<long>(lo.q) + q);
    check_range(static_cast<long>(hi.q) + q);
    check_range(static_cast<long>(lo.s) + s);
    check_range(static_cast<long>(hi.s) + s);
    std::uint64_t delta = pack(a, q, s);
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.key = t.key + delta - kZeroKey;
    return r;
}

LaurentPoly LaurentPoly::scaled(const mpz_class& c) const {
    if (sgn(c) == 0) return LaurentPoly();
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.c *= c;
    return r;
}

LaurentPoly operator*(long c, const LaurentPoly& p) { return p.scaled(mpz_class(c)); }

LaurentPoly LaurentPoly::mul_by_quantum(int l) const {
    return shifted(0, l, 0) - shifted(0, -l, 0);
}

LaurentPoly LaurentPoly::mul_schoolbook(const LaurentPoly& x, const LaurentPoly& y) {
    std::vector<Term> prod;
    prod.reserve(x.size() * y.size());
    for (auto& tx : x.terms_)
        for (auto& ty : y.terms_) prod.push_back({tx.key + ty.key - kZeroKey, tx.c * ty.c});
    return from_terms(std::move(prod));
}

namespace {

struct Layout {
    Exponent xmin, ymin;
    long ga = 1, gq = 1, gs = 1;
    long wa = 1, wq = 1, ws = 1;

    long index(const Exponent& e, const Exponent& base) const {
        return (((e.a - base.a) / ga) * ws + (e.s - base.s) / gs) * wq + (e.q - base.q) / gq;
    }
};

// Writes sum_t c_t 2^{64*limbs*idx(t)} into out, for terms [b, e).
template <class Index>
void pack_terms(mpz_t out, const std::vector<LaurentPoly::Term>& terms, std::size_t b, std::size_t e, std::size_t limbs,
                Index&& index) {
    long top = 0;
    for (std::size_t i = b; i < e; ++i) top = std::max(top, index(terms[i]));
    std::size_t n = static_cast<std::size_t>(top + 1) * limbs;
    mpz_t pos, neg;
    mpz_init(pos);
    mpz_init(neg);
    mp_limb_t* P = mpz_limbs_write(pos, static_cast<mp_size_t>(n));
    mp_limb_t* N = mpz_limbs_write(neg, static_cast<mp_size_t>(n));
    std::memset(P, 0, n * sizeof(mp_limb_t));
    std::memset(N, 0, n * sizeof(mp_limb_t));
    bool any_neg = false;
    for (std::size_t i = b; i < e; ++i) {
        const mpz_class& c = terms[i].c;
        mp_limb_t* dst = (sgn(c) > 0 ? P : N) + static_cast<std::size_t>(index(terms[i])) * limbs;
        if (sgn(c) < 0) any_neg = true;
        std::size_t sz = mpz_size(c.get_mpz_t());
        for (std::size_t k = 0; k < sz; ++k) dst[k] = mpz_getlimbn(c.get_mpz_t(), static_cast<mp_size_t>(k));
    }
    mpz_limbs_finish(pos, static_cast<mp_size_t>(n));
    mpz_limbs_finish(neg, any_neg ? static_cast<mp_size_t>(n) : 0);
    mpz_sub(out, pos, neg);
    mpz_clear(pos);
    mpz_clear(neg);
}

// Splits V into signed base-2^{64*limbs} digits; emit(idx, digit) for nonzero ones.
template <class Emit>
void unpack_digits(mpz_t V, std::size_t limbs, Emit&& emit) {
    bool negate = mpz_sgn(V) < 0;
    mpz_abs(V, V);
    const mp_limb_t* src = mpz_limbs_read(V);
    std::size_t vsz = mpz_size(V);
    std::size_t slots = (vsz + limbs - 1) / limbs + 1;
    if (limbs == 1) {
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < slots; ++i) {
            unsigned __int128 v = static_cast<unsigned __int128>(i < vsz ? src[i] : 0) + carry;
            __int128 d;
            if (v >= (static_cast<unsigned __int128>(1) << 63)) {
                d = static_cast<__int128>(v) - (static_cast<__int128>(1) << 64);
                carry = 1;
            } else {
                d = static_cast<__int128>(v);
                carry = 0;
            }
            if (d != 0) emit(static_cast<long>(i), mpz_class(static_cast<long>(negate ? -d : d)));
        }
        return;
    }
    mpz_class half, full, u;
    mpz_ui_pow_ui(half.get_mpz_t(), 2, 64 * limbs - 1);
    full = half * 2;
    unsigned long carry = 0;
    for (std::size_t i = 0; i < slots; ++i) {
        std::size_t at = i * limbs;
        mp_limb_t* dst = mpz_limbs_write(u.get_mpz_t(), static_cast<mp_size_t>(limbs));
        for (std::size_t t = 0; t < limbs; ++t) dst[t] = at + t < vsz ? src[at + t] : 0;
        mpz_limbs_finish(u.get_mpz_t(), static_cast<mp_size_t>(limbs));
        u += carry;
        if (u >= half) {
            u -= full;
            carry = 1;
        } else {
            carry = 0;
        }
        if (sgn(u) != 0) emit(static_cast<long>(i), negate ? mpz_class(-u) : u);
    }
}

std::size_t slot_limbs(const LaurentPoly& x, const LaurentPoly& y) {
    std::size_t nmin = std::min(x.size(), y.size());
    std::size_t bits = x.max_coeff_bits() + y.max_coeff_bits() + 2;
    while (nmin > 0) {
        ++bits;
        nmin >>= 1;
    }
    return (bits + 63) / 64;
}

struct Group {
    std::uint64_t key;  // (a, s) part of the packed exponent
    std::size_t b, e;
    int qlo, qhi;
};

std::vector<Group> groups_of(const std::vector<LaurentPoly::Term>& t) {
    std::vector<Group> g;
    std::size_t i = 0;
    while (i < t.size()) {
        std::size_t k = i + 1;
        while (k < t.size() && group_of(t[k].key) == group_of(t[i].key)) ++k;
        g.push_back({group_of(t[i].key), i, k, q_of(t[i].key), q_of(t[k - 1].key)});
        i = k;
    }
    return g;
}

}  // namespace

std::optional<LaurentPoly> LaurentPoly::mul_kronecker(const LaurentPoly& x, const LaurentPoly& y) {
    Layout lay;
    lay.xmin = x.min_exponents();
    lay.ymin = y.min_exponents();
    Exponent xmax = x.max_exponents(), ymax = y.max_exponents();
    long ga = 0, gq = 0, gs = 0;
    auto scan = [&](const LaurentPoly& p, const Exponent& base) {
        for (auto& t : p.terms_) {
            Exponent e = unpack(t.key);
            ga = std::gcd(ga, static_cast<long>(e.a - base.a));
            gq = std::gcd(gq, static_cast<long>(e.q - base.q));
            gs = std::gcd(gs, static_cast<long>(e.s - base.s));
        }
    };
    scan(x, lay.xmin);
    scan(y, lay.ymin);
    lay.ga = ga ? ga : 1;
    lay.gq = gq ? gq : 1;
    lay.gs = gs ? gs : 1;
    lay.wa = (static_cast<long>(xmax.a) - lay.xmin.a + ymax.a - lay.ymin.a) / lay.ga + 1;
    lay.wq = (static_cast<long>(xmax.q) - lay.xmin.q + ymax.q - lay.ymin.q) / lay.gq + 1;
    lay.ws = (static_cast<long>(xmax.s) - lay.xmin.s + ymax.s - lay.ymin.s) / lay.gs + 1;
    double slots = static_cast<double>(lay.wa) * lay.wq * lay.ws;
    double work = static_cast<double>(x.size()) * y.size();
    if (slots > 2.0 * work || slots > 1e9) return std::nullopt;

    std::size_t limbs = slot_limbs(x, y);
    mpz_t X, Y, V;
    mpz_init(X);
    mpz_init(Y);
    mpz_init(V);
    pack_terms(X, x.terms_, 0, x.size(), limbs, [&](const Term& t) { return lay.index(unpack(t.key), lay.xmin); });
    pack_terms(Y, y.terms_, 0, y.size(), limbs, [&](const Term& t) { return lay.index(unpack(t.key), lay.ymin); });
    mpz_mul(V, X, Y);
    mpz_clear(X);
    mpz_clear(Y);

    LaurentPoly r;
    Exponent base{lay.xmin.a + lay.ymin.a, lay.xmin.q + lay.ymin.q, lay.xmin.s + lay.ymin.s};
    unpack_digits(V, limbs, [&](long idx, mpz_class c) {
        long qi = idx % lay.wq;
        long si = (idx / lay.wq) % lay.ws;
        long ai = idx / (lay.wq * lay.ws);
        r.terms_.push_back({pack(static_cast<int>(base.a + ai * lay.ga), static_cast<int>(base.q + qi * lay.gq),
                                 static_cast<int>(base.s + si * lay.gs)),
                            std::move(c)});
    });
    mpz_clear(V);
    return r;
}

// One big-integer product per pair of (a, s) groups, accumulated per output group.
std::optional<LaurentPoly> LaurentPoly::mul_grouped(const LaurentPoly& x, const LaurentPoly& y) {
    auto gx = groups_of(x.terms_);
    auto gy = groups_of(y.terms_);
    double dense = 0;
    for (auto& g : gx) dense += g.qhi - g.qlo + 1;
    for (auto& g : gy) dense += g.qhi - g.qlo + 1;
    if (dense > 4.0 * static_cast<double>(x.size() + y.size()) + 64) return std::nullopt;

    std::size_t limbs = slot_limbs(x, y);
    std::size_t shift_bits = 64 * limbs;
    std::vector<mpz_class> px(gx.size()), py(gy.size());
    for (std::size_t i = 0; i < gx.size(); ++i)
        pack_terms(px[i].get_mpz_t(), x.terms_, gx[i].b, gx[i].e, limbs,
                   [&](const Term& t) { return static_cast<long>(q_of(t.key) - gx[i].qlo); });
    for (std::size_t i = 0; i < gy.size(); ++i)
        pack_terms(py[i].get_mpz_t(), y.terms_, gy[i].b, gy[i].e, limbs,
                   [&](const Term& t) { return static_cast<long>(q_of(t.key) - gy[i].qlo); });

    struct Acc {
        int qbase;
        std::vector<std::pair<int, std::pair<std::size_t, std::size_t>>> parts;
    };
    std::map<std::uint64_t, Acc> out;
    for (std::size_t i = 0; i < gx.size(); ++i)
        for (std::size_t k = 0; k < gy.size(); ++k) {
            std::uint64_t key = gx[i].key + gy[k].key - (kZeroKey >> 21);
            int qb = gx[i].qlo + gy[k].qlo;
            auto it = out.find(key);
            if (it == out.end())
                out.emplace(key, Acc{qb, {{qb, {i, k}}}});
            else {
                it->second.qbase = std::min(it->second.qbase, qb);
                it->second.parts.push_back({qb, {i, k}});
            }
        }

    LaurentPoly r;
    mpz_class acc, prod;
    for (auto& [key, a] : out) {
        acc = 0;
        for (auto& [qb, ik] : a.parts) {
            mpz_mul(prod.get_mpz_t(), px[ik.first].get_mpz_t(), py[ik.second].get_mpz_t());
            mpz_mul_2exp(prod.get_mpz_t(), prod.get_mpz_t(), shift_bits * static_cast<std::size_t>(qb - a.qbase));
            acc += prod;
        }
        std::uint64_t high = key << 21;
        int qbase = a.qbase;
        unpack_digits(acc.get_mpz_t(), limbs, [&](long idx, mpz_class c) {
            long qe = qbase + idx;
            check_range(qe);
            r.terms_.push_back({high | static_cast<std::uint64_t>(qe + static_cast<long>(kBias)), std::move(c)});
        });
    }
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (terms_.empty() || o.terms_.empty()) return LaurentPoly();
    const LaurentPoly& x = size() <= o.size() ? *this : o;
    const LaurentPoly& y = size() <= o.size() ? o : *this;
    if (x.size() == 1) {
        Exponent e = unpack(x.terms_[0].key);
        return y.shifted(e.a, e.q, e.s).scaled(x.terms_[0].c);
    }
    Exponent lo1 = x.min_exponents(), hi1 = x.max_exponents();
    Exponent lo2 = y.min_exponents(), hi2 = y.max_exponents();
    check_range(static_cast<long>(lo1.a) + lo2.a);
    check_range(static_cast<long>(hi1.a) + hi2.a);
    check_range(static_cast<long>(lo1.q) + lo2.q);
    check_range(static_cast<long>(hi1.q) + hi2.q);
    check_range(static_cast<long>(lo1.s) + lo2.s);
    check_range(static_cast<long>(hi1.s) + hi2.s);
    if (x.size() * y.size() > 2048) {
        if (auto r = mul_kronecker(x, y)) return std::move(*r);
        if (auto r = mul_grouped(x, y)) return std::move(*r);
    }
    return mul_schoolbook(x, y);
}

namespace {

// Runs f(group_begin, group_end) over maximal runs of equal (a, s).
template <class F>
void for_each_group(const std::vector<LaurentPoly::Term>& t, F&& f) {
    std::size_t i = 0;
    while (i < t.size()) {
        std::size_t k = i + 1;
        while (k < t.size() && group_of(t[k].key) == group_of(t[i].key)) ++k;
        f(i, k);
        i = k;
    }
}

constexpr long kDenseLimit = 1L << 26;

}  // namespace

std::optional<LaurentPoly> LaurentPoly::exact_div_by_quantum(int l) const {
    if (l < 1) throw InvalidInput("quantum factor index must be positive");
    LaurentPoly r;
    bool ok = true;
    std::vector<mpz_class> coef;
    for_each_group(terms_, [&](std::size_t b, std::size_t e) {
        if (!ok) return;
        int lo = q_of(terms_[b].key), hi = q_of(terms_[e - 1].key);
        long span = static_cast<long>(hi) - lo + 1;
        if (span > kDenseLimit) throw ResourceBudget("polynomial too sparse for dense division");
        if (span < 2L * l + 1) {
            ok = false;
            return;
        }
        coef.assign(static_cast<std::size_t>(span), mpz_class());
        for (std::size_t i = b; i < e; ++i) coef[static_cast<std::size_t>(q_of(terms_[i].key) - lo)] = terms_[i].c;
        std::vector<std::pair<long, mpz_class>> quot;
        for (long idx = span - 1; idx >= 2L * l; --idx) {
            if (sgn(coef[idx]) == 0) continue;
            coef[idx - 2 * l] += coef[idx];
            quot.emplace_back(idx - l, std::move(coef[idx]));
            coef[idx] = 0;
        }
        for (long idx = 0; idx < 2L * l; ++idx)
            if (sgn(coef[idx]) != 0) {
                ok = false;
                return;
            }
        std::uint64_t g = terms_[b].key & ~kMask;
        for (auto it = quot.rbegin(); it != quot.rend(); ++it) {
            long qe = lo + it->first;
            r.terms_.push_back({g | static_cast<std::uint64_t>(qe + static_cast<long>(kBias)), std::move(it->second)});
        }
    });
    if (!ok) return std::nullopt;
    return r;
}

std::optional<LaurentPoly> LaurentPoly::exact_div_q_poly(const std::vector<long>& c) const {
    long d = static_cast<long>(c.size()) - 1;
    if (d < 1 || c.back() != 1) throw InvalidInput("divisor must be monic of positive degree");
    LaurentPoly r;
    bool ok = true;
    std::vector<mpz_class> coef;
    for_each_group(terms_, [&](std::size_t b, std::size_t e) {
        if (!ok) return;
        int lo = q_of(terms_[b].key), hi = q_of(terms_[e - 1].key);
        long span = static_cast<long>(hi) - lo + 1;
        if (span > kDenseLimit) throw ResourceBudget("polynomial too sparse for dense division");
        if (span < d + 1) {
            ok = false;
            return;
        }
        coef.assign(static_cast<std::size_t>(span), mpz_class());
        for (std::size_t i = b; i < e; ++i) coef[static_cast<std::size_t>(q_of(terms_[i].key) - lo)] = terms_[i].c;
        std::vector<std::pair<long, mpz_class>> quot;
        mpz_class t;
        for (long idx = span - 1; idx >= d; --idx) {
            if (sgn(coef[idx]) == 0) continue;
            t = coef[idx];
            for (long i = 0; i < d; ++i)
                if (c[i] != 0) coef[idx - d + i] -= t * c[i];
            coef[idx] = 0;
            quot.emplace_back(idx - d, t);
        }
        for (long idx = 0; idx < d; ++idx)
            if (sgn(coef[idx]) != 0) {
                ok = false;
                return;
            }
        std::uint64_t g = terms_[b].key & ~kMask;
        for (auto it = quot.rbegin(); it != quot.rend(); ++it) {
            long qe = lo + it->first;
            r.terms_.push_back({g | static_cast<std::uint64_t>(qe + static_cast<long>(kBias)), std::move(it->second)});
        }
    });
    if (!ok) return std::nullopt;
    return r;
}

std::optional<LaurentPoly> LaurentPoly::exact_div(const LaurentPoly& d) const {
    if (d.is_zero()) throw InvalidInput("division by zero polynomial");
    if (is_zero()) return LaurentPoly();
    if (d.is_monomial()) {
        const Term& m = d.terms_.front();
        LaurentPoly r;
        r.terms_.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!mpz_divisible_p(t.c.get_mpz_t(), m.c.get_mpz_t())) return std::nullopt;
            r.terms_.push_back({t.key - m.key + kZeroKey, t.c / m.c});
        }
        return r;
    }
    Exponent lo = min_exponents(), dlo = d.min_exponents();
    Exponent hi = max_exponents(), dhi = d.max_exponents();
    Exponent qlo{lo.a - dlo.a, lo.q - dlo.q, lo.s - dlo.s};
    if (hi.a - dhi.a < qlo.a || hi.s - dhi.s < qlo.s || hi.q - dhi.q < qlo.q) return std::nullopt;
    std::map<std::uint64_t, mpz_class> rem;
    for (auto& t : terms_) rem.emplace(t.key, t.c);
    const Term& lead = d.terms_.back();
    std::vector<Term> quot;
    mpz_class c;
    while (!rem.empty()) {
        auto top = std::prev(rem.end());
        Exponent te = unpack(top->first), le = unpack(lead.key);
        Exponent qe{te.a - le.a, te.q - le.q, te.s - le.s};
        if (qe.a < qlo.a || qe.q < qlo.q || qe.s < qlo.s) return std::nullopt;
        check_range(qe.a);
        check_range(qe.q);
        check_range(qe.s);
        if (!mpz_divisible_p(top->second.get_mpz_t(), lead.c.get_mpz_t())) return std::nullopt;
        c = top->second / lead.c;
        std::uint64_t qk = top->first - lead.key + kZeroKey;
        rem.erase(top);
        for (std::size_t i = 0; i + 1 < d.terms_.size(); ++i) {
            std::uint64_t k = d.terms_[i].key + qk - kZeroKey;
            auto [it, fresh] = rem.try_emplace(k);
            it->second -= c * d.terms_[i].c;
            if (sgn(it->second) == 0) rem.erase(it);
        }
        quot.push_back({qk, c});
    }
    std::reverse(quot.begin(), quot.end());
    LaurentPoly r;
    r.terms_ = std::move(quot);
    return r;
}

mpz_class LaurentPoly::content() const {
    mpz_class g;
    for (auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

LaurentPoly LaurentPoly::substituted(std::optional<std::pair<int, int>> a_to, std::optional<std::pair<int, int>> s_to,
                                     int qsign) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        Exponent e = unpack(t.key);
        long q = static_cast<long>(qsign) * e.q;
        long a = e.a, s = e.s;
        bool flip = false;
        if (a_to) {
            q += static_cast<long>(a_to->second) * a;
            if (a_to->first < 0 && (a % 2 != 0)) flip = !flip;
            a = 0;
        }
        if (s_to) {
            q += static_cast<long>(s_to->second) * s;
            if (s_to->first < 0 && (s % 2 != 0)) flip = !flip;
            s = 0;
        }
        check_range(q);
        out.push_back({pack(static_cast<int>(a), static_cast<int>(q), static_cast<int>(s)), flip ? mpz_class(-t.c) : t.c});
    }
    return from_terms(std::move(out));
}

LaurentPoly LaurentPoly::set_s_one() const {
    if (!has_s()) return *this;
    return substituted(std::nullopt, std::make_pair(1, 0), 1);
}

mpz_class LaurentPoly::coeff(int a, int q, int s) const {
    std::uint64_t k = pack(a, q, s);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, std::uint64_t key) { return t.key < key; });
    if (it != terms_.end() && it->key == k) return it->c;
    return mpz_class(0);
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : terms_) {
        Exponent e = unpack(t.key);
        mpz_class mag = abs(t.c);
        bool neg = sgn(t.c) < 0;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool unit = (e.a == 0 && e.q == 0 && e.s == 0);
        bool sep = false;
        if (mag != 1 || unit) {
            os << mag.get_str();
            sep = true;
        }
        auto var = [&](char v, int x) {
            if (x == 0) return;
            if (sep) os << ' ';
            os << v;
            if (x != 1) os << '^' << x;
            sep = true;
        };
        var('a', e.a);
        var('q', e.q);
        var('s', e.s);
    }
    return os.str();
}

}  // namespace qh
