#include "qh/qscalar.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "qh/errors.hpp"

namespace qh {

void QScalar::check_den(const Den& d) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i].first < 1) throw InvalidInput("denominator factor index must be positive");
        if (d[i].second < 1) throw InvalidInput("denominator multiplicity must be positive");
        if (i > 0 && d[i - 1].first >= d[i].first) throw InvalidInput("denominator must be sorted and unique");
    }
}

QScalar::QScalar(LaurentPoly num, Den den) {
    std::sort(den.begin(), den.end());
    Den merged;
    for (auto& f : den) {
        if (f.first < 1) throw InvalidInput("denominator factor index must be positive");
        if (f.second == 0) continue;
        if (!merged.empty() && merged.back().first == f.first)
            merged.back().second += f.second;
        else
            merged.push_back(f);
    }
    *this = unnormalized(std::move(num), std::move(merged)).normalized();
}

QScalar QScalar::unnormalized(LaurentPoly num, Den den) {
    check_den(den);
    QScalar x;
    x.num_ = std::move(num);
    if (!x.num_.is_zero()) x.den_ = std::move(den);
    return x;
}

QScalar::Den den_lcm(const QScalar::Den& x, const QScalar::Den& y) {
    QScalar::Den r;
    std::size_t i = 0, k = 0;
    while (i < x.size() || k < y.size()) {
        if (k == y.size() || (i < x.size() && x[i].first < y[k].first))
            r.push_back(x[i++]);
        else if (i == x.size() || y[k].first < x[i].first)
            r.push_back(y[k++]);
        else {
            r.emplace_back(x[i].first, std::max(x[i].second, y[k].second));
            ++i;
            ++k;
        }
    }
    return r;
}

QScalar::Den den_product(const QScalar::Den& x, const QScalar::Den& y) {
    QScalar::Den r;
    std::size_t i = 0, k = 0;
    while (i < x.size() || k < y.size()) {
        if (k == y.size() || (i < x.size() && x[i].first < y[k].first))
            r.push_back(x[i++]);
        else if (i == x.size() || y[k].first < x[i].first)
            r.push_back(y[k++]);
        else {
            r.emplace_back(x[i].first, x[i].second + y[k].second);
            ++i;
            ++k;
        }
    }
    return r;
}

QScalar::Den den_quotient(const QScalar::Den& big, const QScalar::Den& small) {
    QScalar::Den r;
    std::size_t k = 0;
    for (auto& f : big) {
        int m = f.second;
        while (k < small.size() && small[k].first < f.first) ++k;
        if (k < small.size() && small[k].first == f.first) m -= small[k].second;
        if (m > 0) r.emplace_back(f.first, m);
    }
    return r;
}

LaurentPoly den_poly(const QScalar::Den& d) {
    LaurentPoly r(1);
    for (auto& f : d)
        for (int i = 0; i < f.second; ++i) r = r.mul_by_quantum(f.first);
    return r;
}

const std::vector<long>& cyclotomic(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<long>> memo;
    if (n < 1) throw InvalidInput("cyclotomic index must be positive");
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
    }
    std::vector<long> p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const std::vector<long>& c = cyclotomic(d);
        std::size_t dd = c.size() - 1;
        std::vector<long> quot(p.size() - dd, 0);
        for (std::size_t idx = p.size() - 1; idx + 1 > dd; --idx) {
            long t = p[idx];
            if (t == 0) continue;
            quot[idx - dd] = t;
            for (std::size_t i = 0; i <= dd; ++i) p[idx - dd + i] -= t * c[i];
        }
        p = std::move(quot);
    }
    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(n, std::move(p)).first->second;
}

QScalar QScalar::normalized() const {
    if (num_.is_zero()) return QScalar();
    LaurentPoly n = num_;
    Den d = den_;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = d.rbegin(); it != d.rend(); ++it) {
            while (it->second > 0) {
                auto r = n.exact_div_by_quantum(it->first);
                if (!r) break;
                n = std::move(*r);
                --it->second;
                changed = true;
            }
        }
    }
    Den out;
    for (auto& f : d)
        if (f.second > 0) out.push_back(f);
    QScalar x;
    x.num_ = std::move(n);
    x.den_ = std::move(out);
    return x;
}

bool QScalar::is_normalized() const {
    if (num_.is_zero()) return den_.empty();
    for (auto& f : den_)
        if (num_.exact_div_by_quantum(f.first)) return false;
    return true;
}

QScalar QScalar::operator-() const {
    QScalar x = *this;
    x.num_ = -x.num_;
    return x;
}

QScalar QScalar::operator+(const QScalar& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    if (den_.empty() && o.den_.empty()) return QScalar(num_ + o.num_);
    return sum({*this, o});
}

QScalar QScalar::operator-(const QScalar& o) const { return *this + (-o); }

QScalar QScalar::operator*(const QScalar& o) const {
    if (is_zero() || o.is_zero()) return QScalar();
    if (den_.empty() && o.den_.empty()) return QScalar(num_ * o.num_);
    return unnormalized(num_ * o.num_, den_product(den_, o.den_)).normalized();
}

QScalar QScalar::sum(const std::vector<QScalar>& parts) {
    Den common;
    for (auto& p : parts)
        if (!p.is_zero()) common = den_lcm(common, p.den_);
    std::vector<LaurentPoly> nums;
    nums.reserve(parts.size());
    for (auto& p : parts) {
        if (p.is_zero()) continue;
        Den co = den_quotient(common, p.den_);
        nums.push_back(co.empty() ? p.num_ : p.num_ * den_poly(co));
    }
    return unnormalized(LaurentPoly::sum(std::move(nums)), common).normalized();
}

bool QScalar::operator==(const QScalar& o) const {
    if (den_ == o.den_) return num_ == o.num_;
    Den common = den_lcm(den_, o.den_);
    return num_ * den_poly(den_quotient(common, den_)) == o.num_ * den_poly(den_quotient(common, o.den_));
}

QScalar QScalar::substitute(const Substitution& sub) const {
    for (auto& f : den_)
        if (f.first < 1) throw InvalidInput("substitution would vanish a denominator factor");
    auto conv = [](const std::optional<SignedQPower>& t) -> std::optional<std::pair<int, int>> {
        if (!t) return std::nullopt;
        if (t->sign != 1 && t->sign != -1) throw InvalidInput("substitution sign must be +1 or -1");
        return std::make_pair(t->sign, t->power);
    };
    LaurentPoly n = num_.substituted(conv(sub.a), conv(sub.s), sub.invert_q ? -1 : 1);
    if (sub.invert_q) {
        int total = 0;
        for (auto& f : den_) total += f.second;
        if (total % 2 != 0) n = -n;
    }
    return unnormalized(std::move(n), den_).normalized();
}

QScalar QScalar::mirrored() const {
    std::vector<LaurentPoly::Term> t;
    t.reserve(num_.size());
    for (auto& term : num_.terms()) {
        Exponent e = LaurentPoly::unpack(term.key);
        t.push_back({LaurentPoly::pack(-e.a, -e.q, -e.s), term.c});
    }
    LaurentPoly n = LaurentPoly::from_terms(std::move(t));
    int total = 0;
    for (auto& f : den_) total += f.second;
    if (total % 2 != 0) n = -n;
    return unnormalized(std::move(n), den_);
}

QScalar QScalar::canonicalize() const {
    if (is_zero()) throw InvalidInput("cannot canonicalize zero");
    QScalar x = normalized();
    long shift = 0;
    std::map<int, int> order;
    for (auto& f : x.den_) {
        shift += static_cast<long>(f.first) * f.second;
        for (int d = 1; d <= 2 * f.first; ++d)
            if ((2 * f.first) % d == 0) order[d] += f.second;
    }
    LaurentPoly n = x.num_.shifted(0, static_cast<int>(shift), 0);
    for (auto& [d, e] : order) {
        while (e > 0) {
            auto r = n.exact_div_q_poly(cyclotomic(d));
            if (!r) break;
            n = std::move(*r);
            --e;
        }
    }
    Exponent lo = n.min_exponents();
    mpz_class sign = sgn(n.terms().front().c) < 0 ? -1 : 1;
    return unnormalized(x.num_.shifted(-lo.a, -lo.q, -lo.s).scaled(sign), x.den_);
}

bool QScalar::is_monomial() const {
    QScalar x = normalized();
    return x.den_.empty() && x.num_.is_monomial();
}

std::string QScalar::to_string() const {
    if (den_.empty()) return num_.to_string();
    std::string d;
    for (auto& f : den_) {
        if (!d.empty()) d += ' ';
        d += '[' + std::to_string(f.first) + ']';
        if (f.second != 1) d += '^' + std::to_string(f.second);
    }
    return '(' + num_.to_string() + ") / (" + d + ')';
}

}  // namespace qh
