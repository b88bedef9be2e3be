#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qh {

struct Exponent {
    int a = 0;
    int q = 0;
    int s = 0;
    bool operator==(const Exponent&) const = default;
};

// Sparse Laurent polynomial in a, q, s with integer coefficients.
// Terms are kept sorted by (a, s, q) with no zero coefficients.
class LaurentPoly {
public:
    struct Term {
        std::uint64_t key;
        mpz_class c;
    };

    static constexpr int kExpLimit = 1 << 20;

    LaurentPoly() = default;
    explicit LaurentPoly(long c);
    explicit LaurentPoly(const mpz_class& c);

    static LaurentPoly monomial(const mpz_class& c, int a, int q, int s);
    static LaurentPoly monomial(long c, int a, int q, int s);
    // a^xa q^xq s^xs - a^-xa q^-xq s^-xs
    static LaurentPoly binomial(int xa, int xq, int xs);
    // combines duplicate keys and drops zeros
    static LaurentPoly from_terms(std::vector<Term> terms);
    static LaurentPoly sum(std::vector<LaurentPoly> parts);

    static std::uint64_t pack(int a, int q, int s);
    static Exponent unpack(std::uint64_t key);

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    bool has_a() const;
    bool has_s() const;
    bool has_q() const;
    // min/max exponent per variable; requires nonzero
    Exponent min_exponents() const;
    Exponent max_exponents() const;
    std::size_t max_coeff_bits() const;

    LaurentPoly operator-() const;
    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    bool operator==(const LaurentPoly& o) const;
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly shifted(int a, int q, int s) const;
    LaurentPoly scaled(const mpz_class& c) const;
    LaurentPoly mul_by_quantum(int l) const;
    std::optional<LaurentPoly> exact_div_by_quantum(int l) const;
    // coeffs ascending in q, leading coefficient 1, constant term +-1
    std::optional<LaurentPoly> exact_div_q_poly(const std::vector<long>& coeffs) const;
    // general exact division; nullopt if d does not divide
    std::optional<LaurentPoly> exact_div(const LaurentPoly& d) const;
    // gcd of the coefficients (0 for the zero polynomial)
    mpz_class content() const;

    // a -> sa*q^ma, s -> ss*q^ms, q -> q^qsign, applied simultaneously
    LaurentPoly substituted(std::optional<std::pair<int, int>> a_to,
                            std::optional<std::pair<int, int>> s_to, int qsign) const;
    LaurentPoly set_s_one() const;

    mpz_class coeff(int a, int q, int s) const;

    std::string to_string() const;

private:
    std::vector<Term> terms_;

    static LaurentPoly mul_schoolbook(const LaurentPoly& x, const LaurentPoly& y);
    static std::optional<LaurentPoly> mul_kronecker(const LaurentPoly& x, const LaurentPoly& y);
    static std::optional<LaurentPoly> mul_grouped(const LaurentPoly& x, const LaurentPoly& y);
};

LaurentPoly operator*(long c, const LaurentPoly& p);

}  // namespace qh
