#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "crjet/rational.hpp"

namespace crjet {

/// Sparse exponent vector over tower atom indices; pairs (atom, exp) sorted by
/// atom index, exp > 0.
using Monomial = std::vector<std::pair<int32_t, int32_t>>;

int64_t total_degree(const Monomial& m);
int32_t exponent_of(const Monomial& m, int32_t atom);
Monomial monomial_mul(const Monomial& a, const Monomial& b);
/// a / b; fails (nullopt) unless b divides a.
std::optional<Monomial> monomial_div(const Monomial& a, const Monomial& b);
Monomial monomial_gcd(const Monomial& a, const Monomial& b);
/// Graded order: total degree first, ties broken lexicographically with lower
/// atom indices more significant. Returns <0, 0, >0.
int monomial_cmp(const Monomial& a, const Monomial& b);

/// Sparse multivariate polynomial with GaussRat coefficients.
/// Terms kept sorted descending in monomial_cmp; no zero coefficients stored.
class MPoly {
public:
    struct Term {
        Monomial mono;
        GaussRat coeff;
    };

    MPoly() = default;
    static MPoly zero() { return MPoly(); }
    static MPoly constant(const GaussRat& c);
    static MPoly variable(int32_t atom);
    static MPoly term(const Monomial& m, const GaussRat& c);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty()); }
    GaussRat constant_value() const;  // valid when is_constant()
    size_t size() const { return terms_.size(); }

    const Term& leading() const { return terms_.front(); }
    int64_t degree() const { return terms_.empty() ? -1 : total_degree(terms_.front().mono); }
    int64_t degree_in(int32_t atom) const;

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly mul_term(const Monomial& m, const GaussRat& c) const;
    MPoly mul_scalar(const GaussRat& c) const;
    MPoly pow(long k) const;

    bool operator==(const MPoly& o) const;
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    /// Exact multivariate division; nullopt if not divisible.
    static std::optional<MPoly> div_exact(const MPoly& a, const MPoly& b);

    /// GCD, normalized monic (leading coefficient 1). gcd(0,0) = 0.
    static MPoly gcd(const MPoly& a, const MPoly& b);

    /// Formal partial derivative with respect to one atom slot.
    MPoly formal_partial(int32_t atom) const;

    /// Coefficient polynomials viewed univariately in `atom`, index = exponent.
    std::vector<MPoly> coeffs_in(int32_t atom) const;
    static MPoly from_coeffs_in(int32_t atom, const std::vector<MPoly>& cs);

    /// Atoms occurring with positive exponent anywhere.
    std::vector<int32_t> support() const;

    /// Replace every occurrence of atom `a` by atom `b` (b fresh in the poly).
    MPoly rename_atom(int32_t a, int32_t b) const;

    GaussRat coefficient(const Monomial& m) const;

    /// Sorted-unique construction from an arbitrary term soup.
    static MPoly collect(std::vector<Term> ts);

private:
    std::vector<Term> terms_;
};

}  // namespace crjet
