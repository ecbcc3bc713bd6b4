#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "crjet/tower.hpp"

namespace crjet {

enum class ExprFormat { Text, Latex, Json };

/// Canonical rational function over a tower of atoms: num/den with
/// gcd(num,den) = 1 and den monic under the graded monomial order.
/// Immutable; equality is representation equality.
class Expr {
public:
    Expr() = default;  // invalid placeholder; use factories
    Expr(std::shared_ptr<Tower> tw, MPoly num, MPoly den);

    static Expr zero(std::shared_ptr<Tower> tw);
    static Expr one(std::shared_ptr<Tower> tw);
    static Expr constant(std::shared_ptr<Tower> tw, const GaussRat& c);
    static Expr variable(std::shared_ptr<Tower> tw, const std::string& name);
    static Expr from_atom(std::shared_ptr<Tower> tw, int32_t atom_idx);
    /// atan/exp/log/sqrt applied to arg, with constant-argument simplification
    /// (atan(0)=0, exp(0)=1, log(1)=0, sqrt(1)=1).
    static Expr apply(AtomKind kind, const Expr& arg);

    const std::shared_ptr<Tower>& tower() const { return tower_; }
    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool valid() const { return tower_ != nullptr; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    GaussRat constant_value() const;  // requires is_constant()

    Expr operator-() const;
    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator*(const Expr& o) const;
    Expr operator/(const Expr& o) const;
    Expr pow(long k) const;

    Expr operator+(const GaussRat& c) const { return *this + constant(tower_, c); }
    Expr operator*(const GaussRat& c) const;

    bool operator==(const Expr& o) const;
    bool operator!=(const Expr& o) const { return !(*this == o); }

    /// Partial derivative with respect to a variable atom.
    Expr derivative(int32_t var_idx) const;
    Expr derivative(const std::string& var_name) const;

    /// Simultaneous substitution variable -> Expr, then renormalization.
    /// Throws SubstitutionPole if a denominator collapses to zero.
    Expr substitute(const std::map<int32_t, Expr>& bindings) const;
    Expr substitute(const std::map<std::string, Expr>& bindings) const;
    /// Evaluate at the origin of the given variables (others untouched).
    Expr at_origin(const std::vector<std::string>& vars) const;

    /// Formal conjugation: swaps paired variables, conjugates coefficients,
    /// maps atoms to conjugate atoms. Involutive.
    Expr sigma() const;

    /// Atom indices used by this expression (closure over atom arguments).
    std::vector<int32_t> atom_support() const;
    /// True when no atan/exp/log atom occurs (sqrt is algebraic).
    bool is_algebraic_form() const;
    bool depends_on(int32_t var_idx) const;

    std::string str(ExprFormat f = ExprFormat::Text) const;

private:
    std::shared_ptr<Tower> tower_;
    MPoly num_;
    MPoly den_{MPoly::constant(GaussRat(1))};
};

struct SubstitutionPole : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised on mathematically degenerate input (Levi degeneracy and friends).
struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_zero(const Expr& e);
Expr normalize(const Expr& e);  // identity on the canonical representation

std::string poly_str(const MPoly& p, const Tower& tw, ExprFormat f);

}  // namespace crjet
