#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "crjet/poly.hpp"

namespace crjet {

class Expr;

enum class AtomKind { Variable, Atan, Exp, Log, Sqrt };

const char* atom_kind_name(AtomKind k);

/// Raw rational function (numerator/denominator) without a tower reference;
/// used inside the tower itself to break the Expr<->Tower cycle.
struct RatPoly {
    MPoly num;
    MPoly den;  // nonzero, monic
    bool operator==(const RatPoly& o) const { return num == o.num && den == o.den; }
};

struct Atom {
    AtomKind kind;
    std::string name;       // display name ("z", "atan#3", ...)
    RatPoly argument;       // over strictly earlier atoms; unused for variables
    int32_t sigma_partner;  // -1 if none declared/derivable
};

/// Ordered tower of transcendental atoms over a set of base variables.
/// Atom creation is synchronized; existing atom indices are stable, so Exprs
/// holding a shared_ptr to the tower remain valid as the tower grows.
class Tower : public std::enable_shared_from_this<Tower> {
public:
    static std::shared_ptr<Tower> make();
    /// z/zb, w/wb conjugate pairs, v self-conjugate, wp/wpp jet variables.
    static std::shared_ptr<Tower> standard();

    int32_t add_variable(const std::string& name);
    int32_t add_variable_pair(const std::string& name, const std::string& conj_name);
    int32_t add_self_conjugate(const std::string& name);

    /// Find-or-create a transcendental atom applied to `arg` (an Expr on this
    /// tower). Also creates the sigma-image atom when arg is conjugable.
    int32_t atom(AtomKind kind, const Expr& arg);

    int32_t find_variable(const std::string& name) const;  // -1 if absent
    bool has_variable(const std::string& name) const { return find_variable(name) >= 0; }

    const Atom& at(int32_t idx) const { return atoms_[idx]; }
    size_t size() const { return atoms_.size(); }
    bool is_variable(int32_t idx) const { return atoms_[idx].kind == AtomKind::Variable; }

    /// d(atom)/d(var) as a raw rational function; cached.
    RatPoly atom_derivative(int32_t atom_idx, int32_t var_idx);

    /// Taylor coefficients of the atom kind's reference series at its
    /// canonical expansion point: atan/exp about 0, log/sqrt about 1.
    static std::vector<GaussRat> reference_series(AtomKind kind, int order);

private:
    Tower() = default;
    int32_t push_atom(Atom a);
    int32_t atom_locked(AtomKind kind, const RatPoly& arg);

    mutable std::recursive_mutex mu_;
    std::vector<Atom> atoms_;
    std::map<std::string, int32_t> var_index_;
    std::map<std::pair<int32_t, int32_t>, RatPoly> deriv_cache_;
};

}  // namespace crjet
