#include "crjet/tower.hpp"

#include <cassert>
#include <stdexcept>

#include "crjet/expr.hpp"

namespace crjet {

const char* atom_kind_name(AtomKind k) {
    switch (k) {
        case AtomKind::Variable: return "var";
        case AtomKind::Atan: return "atan";
        case AtomKind::Exp: return "exp";
        case AtomKind::Log: return "log";
        case AtomKind::Sqrt: return "sqrt";
    }
    return "?";
}

std::shared_ptr<Tower> Tower::make() {
    return std::shared_ptr<Tower>(new Tower());
}

std::shared_ptr<Tower> Tower::standard() {
    auto tw = make();
    tw->add_variable_pair("z", "zb");
    tw->add_self_conjugate("v");
    tw->add_variable_pair("w", "wb");
    tw->add_variable("wp");
    tw->add_variable("wpp");
    return tw;
}

int32_t Tower::push_atom(Atom a) {
    atoms_.push_back(std::move(a));
    return (int32_t)(atoms_.size() - 1);
}

int32_t Tower::add_variable(const std::string& name) {
    std::lock_guard lk(mu_);
    if (var_index_.count(name)) throw std::invalid_argument("duplicate variable: " + name);
    int32_t idx = push_atom({AtomKind::Variable, name, {}, -1});
    var_index_[name] = idx;
    return idx;
}

int32_t Tower::add_variable_pair(const std::string& name, const std::string& conj_name) {
    std::lock_guard lk(mu_);
    int32_t a = add_variable(name);
    int32_t b = add_variable(conj_name);
    atoms_[a].sigma_partner = b;
    atoms_[b].sigma_partner = a;
    return a;
}

int32_t Tower::add_self_conjugate(const std::string& name) {
    std::lock_guard lk(mu_);
    int32_t a = add_variable(name);
    atoms_[a].sigma_partner = a;
    return a;
}

int32_t Tower::find_variable(const std::string& name) const {
    std::lock_guard lk(mu_);
    auto it = var_index_.find(name);
    return it == var_index_.end() ? -1 : it->second;
}

int32_t Tower::atom_locked(AtomKind kind, const RatPoly& arg) {
    for (size_t i = 0; i < atoms_.size(); ++i)
        if (atoms_[i].kind == kind && atoms_[i].kind != AtomKind::Variable && atoms_[i].argument == arg)
            return (int32_t)i;
    std::string nm = std::string(atom_kind_name(kind)) + "#" + std::to_string(atoms_.size());
    return push_atom({kind, nm, arg, -1});
}

int32_t Tower::atom(AtomKind kind, const Expr& arg) {
    assert(arg.tower().get() == this);
    std::lock_guard lk(mu_);
    RatPoly rp{arg.num(), arg.den()};
    int32_t idx = atom_locked(kind, rp);
    if (atoms_[idx].sigma_partner >= 0) return idx;
    // Close the tower under conjugation when the argument allows it.
    try {
        Expr sarg = arg.sigma();
        int32_t partner = atom_locked(kind, RatPoly{sarg.num(), sarg.den()});
        atoms_[idx].sigma_partner = partner;
        atoms_[partner].sigma_partner = idx;
    } catch (const std::domain_error&) {
        // unpaired variable somewhere in the argument; atom stays unpaired
    }
    return idx;
}

RatPoly Tower::atom_derivative(int32_t atom_idx, int32_t var_idx) {
    std::lock_guard lk(mu_);
    auto key = std::make_pair(atom_idx, var_idx);
    auto it = deriv_cache_.find(key);
    if (it != deriv_cache_.end()) return it->second;

    const Atom& a = atoms_[atom_idx];
    auto self = shared_from_this();
    Expr result;
    if (a.kind == AtomKind::Variable) {
        result = atom_idx == var_idx ? Expr::one(self) : Expr::zero(self);
    } else {
        Expr arg(self, a.argument.num, a.argument.den);
        Expr darg = arg.derivative(var_idx);
        if (darg.is_zero()) {
            result = Expr::zero(self);
        } else {
            Expr head = Expr::from_atom(self, atom_idx);
            switch (a.kind) {
                case AtomKind::Atan:
                    result = darg / (Expr::one(self) + arg * arg);
                    break;
                case AtomKind::Exp:
                    result = head * darg;
                    break;
                case AtomKind::Log:
                    result = darg / arg;
                    break;
                case AtomKind::Sqrt:
                    result = darg / (head * GaussRat(2));
                    break;
                default:
                    throw std::logic_error("unreachable");
            }
        }
    }
    RatPoly rp{result.num(), result.den()};
    deriv_cache_[key] = rp;
    return rp;
}

std::vector<GaussRat> Tower::reference_series(AtomKind kind, int order) {
    std::vector<GaussRat> c(std::max(order, 0), GaussRat(0));
    switch (kind) {
        case AtomKind::Atan:
            for (int k = 0; 2 * k + 1 < order; ++k)
                c[2 * k + 1] = GaussRat(k % 2 == 0 ? 1 : -1, 2 * k + 1);
            break;
        case AtomKind::Exp: {
            GaussRat f(1);
            for (int k = 0; k < order; ++k) {
                c[k] = f;
                f = f * GaussRat(1, k + 1);
            }
            break;
        }
        case AtomKind::Log:
            for (int k = 1; k < order; ++k) c[k] = GaussRat(k % 2 == 1 ? 1 : -1, k);
            break;
        case AtomKind::Sqrt: {
            // binomial(1/2, k)
            GaussRat b(1);
            for (int k = 0; k < order; ++k) {
                c[k] = b;
                b = b * GaussRat(1 - 2 * k, 2 * (k + 1));
            }
            break;
        }
        case AtomKind::Variable:
            throw std::invalid_argument("no reference series for variables");
    }
    return c;
}

}  // namespace crjet
