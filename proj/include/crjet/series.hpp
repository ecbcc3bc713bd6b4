#pragma once

#include <cassert>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "crjet/expr.hpp"

namespace crjet {

struct ExpansionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Multivariate power series truncated at a total degree, with exact
/// coefficients (GaussRat, or Expr in declared parameter variables).
template <class R>
class TSeries {
public:
    using Exp = std::vector<uint32_t>;
    using Vars = std::vector<std::string>;
    using VarsPtr = std::shared_ptr<const Vars>;

    TSeries(VarsPtr vars, int order, R zero) : vars_(std::move(vars)), order_(order), zero_(std::move(zero)) {}

    static TSeries constant(VarsPtr vars, int order, R c) {
        TSeries s(vars, order, c - c);
        s.add_term(Exp(vars->size(), 0), std::move(c));
        return s;
    }
    static TSeries var(VarsPtr vars, int order, size_t i, R one, R zero) {
        TSeries s(std::move(vars), order, std::move(zero));
        Exp e(s.vars_->size(), 0);
        e[i] = 1;
        s.add_term(e, std::move(one));
        return s;
    }

    const Vars& vars() const { return *vars_; }
    const VarsPtr& vars_ptr() const { return vars_; }
    int order() const { return order_; }
    const std::map<Exp, R>& terms() const { return terms_; }
    const R& zero_elem() const { return zero_; }
    bool is_zero() const { return terms_.empty(); }

    static int degree(const Exp& e) {
        int d = 0;
        for (auto k : e) d += (int)k;
        return d;
    }

    void add_term(const Exp& e, const R& c) {
        if (is_zero_elem(c) || degree(e) >= order_) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second = it->second + c;
            if (is_zero_elem(it->second)) terms_.erase(it);
        }
    }

    R coeff(const Exp& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? zero_ : it->second;
    }

    R constant_term() const { return coeff(Exp(vars_->size(), 0)); }

    int valuation() const {  // order_ when zero
        int v = order_;
        for (auto& [e, c] : terms_) v = std::min(v, degree(e));
        return v;
    }

    TSeries truncated(int new_order) const {
        TSeries r(vars_, std::min(new_order, order_), zero_);
        for (auto& [e, c] : terms_)
            if (degree(e) < r.order_) r.terms_.emplace(e, c);
        return r;
    }

    TSeries operator-() const {
        TSeries r(vars_, order_, zero_);
        for (auto& [e, c] : terms_) r.terms_.emplace(e, zero_ - c);
        return r;
    }

    TSeries operator+(const TSeries& o) const {
        assert(vars() == o.vars());
        TSeries r(vars_, std::min(order_, o.order_), zero_);
        for (auto& [e, c] : terms_)
            if (degree(e) < r.order_) r.terms_.emplace(e, c);
        for (auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    TSeries operator-(const TSeries& o) const { return *this + (-o); }

    TSeries operator*(const TSeries& o) const {
        assert(vars() == o.vars());
        TSeries r(vars_, std::min(order_, o.order_), zero_);
        for (auto& [ea, ca] : terms_) {
            int da = degree(ea);
            if (da >= r.order_) continue;
            for (auto& [eb, cb] : o.terms_) {
                if (da + degree(eb) >= r.order_) continue;
                Exp e(ea.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    TSeries mul_scalar(const R& c) const {
        TSeries r(vars_, order_, zero_);
        if (is_zero_elem(c)) return r;
        for (auto& [e, k] : terms_) {
            R v = k * c;
            if (!is_zero_elem(v)) r.terms_.emplace(e, v);
        }
        return r;
    }

    TSeries pow(long k) const {
        TSeries acc = constant(vars_, order_, one_like());
        TSeries base = *this;
        while (k > 0) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    /// Formal partial derivative in variable slot i.
    TSeries derivative(size_t i) const {
        TSeries r(vars_, order_, zero_);
        for (auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exp e2 = e;
            e2[i] -= 1;
            r.add_term(e2, c * GaussRat((long)e[i]));
        }
        return r;
    }

    /// Substitute each variable by a series (over common target vars); every
    /// argument must have zero constant term.
    TSeries compose(const std::vector<TSeries>& args) const {
        assert(args.size() == vars_->size());
        for (auto& a : args) assert(is_zero_elem(a.constant_term()));
        VarsPtr tvars = args.empty() ? vars_ : args[0].vars_ptr();
        int tord = order_;
        for (auto& a : args) tord = std::min(tord, a.order());
        TSeries r(tvars, tord, zero_);
        // cache powers per variable
        std::vector<std::vector<TSeries>> pw(args.size());
        for (size_t i = 0; i < args.size(); ++i)
            pw[i].push_back(constant(tvars, tord, one_like()));
        for (auto& [e, c] : terms_) {
            TSeries term = constant(tvars, tord, c);
            bool dead = false;
            for (size_t i = 0; i < e.size() && !dead; ++i) {
                if (e[i] == 0) continue;
                while (pw[i].size() <= e[i]) pw[i].push_back(pw[i].back() * args[i].truncated(tord));
                term = term * pw[i][e[i]];
                dead = term.is_zero();
            }
            r = r + term;
        }
        return r;
    }

    /// Multiplicative inverse; constant term must be invertible.
    TSeries reciprocal() const {
        R c0 = constant_term();
        if (is_zero_elem(c0)) throw ExpansionError("pole at expansion point");
        TSeries r = constant(vars_, order_, one_like() / c0);
        TSeries two = constant(vars_, order_, one_like() + GaussRat(1));
        for (int o = 1; o < order_; o *= 2) r = r * (two - *this * r);
        return r;
    }

    bool operator==(const TSeries& o) const {
        return vars() == o.vars() && order_ == o.order_ && terms_ == o.terms_;
    }

private:
    R one_like() const { return zero_ + GaussRat(1); }
    static bool is_zero_elem(const R& c) { return c.is_zero(); }

    VarsPtr vars_;
    int order_;
    R zero_;
    std::map<Exp, R> terms_;
};

using Series = TSeries<GaussRat>;
using SeriesVars = Series::VarsPtr;

SeriesVars series_vars(std::vector<std::string> names);

Series series_zero(const SeriesVars& v, int order);
Series series_const(const SeriesVars& v, int order, const GaussRat& c);
Series series_var(const SeriesVars& v, int order, const std::string& name);
size_t series_var_index(const Series& s, const std::string& name);

/// Taylor expansion of an Expr at the origin of `vars` with exact rational
/// coefficients. Every atom argument must be regular there (atan/exp about 0,
/// log/sqrt about 1); denominators must not vanish at the origin.
Series expand(const Expr& e, const SeriesVars& vars, int order);

/// Expansion with Expr coefficients; tower variables outside `vars` are
/// treated as symbolic parameters.
TSeries<Expr> expand_param(const Expr& e, const SeriesVars& vars, int order);

/// Compositional inverse: f(0)=0, f'(0) != 0; returns g over the same
/// variable with f(g(t)) = t mod t^order.
Series invert_series(const Series& f, int order);

/// Newton solve of eqs(params, unknowns) = 0 for the unknowns as series in
/// the parameters, about the origin. The equations' variable list must be
/// params followed by unknowns; throws DegenerateInput when the Jacobian in
/// the unknowns is singular at 0.
std::vector<Series> solve_implicit(const std::vector<Series>& eqs,
                                   const std::vector<std::string>& unknowns, int order);

}  // namespace crjet
