#include "crjet/series.hpp"

#include <algorithm>

namespace crjet {

SeriesVars series_vars(std::vector<std::string> names) {
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

Series series_zero(const SeriesVars& v, int order) { return Series(v, order, GaussRat(0)); }

Series series_const(const SeriesVars& v, int order, const GaussRat& c) {
    return Series::constant(v, order, c);
}

Series series_var(const SeriesVars& v, int order, const std::string& name) {
    auto it = std::find(v->begin(), v->end(), name);
    if (it == v->end()) throw std::invalid_argument("series variable not declared: " + name);
    return Series::var(v, order, it - v->begin(), GaussRat(1), GaussRat(0));
}

size_t series_var_index(const Series& s, const std::string& name) {
    auto it = std::find(s.vars().begin(), s.vars().end(), name);
    if (it == s.vars().end()) throw std::invalid_argument("series variable not declared: " + name);
    return it - s.vars().begin();
}

namespace {

/// Composes a univariate reference coefficient stream with u (valuation >= 1).
Series compose_stream(const std::vector<GaussRat>& cs, const Series& u) {
    Series acc = series_const(u.vars_ptr(), u.order(), cs.empty() ? GaussRat(0) : cs[0]);
    Series p = series_const(u.vars_ptr(), u.order(), GaussRat(1));
    for (size_t k = 1; k < cs.size(); ++k) {
        p = p * u;
        if (p.is_zero()) break;
        if (!cs[k].is_zero()) acc = acc + p.mul_scalar(cs[k]);
    }
    return acc;
}

struct Expander {
    const std::shared_ptr<Tower>& tw;
    const SeriesVars& vars;
    int order;
    std::map<int32_t, Series> atom_cache;

    Series atom_series(int32_t a) {
        auto it = atom_cache.find(a);
        if (it != atom_cache.end()) return it->second;
        const Atom& atom = tw->at(a);
        Series s = series_zero(vars, order);
        if (atom.kind == AtomKind::Variable) {
            auto vit = std::find(vars->begin(), vars->end(), atom.name);
            if (vit == vars->end())
                throw ExpansionError("variable '" + atom.name + "' is not an expansion variable");
            s = Series::var(vars, order, vit - vars->begin(), GaussRat(1), GaussRat(0));
        } else {
            Series arg = expr_series(Expr(tw, atom.argument.num, atom.argument.den));
            GaussRat c0 = arg.constant_term();
            auto stream = Tower::reference_series(atom.kind, order);
            switch (atom.kind) {
                case AtomKind::Atan:
                case AtomKind::Exp:
                    if (!c0.is_zero())
                        throw ExpansionError(std::string(atom_kind_name(atom.kind)) +
                                             " argument does not vanish at the expansion point");
                    s = compose_stream(stream, arg);
                    break;
                case AtomKind::Log:
                case AtomKind::Sqrt:
                    if (!c0.is_one())
                        throw ExpansionError(std::string(atom_kind_name(atom.kind)) +
                                             " argument is not 1 at the expansion point");
                    s = compose_stream(stream, arg - series_const(vars, order, GaussRat(1)));
                    break;
                default:
                    throw std::logic_error("unreachable");
            }
        }
        atom_cache.emplace(a, s);
        return s;
    }

    Series poly_series(const MPoly& p) {
        Series acc = series_zero(vars, order);
        std::map<int32_t, std::vector<Series>> powers;
        for (auto& t : p.terms()) {
            Series term = series_const(vars, order, t.coeff);
            for (auto& [a, e] : t.mono) {
                auto& pw = powers[a];
                if (pw.empty()) pw.push_back(series_const(vars, order, GaussRat(1)));
                while ((int)pw.size() <= e) pw.push_back(pw.back() * atom_series(a));
                term = term * pw[e];
                if (term.is_zero()) break;
            }
            acc = acc + term;
        }
        return acc;
    }

    Series expr_series(const Expr& e) {
        Series n = poly_series(e.num());
        if (e.den().is_constant()) return n.mul_scalar(e.den().constant_value().inv());
        Series d = poly_series(e.den());
        if (d.constant_term().is_zero()) throw ExpansionError("pole at expansion point");
        return n * d.reciprocal();
    }
};

}  // namespace

Series expand(const Expr& e, const SeriesVars& vars, int order) {
    Expander ex{e.tower(), vars, order, {}};
    return ex.expr_series(e);
}

TSeries<Expr> expand_param(const Expr& e, const SeriesVars& vars, int order) {
    auto tw = e.tower();
    std::vector<std::string> names(vars->begin(), vars->end());
    TSeries<Expr> out(vars, order, Expr::zero(tw));
    GaussRat fact(1);
    // recursive enumeration of multi-indices with derivative reuse
    struct Rec {
        TSeries<Expr>& out;
        const std::vector<std::string>& names;
        int order;

        void walk(const Expr& d, size_t from, TSeries<Expr>::Exp& exp, int deg, const GaussRat& inv_fact) {
            Expr c0;
            try {
                c0 = d.at_origin(names);
            } catch (const SubstitutionPole&) {
                throw ExpansionError("pole at expansion point");
            }
            if (!c0.is_zero()) out.add_term(exp, c0 * inv_fact);
            if (deg + 1 >= order) return;
            for (size_t i = from; i < names.size(); ++i) {
                Expr di = d.derivative(names[i]);
                if (di.is_zero()) continue;
                exp[i] += 1;
                walk(di, i, exp, deg + 1, inv_fact * GaussRat(1, (long)exp[i]));
                exp[i] -= 1;
            }
        }
    } rec{out, names, order};
    TSeries<Expr>::Exp exp(names.size(), 0);
    rec.walk(e, 0, exp, 0, fact);
    return out;
}

Series invert_series(const Series& f, int order) {
    if (f.vars().size() != 1) throw std::invalid_argument("invert_series expects one variable");
    if (!f.constant_term().is_zero()) throw DegenerateInput("invert_series: f(0) != 0");
    Series::Exp lin{1};
    if (f.coeff(lin).is_zero()) throw DegenerateInput("invert_series: vanishing linear term");
    auto ext = series_vars({f.vars()[0], "#u"});
    Series eq = series_zero(ext, order);
    for (auto& [e, c] : f.terms()) eq.add_term({0, e[0]}, c);
    eq = eq - series_var(ext, order, f.vars()[0]);
    auto sol = solve_implicit({eq}, {"#u"}, order);
    // solution comes back over the parameter variable, same name as f's
    Series g(f.vars_ptr(), order, GaussRat(0));
    for (auto& [e, c] : sol[0].terms()) g.add_term(e, c);
    return g;
}

std::vector<Series> solve_implicit(const std::vector<Series>& eqs,
                                   const std::vector<std::string>& unknowns, int order) {
    if (eqs.empty() || eqs.size() != unknowns.size())
        throw std::invalid_argument("solve_implicit: need as many equations as unknowns");
    const auto& allv = eqs[0].vars();
    for (auto& e : eqs)
        if (e.vars() != allv) throw std::invalid_argument("solve_implicit: mismatched variable lists");

    const size_t m = unknowns.size();
    std::vector<size_t> upos(m);
    std::vector<std::string> params;
    for (size_t i = 0; i < m; ++i) upos[i] = series_var_index(eqs[0], unknowns[i]);
    for (size_t i = 0; i < allv.size(); ++i)
        if (std::find(upos.begin(), upos.end(), i) == upos.end()) params.push_back(allv[i]);
    auto pv = series_vars(params);
    // positions of params within the full list
    std::vector<size_t> ppos;
    for (size_t i = 0; i < allv.size(); ++i)
        if (std::find(upos.begin(), upos.end(), i) == upos.end()) ppos.push_back(i);

    for (auto& e : eqs)
        if (!e.constant_term().is_zero())
            throw DegenerateInput("solve_implicit: equations do not vanish at the origin");

    // Jacobian in the unknowns at 0.
    std::vector<std::vector<GaussRat>> J0(m, std::vector<GaussRat>(m, GaussRat(0)));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            Series::Exp e(allv.size(), 0);
            e[upos[j]] = 1;
            J0[i][j] = eqs[i].coeff(e);
        }
    // invert J0 by Gaussian elimination
    std::vector<std::vector<GaussRat>> inv(m, std::vector<GaussRat>(m, GaussRat(0)));
    for (size_t i = 0; i < m; ++i) inv[i][i] = GaussRat(1);
    {
        auto A = J0;
        for (size_t c = 0; c < m; ++c) {
            size_t piv = c;
            while (piv < m && A[piv][c].is_zero()) ++piv;
            if (piv == m)
                throw DegenerateInput(
                    "solve_implicit: singular Jacobian at the origin (Levi-degenerate input)");
            std::swap(A[piv], A[c]);
            std::swap(inv[piv], inv[c]);
            GaussRat d = A[c][c].inv();
            for (size_t k = 0; k < m; ++k) {
                A[c][k] *= d;
                inv[c][k] *= d;
            }
            for (size_t r = 0; r < m; ++r) {
                if (r == c || A[r][c].is_zero()) continue;
                GaussRat f = A[r][c];
                for (size_t k = 0; k < m; ++k) {
                    A[r][k] -= f * A[c][k];
                    inv[r][k] -= f * inv[c][k];
                }
            }
        }
    }

    // embed a parameter-space series into the full variable list
    auto lift = [&](const Series& s) {
        Series r(eqs[0].vars_ptr(), order, GaussRat(0));
        for (auto& [e, c] : s.terms()) {
            Series::Exp fe(allv.size(), 0);
            for (size_t i = 0; i < ppos.size(); ++i) fe[ppos[i]] = e[i];
            r.add_term(fe, c);
        }
        return r;
    };
    auto param_args = [&]() {
        std::vector<Series> args;
        for (size_t i = 0; i < allv.size(); ++i) args.push_back(series_zero(pv, order));
        for (size_t i = 0; i < ppos.size(); ++i)
            args[ppos[i]] = Series::var(pv, order, i, GaussRat(1), GaussRat(0));
        return args;
    };

    std::vector<Series> u(m, series_zero(pv, order));
    auto residual = [&](std::vector<Series>& E, std::vector<std::vector<Series>>& J) {
        auto args = param_args();
        for (size_t j = 0; j < m; ++j) args[upos[j]] = u[j];
        E.clear();
        J.assign(m, {});
        for (size_t i = 0; i < m; ++i) {
            E.push_back(eqs[i].compose(args));
            for (size_t j = 0; j < m; ++j) J[i].push_back(eqs[i].derivative(upos[j]).compose(args));
        }
    };

    int max_steps = 2;
    while ((1 << max_steps) < 2 * order) ++max_steps;
    for (int step = 0; step <= max_steps; ++step) {
        std::vector<Series> E;
        std::vector<std::vector<Series>> J;
        residual(E, J);
        bool done = true;
        for (auto& e : E)
            if (!e.is_zero()) done = false;
        if (done) break;
        if (step == max_steps) throw std::logic_error("solve_implicit: Newton failed to converge");
        // delta = -J(u)^{-1} E via Neumann series: J = J0 (I + M), M small.
        // N0 = J0^{-1}; M = N0*(J - J0); J^{-1} = (sum (-M)^k) N0.
        std::vector<Series> rhs(m, series_zero(pv, order));
        for (size_t i = 0; i < m; ++i) {
            for (size_t j = 0; j < m; ++j) rhs[i] = rhs[i] + E[j].mul_scalar(inv[i][j]);
            rhs[i] = -rhs[i];
        }  // rhs = -N0 E
        std::vector<std::vector<Series>> M(m, std::vector<Series>(m, series_zero(pv, order)));
        bool mzero = true;
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) {
                Series acc = series_zero(pv, order);
                for (size_t k = 0; k < m; ++k) {
                    Series d = J[k][j] - series_const(pv, order, J0[k][j]);
                    acc = acc + d.mul_scalar(inv[i][k]);
                }
                M[i][j] = acc;
                if (!acc.is_zero()) mzero = false;
            }
        std::vector<Series> delta = rhs;
        if (!mzero) {
            std::vector<Series> cur = rhs;
            for (int it = 0; it < order; ++it) {
                std::vector<Series> next(m, series_zero(pv, order));
                bool nz = false;
                for (size_t i = 0; i < m; ++i) {
                    for (size_t j = 0; j < m; ++j) next[i] = next[i] - M[i][j] * cur[j];
                    if (!next[i].is_zero()) nz = true;
                }
                cur = next;
                if (!nz) break;
                for (size_t i = 0; i < m; ++i) delta[i] = delta[i] + cur[i];
            }
        }
        for (size_t i = 0; i < m; ++i) u[i] = u[i] + delta[i];
    }
    (void)lift;
    return u;
}

}  // namespace crjet
