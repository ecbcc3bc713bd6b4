#include "crjet/frame.hpp"

namespace crjet {

Expr VectorField::apply(const Expr& f) const {
    auto tw = f.tower();
    Expr r = Expr::zero(tw);
    static const char* names[3] = {"z", "zb", "v"};
    for (int k = 0; k < 3; ++k)
        if (!c[k].is_zero()) r = r + c[k] * f.derivative(names[k]);
    return r;
}

VectorField VectorField::sigma() const {
    // conjugation swaps the dz and dzb slots and fixes dv
    return VectorField{{c[1].sigma(), c[0].sigma(), c[2].sigma()}};
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    return {{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2]}};
}

VectorField operator-(const VectorField& a) { return {{-a.c[0], -a.c[1], -a.c[2]}}; }

VectorField mul(const Expr& s, const VectorField& v) {
    return {{s * v.c[0], s * v.c[1], s * v.c[2]}};
}

VectorField lie_bracket(const VectorField& U, const VectorField& V) {
    VectorField r;
    for (int k = 0; k < 3; ++k) r.c[k] = U.apply(V.c[k]) - V.apply(U.c[k]);
    return r;
}

Expr OneForm::pair(const VectorField& v) const {
    return c[0] * v.c[0] + c[1] * v.c[1] + c[2] * v.c[2];
}

Frame build_frame(const Hypersurface& M) {
    auto tw = M.tower();
    Expr zero = Expr::zero(tw), one = Expr::one(tw);
    Expr i = Expr::constant(tw, GaussRat::i());
    VectorField X, Xb;
    if (M.is_rigid()) {
        const Expr& H = M.defining();
        X = {{one, zero, -(i * H.derivative("z"))}};
        Xb = {{zero, one, i * H.derivative("zb")}};
    } else {
        const Expr& F = M.defining();
        Expr A = -(i * F.derivative("z")) / (one + i * F.derivative("v"));
        X = {{one, zero, A}};
        Xb = {{zero, one, A.sigma()}};
    }
    VectorField Y = -lie_bracket(X, Xb);
    if (Y.c[2].at_origin({"z", "zb", "v"}).is_zero())
        throw DegenerateInput("Levi-degenerate at 0: the bracket direction Y vanishes");
    return Frame{Y, X, Xb};
}

Coframe dual_coframe(const Frame& fr) {
    auto tw = fr.X.c[0].tower();
    // rows of the frame matrix
    const VectorField* rows[3] = {&fr.Y, &fr.X, &fr.Xb};
    // det and adjugate of the 3x3 matrix M[a][k] = rows[a]->c[k]
    auto at = [&](int a, int k) -> const Expr& { return rows[a]->c[k]; };
    auto minor2 = [&](int r0, int r1, int c0, int c1) {
        return at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
    };
    Expr det = at(0, 0) * minor2(1, 2, 1, 2) - at(0, 1) * minor2(1, 2, 0, 2) +
               at(0, 2) * minor2(1, 2, 0, 1);
    if (det.is_zero()) throw DegenerateInput("frame matrix is singular");
    // coframe row a = (M^{-1})^T row a: C[a][k] = cofactor(a,k)/det, and the
    // cyclic row/column order absorbs the cofactor sign
    Coframe co;
    OneForm* forms[3] = {&co.j, &co.l, &co.lb};
    for (int a = 0; a < 3; ++a)
        for (int k = 0; k < 3; ++k)
            forms[a]->c[k] = minor2((a + 1) % 3, (a + 2) % 3, (k + 1) % 3, (k + 2) % 3) / det;
    (void)tw;
    return co;
}

StructureFunction::StructureFunction(Frame fr, Expr P)
    : frame_(std::move(fr)), P_(std::move(P)), Pc_(P_.sigma()) {}

StructureFunction compute_structure_function(const Frame& fr) {
    VectorField B = -lie_bracket(fr.X, fr.Y);
    if (!B.c[0].is_zero() || !B.c[1].is_zero())
        throw std::logic_error("[X, Y] is not proportional to Y");
    // [X, Y] = P Y fixes the sign used throughout (structure equations and
    // the printed derivative formulas pin P = H_{zz zb}/H_{z zb} for rigid H).
    Expr P = (-B.c[2]) / fr.Y.c[2];
    VectorField resid = lie_bracket(fr.X, fr.Y) + (-mul(P, fr.Y));
    if (!resid.is_zero()) throw std::logic_error("[X, Y] - P Y != 0");
    return StructureFunction(fr, P);
}

Expr StructureFunction::apply_frame(char dir, const Expr& f) const {
    switch (dir) {
        case 'Y': return frame_.Y.apply(f);
        case 'X': return frame_.X.apply(f);
        case 'B': return frame_.Xb.apply(f);
        default: throw std::invalid_argument("frame direction must be one of X, B, Y");
    }
}

Expr StructureFunction::derivative_of(const Expr& base, const std::string& word,
                                      std::map<std::string, Expr>& cache) const {
    if (word.empty()) return base;
    auto it = cache.find(word);
    if (it != cache.end()) return it->second;
    // leftmost letter is applied first
    Expr prev = derivative_of(base, word.substr(0, word.size() - 1), cache);
    Expr r = apply_frame(word.back(), prev);
    cache.emplace(word, r);
    return r;
}

Expr StructureFunction::derivative(const std::string& word) const {
    std::lock_guard lk(mu_);
    return derivative_of(P_, word, cache_);
}

Expr StructureFunction::derivative_conj(const std::string& word) const {
    std::lock_guard lk(mu_);
    return derivative_of(Pc_, word, cache_conj_);
}

Expr exterior_eval(const OneForm& w, const VectorField& U, const VectorField& V) {
    return U.apply(w.pair(V)) - V.apply(w.pair(U)) - w.pair(lie_bracket(U, V));
}

bool StructureEquationReport::all_zero() const {
    for (auto& e : dj_residual)
        if (!e.is_zero()) return false;
    for (auto& e : dl_residual)
        if (!e.is_zero()) return false;
    for (auto& e : dlb_residual)
        if (!e.is_zero()) return false;
    return true;
}

StructureEquationReport verify_structure_equations(const Frame& fr, const Coframe& co,
                                                   const StructureFunction& sf) {
    const Expr& P = sf.P();
    Expr Pb = sf.derivative_conj("");
    // wedge pairing without 1/2: (a^b)(U,V) = a(U) b(V) - a(V) b(U)
    auto wedge = [&](const OneForm& a, const OneForm& b, const VectorField& U, const VectorField& V) {
        return a.pair(U) * b.pair(V) - a.pair(V) * b.pair(U);
    };
    StructureEquationReport rep;
    const VectorField* pairs[3][2] = {{&fr.Y, &fr.X}, {&fr.Y, &fr.Xb}, {&fr.X, &fr.Xb}};
    for (int k = 0; k < 3; ++k) {
        const VectorField &U = *pairs[k][0], &V = *pairs[k][1];
        Expr rhs = P * wedge(co.j, co.l, U, V) + Pb * wedge(co.j, co.lb, U, V) +
                   wedge(co.l, co.lb, U, V);
        rep.dj_residual[k] = exterior_eval(co.j, U, V) - rhs;
        rep.dl_residual[k] = exterior_eval(co.l, U, V);
        rep.dlb_residual[k] = exterior_eval(co.lb, U, V);
    }
    return rep;
}

}  // namespace crjet
