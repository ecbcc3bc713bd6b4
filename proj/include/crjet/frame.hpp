#pragma once

#include <array>
#include <map>
#include <mutex>
#include <string>

#include "crjet/hypersurface.hpp"

namespace crjet {

/// Vector field on the hypersurface chart, coefficients over (d/dz, d/dzb, d/dv).
struct VectorField {
    std::array<Expr, 3> c;

    Expr apply(const Expr& f) const;
    VectorField sigma() const;
    bool is_zero() const { return c[0].is_zero() && c[1].is_zero() && c[2].is_zero(); }
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a);
VectorField mul(const Expr& s, const VectorField& v);
/// Coordinate Lie bracket [U, V] = U o V - V o U.
VectorField lie_bracket(const VectorField& U, const VectorField& V);

/// One-form with coefficients over (dz, dzb, dv).
struct OneForm {
    std::array<Expr, 3> c;
    Expr pair(const VectorField& v) const;  // contraction
};

enum FrameSlot { FY = 0, FX = 1, FXb = 2 };

/// Adapted frame (Y, X, Xb) with Y = -[X, Xb].
struct Frame {
    VectorField Y, X, Xb;
    const VectorField& operator[](int i) const { return i == 0 ? Y : (i == 1 ? X : Xb); }
};

/// Dual coframe (j, l, lb): <coframe_a, frame_b> = delta_ab.
struct Coframe {
    OneForm j, l, lb;
    const OneForm& operator[](int i) const { return i == 0 ? j : (i == 1 ? l : lb); }
};

/// Structure function P with [X, Y] = P Y, plus a cache of iterated frame
/// derivatives. Subscript words apply left to right: word "XXb" is Xb(X(P)).
class StructureFunction {
public:
    StructureFunction(Frame fr, Expr P);

    const Expr& P() const { return P_; }
    const Frame& frame() const { return frame_; }

    /// Frame derivative of an arbitrary expression.
    Expr apply_frame(char dir, const Expr& f) const;  // dir in {'Y','X','B'} (B = Xb)
    /// Iterated derivative of P along a word over {X, Xb, Y}; cached.
    /// Word letters: 'X', 'B' (for Xb), 'Y'; leftmost letter applied first.
    Expr derivative(const std::string& word) const;
    /// Same for sigma(P).
    Expr derivative_conj(const std::string& word) const;

private:
    Expr derivative_of(const Expr& base, const std::string& word,
                       std::map<std::string, Expr>& cache) const;

    Frame frame_;
    Expr P_;
    Expr Pc_;  // sigma(P)
    mutable std::mutex mu_;
    mutable std::map<std::string, Expr> cache_;
    mutable std::map<std::string, Expr> cache_conj_;
};

Frame build_frame(const Hypersurface& M);
Coframe dual_coframe(const Frame& fr);
StructureFunction compute_structure_function(const Frame& fr);

struct StructureEquationReport {
    // residual 2-forms evaluated on the frame pairs (Y,X), (Y,Xb), (X,Xb)
    std::array<Expr, 3> dj_residual;
    std::array<Expr, 3> dl_residual;
    std::array<Expr, 3> dlb_residual;
    bool all_zero() const;
};

/// Checks dj = P j^l + sigma(P) j^lb + l^lb, dl = 0, dlb = 0.
StructureEquationReport verify_structure_equations(const Frame& fr, const Coframe& co,
                                                   const StructureFunction& sf);

/// d(omega)(U,V) = U(omega(V)) - V(omega(U)) - omega([U,V]).
Expr exterior_eval(const OneForm& w, const VectorField& U, const VectorField& V);

}  // namespace crjet
