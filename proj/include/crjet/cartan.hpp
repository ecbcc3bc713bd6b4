#pragma once

#include "crjet/frame.hpp"

namespace crjet {

/// 3x3 matrix of Exprs; curvature and connection values live in sl(3,C).
class SL3 {
public:
    explicit SL3(const std::shared_ptr<Tower>& tw);
    static SL3 zero(const std::shared_ptr<Tower>& tw) { return SL3(tw); }
    /// Fixed basis of sl(3,C): 0:E21 (e_X), 1:E32 (e_Xb), 2:E31 (e_Y),
    /// 3:E12, 4:E23, 5:E13, 6:diag(1,-1,0), 7:diag(0,1,-1).
    static SL3 basis(const std::shared_ptr<Tower>& tw, int idx);
    static constexpr int kBasisSize = 8;

    Expr& at(int i, int j) { return m_[i][j]; }
    const Expr& at(int i, int j) const { return m_[i][j]; }
    const std::shared_ptr<Tower>& tower() const { return tw_; }

    bool is_zero() const;
    Expr trace() const { return m_[0][0] + m_[1][1] + m_[2][2]; }
    bool operator==(const SL3& o) const;

    SL3 operator+(const SL3& o) const;
    SL3 operator-(const SL3& o) const;
    SL3 operator-() const;
    SL3 operator*(const SL3& o) const;  // matrix product
    SL3 scaled(const Expr& s) const;
    SL3 scaled(const GaussRat& s) const;

    /// Entry-wise application of a vector field.
    SL3 applied(const VectorField& V) const;

    /// Coordinates in the fixed basis; requires zero trace.
    std::array<Expr, kBasisSize> coords() const;
    /// Strictly-lower-triangular (complement) coordinates (e_X, e_Xb, e_Y).
    std::array<Expr, 3> complement_coords() const;

    bool is_upper_triangular() const;
    Expr det() const;
    SL3 adjugate() const;

private:
    std::shared_ptr<Tower> tw_;
    std::array<std::array<Expr, 3>, 3> m_;
};

SL3 bracket(const SL3& a, const SL3& b);

/// Pullback connection components: s*omega = j Mj + l Ml + lb Mlb.
struct ConnectionForm {
    SL3 Mj, Ml, Mlb;
};

/// Curvature values on complement basis pairs; antisymmetric, so three slots.
struct PairSlots {
    SL3 XY;   // kappa(e_X, e_Y)
    SL3 XbY;  // kappa(e_Xb, e_Y)
    SL3 XXb;  // kappa(e_X, e_Xb)

    PairSlots(const std::shared_ptr<Tower>& tw) : XY(tw), XbY(tw), XXb(tw) {}
    /// Evaluate on arbitrary complement vectors given by coordinates.
    SL3 eval(const std::array<Expr, 3>& u, const std::array<Expr, 3>& v) const;
    bool is_zero() const { return XY.is_zero() && XbY.is_zero() && XXb.is_zero(); }
};

struct CurvatureData {
    PairSlots slots;
    Expr I1() const { return slots.XY.at(0, 1); }
    Expr I2() const { return slots.XY.at(0, 2); }
    Expr I3() const { return slots.XbY.at(1, 2); }
    Expr I4() const { return slots.XbY.at(0, 2); }
    /// The printed sparse layout: kappa(e_X,e_Xb)=0 and only the four I-slots.
    bool sparsity_ok() const;
};

/// Invariant of order k: values on (basis of sl3)^k x (complement pair).
class InvariantTensor {
public:
    InvariantTensor(int order, const std::shared_ptr<Tower>& tw);
    static InvariantTensor from_curvature(const CurvatureData& c);

    int order() const { return order_; }
    size_t block_count() const { return slots_.size(); }
    /// Multi-index (d_1..d_k), each in 0..7; d_1 is the outermost derivative.
    PairSlots& slot(const std::vector<int>& dirs);
    const PairSlots& slot(const std::vector<int>& dirs) const;
    const std::vector<PairSlots>& blocks() const { return slots_; }
    PairSlots& block(size_t i) { return slots_[i]; }
    const PairSlots& block(size_t i) const { return slots_[i]; }

    bool is_zero() const;
    /// True when every entry of every slot is free of transcendental atoms.
    bool is_algebraic_form() const;

    const std::shared_ptr<Tower>& tower() const { return tw_; }

private:
    int order_;
    std::shared_ptr<Tower> tw_;
    std::vector<PairSlots> slots_;
};

/// The pullback of the canonical connection in terms of P and its frame
/// derivatives (all three component matrices are traceless by construction).
ConnectionForm assemble_connection(const StructureFunction& sf);

/// Curvature from the printed formulas: I1, I3 closed forms, I2 = X(I1),
/// I4 = Xb(I3), assembled in the sparse layout.
CurvatureData curvature_closed_form(const StructureFunction& sf);

/// Curvature from kappa(U,V) = d omega(U,V) + [omega(U), omega(V)] evaluated
/// through the structure equations; works in any gauge of the connection.
CurvatureData curvature_structural(const ConnectionForm& conn, const StructureFunction& sf);

/// Natural action of b (in the Borel subalgebra, extended to all of sl3 by
/// the same formula) on an invariant tensor.
InvariantTensor algebra_action(const SL3& b, const InvariantTensor& T);
/// Spec-facing wrapper: requires b upper-triangular traceless.
InvariantTensor borel_action(const SL3& b, const InvariantTensor& T);

/// Fundamental derivative in one direction (complement part x,xb,y plus
/// Borel part); returns a tensor of the same shape, the direction-evaluated
/// slice of the order+1 invariant.
InvariantTensor fundamental_derivative(const InvariantTensor& T, const SL3& direction,
                                       const ConnectionForm& conn, const StructureFunction& sf);
/// All eight basis directions at once: the full order+1 invariant.
InvariantTensor fundamental_derivative_full(const InvariantTensor& T, const ConnectionForm& conn,
                                            const StructureFunction& sf);
/// Iterated tensors (kappa, D kappa, ..., D^depth kappa).
std::vector<InvariantTensor> derived_invariants(const CurvatureData& c, const ConnectionForm& conn,
                                                const StructureFunction& sf, int depth);

/// Change of section: Ad(phi^-1) s*omega + phi^-1 d phi, with phi
/// upper-triangular of unit determinant.
ConnectionForm gauge_transform(const ConnectionForm& conn, const SL3& phi,
                               const StructureFunction& sf);

struct RealFormReport {
    bool jacobi;    // P_Xb = sigma(P)_X
    bool i3_is_conj_i1;
    bool i4_is_conj_i2;
    bool all() const { return jacobi && i3_is_conj_i1 && i4_is_conj_i2; }
};

RealFormReport real_form_check(const StructureFunction& sf, const CurvatureData& c);

}  // namespace crjet
