#pragma once

#include "crjet/expr.hpp"

namespace crjet {

enum class Convention { Re, Im };

/// Levi-nondegenerate real hypersurface in C^2 through the origin.
/// Rigid: Re w = H(z, zb). General: Re w = F(z, zb, v) with v = Im w.
/// Im-convention inputs are rewritten to the Re form (w -> i w) on entry.
class Hypersurface {
public:
    static Hypersurface rigid(const Expr& H, Convention conv = Convention::Re);
    static Hypersurface general(const Expr& F, Convention conv = Convention::Re);

    bool is_rigid() const { return rigid_; }
    /// Defining function: H(z, zb) or F(z, zb, v).
    const Expr& defining() const { return f_; }
    const std::shared_ptr<Tower>& tower() const { return f_.tower(); }

    /// Levi factor H_{z zb} (rigid); for general input the bracket coefficient
    /// of Y (see frame); both are checked nonzero at 0 on construction.
    Expr levi_factor() const;

private:
    Hypersurface(Expr f, bool rigid) : f_(std::move(f)), rigid_(rigid) {}
    Expr f_;
    bool rigid_;
};

}  // namespace crjet
