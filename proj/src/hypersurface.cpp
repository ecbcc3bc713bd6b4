#include "crjet/hypersurface.hpp"

#include "crjet/frame.hpp"

namespace crjet {

namespace {

void check_reality(const Expr& f, const char* what) {
    if (f.sigma() != f)
        throw DegenerateInput(std::string(what) + " is not Hermitian-real (sigma(f) != f)");
}

void check_origin(const Expr& f, const std::vector<std::string>& vars) {
    if (!f.at_origin(vars).is_zero())
        throw DegenerateInput("hypersurface does not pass through the origin");
}

}  // namespace

Hypersurface Hypersurface::rigid(const Expr& H, Convention conv) {
    // Im w = H with w = i w~ becomes Re w~ = H; the defining function is reused.
    (void)conv;
    auto tw = H.tower();
    if (H.depends_on(tw->find_variable("v")) || H.depends_on(tw->find_variable("w")))
        throw DegenerateInput("rigid defining function must depend on (z, zb) only");
    check_reality(H, "H");
    check_origin(H, {"z", "zb"});
    Expr levi = H.derivative("z").derivative("zb");
    if (levi.at_origin({"z", "zb"}).is_zero())
        throw DegenerateInput("Levi-degenerate at 0: H_{z zb}(0,0) = 0");
    return Hypersurface(H, true);
}

Hypersurface Hypersurface::general(const Expr& F_in, Convention conv) {
    auto tw = F_in.tower();
    Expr F = F_in;
    if (conv == Convention::Im) {
        // Im w = G(z, zb, Re w); with w = i w~: Re w~ = G(z, zb, -Im w~).
        F = F.substitute({{"v", -Expr::variable(tw, "v")}});
    }
    if (F.depends_on(tw->find_variable("w")))
        throw DegenerateInput("general defining function must depend on (z, zb, v) only");
    check_reality(F, "F");
    check_origin(F, {"z", "zb", "v"});
    // 1 + i F_v must be invertible at 0 for the tangential frame.
    Expr unit = Expr::one(tw) + F.derivative("v") * GaussRat::i();
    if (unit.at_origin({"z", "zb", "v"}).is_zero())
        throw DegenerateInput("1 + i F_v vanishes at 0");
    Hypersurface M(F, false);
    Frame fr = build_frame(M);  // throws on Levi degeneracy
    (void)fr;
    return M;
}

Expr Hypersurface::levi_factor() const {
    if (rigid_) return f_.derivative("z").derivative("zb");
    Frame fr = build_frame(*this);
    return fr.Y.c[2] / Expr::constant(tower(), GaussRat(mpq_class(0), mpq_class(-2)));
}

}  // namespace crjet
