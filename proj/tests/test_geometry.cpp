#include <doctest.h>

#include "crjet/frame.hpp"
#include "crjet/parse.hpp"

using namespace crjet;

namespace {

std::shared_ptr<Tower> tw() {
    static std::shared_ptr<Tower> t = Tower::standard();
    return t;
}
Expr P(const std::string& s) { return parse_expr(s, tw()); }

const char* kExample1 = "z*zb + z*atan(zb) + atan(z)*zb";

Hypersurface quadric() { return Hypersurface::rigid(P("z*zb")); }
Hypersurface example1() { return Hypersurface::rigid(P(kExample1)); }
Hypersurface hjy() { return Hypersurface::rigid(P("exp(z*zb) - 1"), Convention::Im); }

}  // namespace

TEST_CASE("hypersurface constructor validates input") {
    CHECK_THROWS_AS(Hypersurface::rigid(P("z^2")), DegenerateInput);          // not real
    CHECK_THROWS_AS(Hypersurface::rigid(P("z^2 + zb^2")), DegenerateInput);   // Levi-degenerate
    CHECK_THROWS_AS(Hypersurface::rigid(P("z^2*zb^2")), DegenerateInput);     // Levi-degenerate
    CHECK_THROWS_AS(Hypersurface::rigid(P("z*zb + 1")), DegenerateInput);     // misses origin
    CHECK_NOTHROW(hjy());
    CHECK_NOTHROW(Hypersurface::general(P("z*zb + v*z*zb")));
    CHECK_THROWS_AS(Hypersurface::general(P("i*v + z*zb")), DegenerateInput);  // not real
}

TEST_CASE("build_frame: rigid fields and bracket direction") {
    Frame fr = build_frame(quadric());
    CHECK(fr.X.c[0] == Expr::one(tw()));
    CHECK(fr.X.c[1].is_zero());
    CHECK(fr.X.c[2] == P("-i*zb"));
    CHECK(fr.Y.c[2] == P("-2*i"));
    CHECK(fr.X.sigma().c[0] == fr.Xb.c[0]);
    CHECK(fr.X.sigma().c[2] == fr.Xb.c[2]);

    Frame fe = build_frame(example1());
    CHECK(fe.Y.c[2] == P("-2*i*(1 + 1/(1+z^2) + 1/(1+zb^2))"));

    // general input with F_v = 0 reproduces the rigid frame
    Frame fg = build_frame(Hypersurface::general(P(kExample1)));
    CHECK(fg.X.c[2] == fe.X.c[2]);
    CHECK(fg.Y.c[2] == fe.Y.c[2]);
}

TEST_CASE("lie_bracket basics") {
    auto zero = Expr::zero(tw()), one = Expr::one(tw());
    VectorField dz{{one, zero, zero}}, dzb{{zero, one, zero}};
    CHECK(lie_bracket(dz, dzb).is_zero());

    Frame fr = build_frame(example1());
    VectorField b = lie_bracket(fr.X, fr.Xb);
    CHECK((b + fr.Y).is_zero());  // [X, Xb] = -Y by construction

    Frame fq = build_frame(quadric());
    CHECK(lie_bracket(fq.X, fq.Y).is_zero());
}

TEST_CASE("sigma(Y) = -Y for Hermitian-real input") {
    for (auto M : {quadric(), example1(), hjy()}) {
        Frame fr = build_frame(M);
        VectorField s = fr.Y.sigma();
        CHECK((s + fr.Y).is_zero());
    }
}

TEST_CASE("dual_coframe") {
    Frame fr = build_frame(quadric());
    Coframe co = dual_coframe(fr);
    CHECK(co.l.c[0] == Expr::one(tw()));
    CHECK(co.l.c[1].is_zero());
    CHECK(co.l.c[2].is_zero());
    CHECK(co.j.c[0] == P("-zb/2"));
    CHECK(co.j.c[1] == P("z/2"));
    CHECK(co.j.c[2] == P("i/2"));

    // duality holds exactly for a general input
    Frame fg = build_frame(Hypersurface::general(P("z*zb + v*z*zb")));
    Coframe cg = dual_coframe(fg);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Expr p = cg[a].pair(fg[b]);
            if (a == b) {
                CHECK(p == Expr::one(tw()));
            } else {
                CHECK(p.is_zero());
            }
        }
}

TEST_CASE("structure function P") {
    CHECK(compute_structure_function(build_frame(quadric())).P().is_zero());

    StructureFunction sf = compute_structure_function(build_frame(example1()));
    CHECK(sf.P() == P("(-2*z/(1+z^2)^2) / (1 + 1/(1+z^2) + 1/(1+zb^2))"));

    StructureFunction sh = compute_structure_function(build_frame(hjy()));
    CHECK(sh.P() == P("zb*(2 + z*zb)/(1 + z*zb)"));
}

TEST_CASE("frame derivatives of P") {
    Hypersurface M = example1();
    const Expr& h = M.defining();
    StructureFunction sf = compute_structure_function(build_frame(M));

    CHECK(sf.derivative("Y").is_zero());  // rigid: P_Y = P_v = 0

    Expr hzzb = h.derivative("z").derivative("zb");
    Expr hzzzb = h.derivative("z").derivative("z").derivative("zb");
    Expr hzzzzb = hzzzb.derivative("z");
    CHECK(sf.derivative("X") == (hzzzzb * hzzb - hzzzb * hzzzb) / (hzzb * hzzb));

    // Jacobi consequence P_{Xb} = sigma(P)_X, and holonomic commutation
    CHECK(sf.derivative("B") == sf.derivative_conj("X"));
    CHECK(sf.derivative("B") == sf.P().sigma().derivative("z"));
    CHECK(sf.derivative("XB") == sf.derivative("BX"));
}

TEST_CASE("P_Xb = sigma(P)_X also holds for general input") {
    StructureFunction sf =
        compute_structure_function(build_frame(Hypersurface::general(P("z*zb + v*z*zb"))));
    CHECK(sf.derivative("B") == sf.derivative_conj("X"));
}

TEST_CASE("structure equations") {
    for (auto M : {quadric(), example1()}) {
        Frame fr = build_frame(M);
        Coframe co = dual_coframe(fr);
        StructureFunction sf = compute_structure_function(fr);
        CHECK(verify_structure_equations(fr, co, sf).all_zero());
    }
    Frame fr = build_frame(Hypersurface::general(P("z*zb + v*z*zb")));
    Coframe co = dual_coframe(fr);
    StructureFunction sf = compute_structure_function(fr);
    CHECK(verify_structure_equations(fr, co, sf).all_zero());
}

TEST_CASE("bracket closure") {
    for (auto M : {example1(), hjy()}) {
        Frame fr = build_frame(M);
        StructureFunction sf = compute_structure_function(fr);
        // [X, Y] = P Y and [Xb, Y] = sigma(P) Y
        CHECK((lie_bracket(fr.X, fr.Y) + (-mul(sf.P(), fr.Y))).is_zero());
        CHECK((lie_bracket(fr.Xb, fr.Y) + (-mul(sf.P().sigma(), fr.Y))).is_zero());
    }
}
