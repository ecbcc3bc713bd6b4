#include <doctest.h>

#include <random>

#include "crjet/parse.hpp"

using namespace crjet;

namespace {

std::shared_ptr<Tower> tw() {
    static std::shared_ptr<Tower> t = Tower::standard();
    return t;
}

Expr P(const std::string& s) { return parse_expr(s, tw()); }

const char* kExample1 = "z*zb + z*atan(zb) + atan(z)*zb";

/// Random small expressions over (z, zb) for property tests.
struct Gen {
    std::mt19937_64 rng{20240817};
    std::shared_ptr<Tower> t = tw();

    Expr leaf() {
        switch (rng() % 4) {
            case 0: return Expr::variable(t, "z");
            case 1: return Expr::variable(t, "zb");
            case 2: return Expr::constant(t, GaussRat((long)(rng() % 7) - 3));
            default: return Expr::constant(t, GaussRat((long)(rng() % 5) - 2, 1 + (long)(rng() % 3)));
        }
    }

    Expr expr(int depth) {
        if (depth == 0) return leaf();
        switch (rng() % 6) {
            case 0: return expr(depth - 1) + expr(depth - 1);
            case 1: return expr(depth - 1) - expr(depth - 1);
            case 2: return expr(depth - 1) * expr(depth - 1);
            case 3: {
                Expr d = expr(depth - 1);
                if (d.is_zero()) d = Expr::one(t) + Expr::variable(t, "z") * Expr::variable(t, "z");
                return expr(depth - 1) / d;
            }
            case 4: return Expr::apply(AtomKind::Atan, expr(depth - 1));
            default: return leaf();
        }
    }
};

}  // namespace

TEST_CASE("parse literal products and rationals") {
    Expr e = P("z*zb");
    CHECK(e.str() == "z*zb");
    CHECK(P("1/(1+z^2)") == Expr::one(tw()) / (Expr::one(tw()) + P("z^2")));
    CHECK(P("2/4") == P("1/2"));
    CHECK(P("i*i") == P("-1"));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(P("z +* zb"), ParseError);
    CHECK_THROWS_AS(P("z + q"), ParseError);
    CHECK_THROWS_AS(P("z^(1/2)"), ParseError);
    CHECK_THROWS_AS(P("z^zb"), ParseError);
    try {
        P("z + q*w");
    } catch (const ParseError& pe) {
        CHECK(pe.position == 4);
    }
}

TEST_CASE("differentiate: atom rules and the worked surface") {
    Expr h = P(kExample1);
    Expr datan = P("atan(zb)").derivative("zb");
    CHECK(datan == P("1/(1+zb^2)"));

    Expr hzzb = h.derivative("z").derivative("zb");
    CHECK(hzzb == P("1 + 1/(1+z^2) + 1/(1+zb^2)"));

    Expr h4 = hzzb.derivative("z").derivative("zb");
    CHECK(h4.is_zero());

    // P_X display for rigid inputs, as a raw derivative identity:
    // d/dz (H_zzzb / H_zzb) = (H_zzzzb*H_zzb - H_zzzb*H_zzzb)/H_zzb^2
    Expr hzzzb = h.derivative("z").derivative("z").derivative("zb");
    Expr lhs = (hzzzb / hzzb).derivative("z");
    Expr rhs = (hzzzb.derivative("z") * hzzb - hzzzb * hzzzb) / (hzzb * hzzb);
    CHECK(lhs == rhs);
}

TEST_CASE("normalize cancels common factors") {
    CHECK(P("(z^2 - zb^2)/(z - zb)") == P("z + zb"));
    Expr e = P("1/(1+z^2) + z*atan(zb)");
    CHECK((e - e).is_zero());
    CHECK(P("(1+z^2) * (1/(1+z^2))") == Expr::one(tw()));
}

TEST_CASE("substitute") {
    Expr e = P("z*zb").substitute({{"zb", P("wp/2")}});
    CHECK(e == P("z*wp/2"));

    auto t2 = Tower::standard();
    t2->add_variable("t");
    Expr h = parse_expr(kExample1, t2);
    Expr hzz = h.derivative("z").derivative("z");
    Expr sub = hzz.substitute({{"zb", Expr::variable(t2, "t")}});
    CHECK(sub == parse_expr("-2*z*t/(1+z^2)^2", t2));
    // cross-check by differentiating the claimed antiderivative pattern
    CHECK(hzz == parse_expr("-2*z*zb/(1+z^2)^2", t2));

    CHECK(P("1/(1+z^2)").substitute({{"z", Expr::zero(tw())}}) == Expr::one(tw()));
    CHECK_THROWS_AS(P("1/(z+zb)").substitute({{"zb", P("-z")}}), SubstitutionPole);
}

TEST_CASE("substitution composes transcendental arguments") {
    Expr e = P("atan(zb)").substitute({{"zb", P("z*w")}});
    CHECK(e == P("atan(z*w)"));
    CHECK(P("atan(zb)").substitute({{"zb", Expr::zero(tw())}}).is_zero());
    CHECK(P("exp(z)").substitute({{"z", Expr::zero(tw())}}) == Expr::one(tw()));
}

TEST_CASE("sigma conjugation") {
    CHECK(P("i*z").sigma() == P("-i*zb"));
    Expr h = P(kExample1);
    CHECK(h.sigma() == h);
    CHECK(P("-2*z/(1+z^2)^2").sigma() == P("-2*zb/(1+zb^2)^2"));
    Expr e = P("(1+2*i)*z^2*atan(zb) + v");
    CHECK(e.sigma().sigma() == e);
    CHECK_THROWS_AS(P("wp").sigma(), std::domain_error);
}

TEST_CASE("is_zero decides tower identities") {
    Expr h = P(kExample1);
    CHECK(h.derivative("z").derivative("z").derivative("zb").derivative("zb").is_zero());
    CHECK_FALSE(h.derivative("z").derivative("z").derivative("zb").is_zero());
    CHECK((P("z") - P("z")).is_zero());
    // distinct atoms are algebraically independent by design
    CHECK_FALSE((P("exp(z)") * P("exp(-z)") - Expr::one(tw())).is_zero());
}

TEST_CASE("render and re-parse") {
    CHECK(P("z*zb").str() == "z*zb");
    CHECK(P("1/(1+z^2)").str(ExprFormat::Latex) == "\\frac{1}{1+z^{2}}");
    CHECK(Expr::zero(tw()).str(ExprFormat::Json) == "\"0\"");

    Gen g;
    for (int k = 0; k < 60; ++k) {
        Expr e = g.expr(3);
        CAPTURE(e.str());
        CHECK(parse_expr(e.str(), tw()) == e);
    }
}

TEST_CASE("ring axioms hold under canonical equality") {
    Gen g;
    for (int k = 0; k < 25; ++k) {
        Expr a = g.expr(2), b = g.expr(2), c = g.expr(2);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("derivatives commute and intertwine with sigma") {
    Gen g;
    for (int k = 0; k < 15; ++k) {
        Expr e = g.expr(3);
        CHECK(e.derivative("z").derivative("zb") == e.derivative("zb").derivative("z"));
        CHECK(e.sigma().derivative("zb") == e.derivative("z").sigma());
    }
}

TEST_CASE("powers, including negative exponents") {
    CHECK(P("(1+z)^3") == P("1 + 3*z + 3*z^2 + z^3"));
    CHECK(P("z^-2") == Expr::one(tw()) / P("z^2"));
    CHECK(P("(z+zb)^0") == Expr::one(tw()));
}
