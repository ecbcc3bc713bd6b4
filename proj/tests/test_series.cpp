#include <doctest.h>

#include <random>

#include "crjet/parse.hpp"
#include "crjet/series.hpp"

using namespace crjet;

namespace {

std::shared_ptr<Tower> tw() {
    static std::shared_ptr<Tower> t = Tower::standard();
    return t;
}
Expr P(const std::string& s) { return parse_expr(s, tw()); }

const char* kExample1 = "z*zb + z*atan(zb) + atan(z)*zb";

Series from_poly(const SeriesVars& v, int order, const std::string& text) {
    return expand(P(text), v, order);
}

}  // namespace

TEST_CASE("expand basic series") {
    auto vz = series_vars({"z"});
    Series geo = expand(P("1/(1-z)"), vz, 4);
    CHECK(geo == from_poly(vz, 4, "1 + z + z^2 + z^3"));

    auto vzb = series_vars({"zb"});
    Series at = expand(P("atan(zb)"), vzb, 6);
    CHECK(at == from_poly(vzb, 6, "zb - zb^3/3 + zb^5/5"));

    auto vzzb = series_vars({"z", "zb"});
    Series h = expand(P(kExample1), vzzb, 4);
    CHECK(h.coeff({1, 1}) == GaussRat(3));
    // independent oracle: coefficients from iterated symbolic differentiation
    TSeries<Expr> hp = expand_param(P(kExample1), vzzb, 4);
    for (auto& [e, c] : h.terms()) {
        CHECK(hp.coeff(e).is_constant());
        CHECK(hp.coeff(e).constant_value() == c);
    }
    CHECK(hp.terms().size() == h.terms().size());
}

TEST_CASE("expand rejects irregular points") {
    auto vz = series_vars({"z"});
    CHECK_THROWS_AS(expand(P("1/z"), vz, 4), ExpansionError);
    CHECK_THROWS_AS(expand(P("log(z)"), vz, 4), ExpansionError);
    CHECK(expand(P("log(1+z)"), vz, 4) == from_poly(vz, 4, "z - z^2/2 + z^3/3"));
    CHECK(expand(P("sqrt(1+z)"), vz, 4) == from_poly(vz, 4, "1 + z/2 - z^2/8 + z^3/16"));
    // zb is a parameter not declared as a series variable
    CHECK_THROWS_AS(expand(P("z*zb"), vz, 4), ExpansionError);
}

TEST_CASE("expand is a ring homomorphism mod degree") {
    auto v = series_vars({"z", "zb"});
    std::mt19937_64 rng(7);
    auto small = [&]() {
        switch (rng() % 5) {
            case 0: return P("z");
            case 1: return P("zb");
            case 2: return P("1/(1+z^2)");
            case 3: return P("atan(zb)");
            default: return P("1 - z*zb/2");
        }
    };
    for (int k = 0; k < 10; ++k) {
        Expr a = small(), b = small();
        CHECK(expand(a * b, v, 6) == expand(a, v, 6) * expand(b, v, 6));
        CHECK(expand(a + b, v, 6) == expand(a, v, 6) + expand(b, v, 6));
    }
}

TEST_CASE("invert_series") {
    auto vt = series_vars({"t"});
    auto t = series_var(vt, 8, "t");

    Series f = t.mul_scalar(GaussRat(2));
    CHECK(invert_series(f, 8) == t.mul_scalar(GaussRat(1, 2)));

    Series f2 = t + t * t;
    Series g2 = invert_series(f2, 5);
    Series expect = series_zero(vt, 5);
    expect.add_term({1}, GaussRat(1));
    expect.add_term({2}, GaussRat(-1));
    expect.add_term({3}, GaussRat(2));
    expect.add_term({4}, GaussRat(-5));
    CHECK(g2 == expect);

    CHECK_THROWS_AS(invert_series(t * t, 5), DegenerateInput);
}

TEST_CASE("invert_series round-trips on random unit series") {
    auto vt = series_vars({"t"});
    auto t = series_var(vt, 9, "t");
    std::mt19937_64 rng(11);
    for (int k = 0; k < 8; ++k) {
        Series f = t;
        for (int d = 2; d < 9; ++d) {
            long c = (long)(rng() % 7) - 3;
            if (c != 0) {
                Series m = series_const(vt, 9, GaussRat(c));
                f = f + t.pow(d).mul_scalar(GaussRat(c));
            }
        }
        Series g = invert_series(f, 9);
        CHECK(f.compose({g}) == t);
        CHECK(g.compose({f}) == t);
    }
}

TEST_CASE("solve_implicit on the model surface") {
    // w = 2 H(z, ab) - bb, w' = 2 H_z(z, ab) for H = z*zb
    auto v = series_vars({"z", "w", "wp", "ab", "bb"});
    int ord = 6;
    Series eq1 = from_poly(v, ord, "2*z") * series_var(v, ord, "ab") - series_var(v, ord, "bb") -
                 series_var(v, ord, "w");
    Series eq2 = series_var(v, ord, "ab").mul_scalar(GaussRat(2)) - series_var(v, ord, "wp");
    auto sol = solve_implicit({eq1, eq2}, {"ab", "bb"}, ord);

    auto pv = series_vars({"z", "w", "wp"});
    Series a_expect = series_var(pv, ord, "wp").mul_scalar(GaussRat(1, 2));
    Series b_expect = series_var(pv, ord, "z") * series_var(pv, ord, "wp") - series_var(pv, ord, "w");
    CHECK(sol[0] == a_expect);
    CHECK(sol[1] == b_expect);
}

TEST_CASE("solve_implicit beyond linear and residual stability") {
    // w' = 2 H_z(z, ab) for H = z*zb + z^2*zb^2
    auto mk = [&](int ord) {
        auto v = series_vars({"z", "wp", "ab"});
        Series ab = series_var(v, ord, "ab");
        Series z = series_var(v, ord, "z");
        Series eq = ab.mul_scalar(GaussRat(2)) + z * ab * ab * series_const(v, ord, GaussRat(4)) -
                    series_var(v, ord, "wp");
        return solve_implicit({eq}, {"ab"}, ord)[0];
    };
    Series a4 = mk(4);
    auto pv = a4.vars_ptr();
    CHECK(a4.coeff({0, 1}) == GaussRat(1, 2));
    CHECK(a4.coeff({1, 2}) == GaussRat(-1, 2));
    Series a7 = mk(8);
    CHECK(a7.coeff({1, 2}) == GaussRat(-1, 2));
    CHECK(a7.coeff({2, 3}) == GaussRat(1));
    CHECK(a7.coeff({3, 4}) == GaussRat(-5, 2));
    // raising the order must not disturb low-order coefficients
    for (auto& [e, c] : a4.terms()) CHECK(a7.coeff(e) == c);
}

TEST_CASE("solve_implicit reports Levi degeneracy") {
    // degenerate model: H = z^2 gives equations with no ab dependence
    auto v = series_vars({"z", "w", "wp", "ab", "bb"});
    Series eq1 = from_poly(v, 4, "2*z^2") - series_var(v, 4, "bb") - series_var(v, 4, "w");
    Series eq2 = from_poly(v, 4, "4*z") - series_var(v, 4, "wp");
    CHECK_THROWS_AS(solve_implicit({eq1, eq2}, {"ab", "bb"}, 4), DegenerateInput);
}

TEST_CASE("expand_param keeps parameters symbolic") {
    auto vzb = series_vars({"zb"});
    TSeries<Expr> s = expand_param(P("z*zb + z*atan(zb)"), vzb, 4);
    CHECK(s.coeff({1}) == P("2*z"));
    CHECK(s.coeff({3}) == P("-z/3"));
    TSeries<Expr> hz = expand_param(P(kExample1).derivative("z"), vzb, 3);
    CHECK(hz.coeff({0}).is_zero());
    CHECK(hz.coeff({1}) == P("2 + 1/(1+z^2)"));
    TSeries<Expr> hzb = expand_param(P(kExample1).derivative("zb"), vzb, 3);
    CHECK(hzb.coeff({0}) == P("2*z + atan(z)"));
}
