#include <random>

#include "doctest.h"
#include "wfree/field.hpp"

using namespace wfree;

namespace {

RatFun Q(long p, long q = 1) { return RatFun(Rat(p, q)); }

SystemHandle gl11(const RatFun& k1, const RatFun& k2) {
    std::vector<Species> sp{Species::fermion("b", 1, "c"), Species::fermion("c", 0, "b"), Species::heisenberg("chi1"),
                            Species::heisenberg("chi2")};
    PairingTable p{{"chi1", "chi2"},
                   {{k1 + k2 - Q(1), Q(1) - k2}, {Q(1) - k2, k2 - k1 - Q(1)}}};
    return register_system(sp, p);
}

SystemHandle lattice_xy() {
    std::vector<Species> sp{Species::heisenberg("x"), Species::heisenberg("y")};
    return register_system(sp, PairingTable{{"x", "y"}, {{Q(1), Q(0)}, {Q(0), Q(-1)}}}, {"x", "y"});
}

FieldExpr G(const char* n) { return FieldExpr::gen(n); }

FockState st(const System& sys, std::vector<std::pair<const char*, int>> modes) {
    std::vector<Mode> raw;
    for (auto& [n, d] : modes) raw.push_back({sys.index(n), d});
    return normal_form(sys, sys.zero_momentum(), raw).state;
}

}  // namespace

TEST_CASE("generator modes") {
    RatFun t = RatFun::t();
    auto sys = gl11(t, Q(0));
    auto r = mode_apply(*sys, G("chi1"), 1, st(*sys, {{"chi1", 1}}));
    CHECK(r == single(vacuum(*sys), t - Q(1)));
    auto s2 = gl11(Q(3), Q(5));
    CHECK(mode_apply(*s2, G("chi1"), 1, st(*s2, {{"chi1", 1}})) == single(vacuum(*s2), Q(7)));
    CHECK(mode_apply(*sys, G("b"), 0, st(*sys, {{"c", 1}})) == single(vacuum(*sys)));
    CHECK(mode_apply(*sys, G("c"), 0, st(*sys, {{"b", 1}})) == single(vacuum(*sys)));
}

TEST_CASE("states of fields") {
    auto sys = gl11(RatFun::t(), Q(0));
    CHECK(state_of_field(*sys, G("b")) == single(st(*sys, {{"b", 1}})));
    CHECK(state_of_field(*sys, FieldExpr::nord(G("b"), G("c"))) == single(st(*sys, {{"b", 1}, {"c", 1}})));
    CHECK(state_of_field(*sys, FieldExpr::deriv(G("chi1"))) == single(st(*sys, {{"chi1", 2}})));
}

TEST_CASE("bc and affine ope") {
    RatFun k1 = RatFun::t();
    auto sys = gl11(k1, Q(1, 3));
    OPE o = ope_singular(*sys, G("b"), G("c"));
    REQUIRE(o.size() == 1);
    CHECK(o[1] == single(vacuum(*sys)));
    CHECK(ope_singular(*sys, G("b"), G("b")).empty());

    FieldExpr e21 = FieldExpr::nord(G("c"), G("chi1") + G("chi2")) + k1 * FieldExpr::deriv(G("c"));
    OPE r = ope_singular(*sys, G("b"), e21);
    REQUIRE(r.size() == 2);
    CHECK(r[1] == state_of_field(*sys, G("chi1") + G("chi2")));
    CHECK(r[2] == single(vacuum(*sys), k1));
}

TEST_CASE("conformal weight of b") {
    RatFun k1 = Q(2), k2 = Q(0);
    auto sys = gl11(k1, k2);
    FieldExpr chi = G("chi1") + G("chi2");
    FieldExpr T = FieldExpr::nord(FieldExpr::deriv(G("c")), G("b")) +
                  (Q(1) - k2) / (Q(2) * k1 * k1) * FieldExpr::nord(chi, chi) +
                  Q(1) / (Q(2) * k1) *
                      (FieldExpr::nord(G("chi1"), G("chi1")) - FieldExpr::nord(G("chi2"), G("chi2")) +
                       FieldExpr::deriv(chi));
    FockState b1 = st(*sys, {{"b", 1}});
    CHECK(l0_apply(*sys, T, b1) == single(b1));
    CHECK(l0_apply(*sys, T, vacuum(*sys)).empty());
}

TEST_CASE("lattice exponentials") {
    auto sys = lattice_xy();
    FieldExpr ex = FieldExpr::expo(Q(1), {{"x", Q(1)}});
    CHECK(mode_apply(*sys, ex, 0, vacuum(*sys)).empty());
    FieldExpr beta = FieldExpr::expo(Q(1), {{"x", Q(1)}, {"y", Q(1)}});
    FieldExpr gamma = -FieldExpr::nord(G("x"), FieldExpr::expo(Q(-1), {{"x", Q(1)}, {"y", Q(1)}}));
    OPE bg = ope_singular(*sys, beta, gamma);
    REQUIRE(bg.size() == 1);
    CHECK(bg[1] == single(vacuum(*sys)));
    CHECK(ope_singular(*sys, beta, beta).empty());
    CHECK(ope_singular(*sys, gamma, gamma).empty());

    std::vector<Species> sp{Species::heisenberg("phi")};
    auto v = register_system(sp, PairingTable{{"phi"}, {{Q(1)}}}, {"phi"});
    FieldExpr b = FieldExpr::expo(Q(1), {{"phi", Q(1)}});
    FieldExpr c = FieldExpr::expo(Q(-1), {{"phi", Q(1)}});
    CHECK(parity_of(*v, b) == 1);
    OPE bc = ope_singular(*v, b, c);
    REQUIRE(bc.size() == 1);
    CHECK(bc[1] == single(vacuum(*v)));
    OPE cb = ope_singular(*v, c, b);
    REQUIRE(cb.size() == 1);
    CHECK(cb[1] == single(vacuum(*v)));
    CHECK(ope_singular(*v, b, b).empty());
}

TEST_CASE("non-integral exponent") {
    std::vector<Species> sp{Species::heisenberg("a")};
    auto sys = register_system(sp, PairingTable{{"a"}, {{Q(7)}}});
    FieldExpr e = FieldExpr::expo(Q(-2, 7), {{"a", Q(1)}});
    Momentum mu = sys->zero_momentum();
    mu.eig[0] = Q(1, 2);
    try {
        mode_apply(*sys, e, 0, FockState{mu, {}});
        FAIL("expected failure");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::NonIntegralExponent);
    }
}

TEST_CASE("current gram") {
    auto sys = lattice_xy();
    Matrix g = current_gram(*sys, {G("x"), G("y")});
    CHECK(g == Matrix{{Q(1), Q(0)}, {Q(0), Q(-1)}});
}

TEST_CASE("derivative rule on random states") {
    auto sys = gl11(Q(7, 2), Q(1, 3));
    FieldExpr a = FieldExpr::nord(G("c"), G("chi1")) + FieldExpr::nord(G("chi2"), G("c"));
    FieldExpr da = FieldExpr::deriv(a);
    auto ca = compile(*sys, a), cda = compile(*sys, da);
    for (int d = 0; d <= 3; ++d)
        for (auto& s : enumerate_basis(*sys, sys->zero_momentum(), d))
            for (long n = -2; n <= 4; ++n)
                CHECK(mode_apply(*sys, cda, n, s) == mode_apply(*sys, ca, n - 1, s).scaled(Q(-n)));
}

TEST_CASE("skew symmetry of generator opes") {
    auto sys = gl11(Q(7, 2), Q(1, 3));
    for (const char* a : {"b", "c", "chi1", "chi2"})
        for (const char* b : {"b", "c", "chi1", "chi2"}) {
            OPE ab = ope_singular(*sys, G(a), G(b));
            OPE ba = ope_singular(*sys, G(b), G(a));
            int sign = (sys->is_odd(sys->index(a)) && sys->is_odd(sys->index(b))) ? -1 : 1;
            CHECK(ab.size() == ba.size());
            for (auto& [p, v] : ab) CHECK(ba[p] == v.scaled(Q(sign * ((p % 2) ? -1 : 1))));
        }
}

TEST_CASE("syntax round trip") {
    for (const char* s : {":b exp(-1/(t+3)*int(a0)):", "d^2(x) + 3*:x y: - y", "exp(1*int(x+y);shift=x:1,y:-1)",
                          ":c (chi1 + chi2): + (t)*d(c)", "-:(:a b:) c:", "exp((1/2)*int((1/3)*a-b))"}) {
        FieldExpr f = parse_field(s);
        CHECK(parse_field(f.str()).str() == f.str());
    }
    FieldExpr e = parse_field(":b exp(-1/(t+3)*int(a0)):");
    CHECK(e.tag() == FieldExpr::Tag::NormOrd);
    CHECK(e.node().kids[1].node().coef == RatFun(-1) / (RatFun::t() + Q(3)));
    CHECK_THROWS_AS(parse_field(":b:"), Error);
    CHECK_THROWS_AS(parse_field("b +"), Error);
}
