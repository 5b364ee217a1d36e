#include "doctest.h"
#include "wfree/verify.hpp"

using namespace wfree;

namespace {

Rat q(long p, long d = 1) {
    Rat r(p, d);
    r.canonicalize();
    return r;
}

std::string failures(const Report& r) {
    std::string s;
    for (auto& i : r.items)
        if (!i.equal) s += i.id + ": expected " + i.expected + " got " + i.computed + "\n";
    return s;
}

}  // namespace

TEST_CASE("dual level") {
    CHECK(dual_level({PairKind::SL, 2}, q(-14, 5)) == 3);
    CHECK(dual_level({PairKind::SO, 2}, q(-5, 2)) == -1);
    CHECK_THROWS_AS(dual_level({PairKind::SL, 2}, q(-3)), Error);
    for (auto k : sample_levels(3, 6))
        for (auto kind : {PairKind::SL, PairKind::SO}) {
            PairTag p{kind, 3};
            Rat k2 = dual_level(p, k);
            CHECK(lacity(kind) * (k + dual_coxeter1(p)) * (k2 + dual_coxeter2(p)) == 1);
            CHECK(dual_level_inverse(p, k2) == k);
        }
}

TEST_CASE("degeneracy constants and admissible levels") {
    CHECK(degeneracy_constants({PairKind::SL, 2}) == std::pair<Rat, Rat>(q(-3, 2), q(-4, 3)));
    CHECK(degeneracy_constants({PairKind::SO, 2}) == std::pair<Rat, Rat>(q(-2), q(-3, 2)));
    CHECK(degeneracy_constants({PairKind::SL, 1}) == std::pair<Rat, Rat>(q(0), q(-1, 2)));

    auto a = admissible_levels(PairKind::SL, 2, 3);
    CHECK(a.valid);
    CHECK(a.k == q(-3, 2));
    auto b = admissible_levels(PairKind::SO, 2, 5, 4);
    CHECK(b.valid);
    CHECK(b.k == q(-3) + q(5, 4));
    CHECK_FALSE(admissible_levels(PairKind::SL, 2, 4).valid);
    CHECK(is_admissible({PairKind::SL, 2}, q(-1, 2)));
    CHECK(is_admissible({PairKind::SO, 2}, q(-3) + q(5, 4)));
    CHECK_FALSE(is_admissible({PairKind::SL, 2}, q(-14, 5)));
    CHECK_FALSE(is_admissible({PairKind::SL, 2}, q(-2)));
    CHECK(excluded_set({PairKind::SL, 2}, 1, q(-3)) == "K1");
    CHECK(excluded_set({PairKind::SL, 2}, 1, q(-3, 2)) == "S1");
}

TEST_CASE("delta formula") {
    CHECK(delta_conformal(1, 1, 2, 0, DeltaSign::Minus) == q(7, 8));
    CHECK(delta_conformal(0, 0, 2, 0, DeltaSign::Plus) == 0);
    CHECK(delta_conformal(3, 0, q(5, 3), 7, DeltaSign::Plus) == delta_conformal(3, 0, q(5, 3), -2, DeltaSign::Plus));
    CHECK_THROWS_AS(delta_conformal(1, 1, 0, 0, DeltaSign::Minus), Error);
}

TEST_CASE("coweights") {
    CHECK(omega1({PairKind::SL, 2}) == std::vector<Rat>{q(2, 3), q(1, 3)});
    CHECK(omega1({PairKind::SO, 3}) == std::vector<Rat>{1, 1, 1});
    CHECK(omega0({PairKind::SL, 1}) == std::vector<Rat>{-2, -1});
}

TEST_CASE("wakimoto realization") {
    RatFun t = RatFun::t();
    auto w = gl11_wakimoto(t, t.pow(7));
    CHECK(w.field("E11").str() == "-:c b: + chi1");
    auto S = w.screenings[0].field;
    FieldExpr alpha = FieldExpr::lin({{"chi1", RatFun(1)}, {"chi2", RatFun(1)}});
    CHECK(current_gram(*w.sys, {alpha})[0][0].is_zero());
    FockState b1 = normal_form(*w.sys, w.sys->zero_momentum(), {Mode{w.sys->index("b"), 1}}).state;
    CHECK(l0_apply(*w.sys, w.conformal, b1) == single(b1));
    CHECK_THROWS_AS(gl11_wakimoto(RatFun(0), RatFun(1)), Error);
}

TEST_CASE("catalog shapes") {
    auto m = subregular_realization({PairKind::SL, 2}, RatFun(q(1, 7)), Form::Miura);
    CHECK(m.screenings.size() == 2);
    CHECK(m.sys->size() == 4);
    auto s = principal_super_realization({PairKind::SL, 2}, RatFun(q(1, 7)), Form::Miura);
    CHECK(s.screenings.size() == 3);
    auto b = subregular_realization({PairKind::SL, 3}, RatFun(q(2, 7)), Form::Bosonized);
    CHECK(b.screenings.size() == 4);

    RatFun t = RatFun::t();
    auto c = subregular_realization({PairKind::SL, 2}, t, Form::Coset);
    Matrix g(3, std::vector<RatFun>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g[i][j] = c.sys->gram(i, j);
    CHECK(g == bordermatrix({PairKind::SL, 2}, t + RatFun(3)));
    auto so = subregular_realization({PairKind::SO, 2}, t, Form::Coset);
    CHECK(so.sys->gram(2, 2) == RatFun(4) * (t + RatFun(3)));
    auto sc = principal_super_realization({PairKind::SL, 2}, t, Form::Coset);
    CHECK(sc.sys->gram(0, 0) == RatFun(1));

    CHECK_THROWS_AS(subregular_realization({PairKind::SL, 2}, RatFun(-3), Form::Miura), Error);
    CHECK_THROWS_AS(realization_by_key("nonsense", RatFun(1)), Error);
    CHECK(realization_by_key("super-osp:2:miura", RatFun(q(3, 11))).key == "super-osp:2:miura");
}

TEST_CASE("every catalog entry is a homomorphism annihilated by its screenings") {
    for (auto& key : catalog_keys())
        for (auto k : sample_levels(11, 2)) {
            CAPTURE(key);
            CAPTURE(to_string(k));
            Realization r = realization_by_key(key, RatFun(k), RatFun(k + q(1, 3)));
            Report h = check_homomorphism(r);
            CHECK_MESSAGE(h.pass(), failures(h));
            Report a = check_annihilation(r);
            CHECK_MESSAGE(a.pass(), failures(a));
        }
}

TEST_CASE("symbolic wakimoto homomorphism") {
    RatFun t = RatFun::t();
    Report h = check_homomorphism(gl11_wakimoto(t, t.pow(7)));
    CHECK(h.items.size() == 16);
    CHECK_MESSAGE(h.pass(), failures(h));
}

TEST_CASE("screening covariance") {
    for (auto& key : {"subregular-sl:2:miura", "subregular-sl:3:miura", "super-sl:2:miura", "super-sl:3:miura"}) {
        CAPTURE(key);
        Realization r = realization_by_key(key, RatFun(q(5, 13)));
        Report c = check_screening_covariance(r);
        CHECK_MESSAGE(c.pass(), failures(c));
        CHECK_FALSE(check_screening_covariance(perturb_companion(r)).pass());
    }
}

TEST_CASE("distinguished norms") {
    for (int n = 1; n <= 3; ++n)
        for (auto kind : {PairKind::SL, PairKind::SO}) {
            Report r = norm_degeneracy({kind, n});
            CHECK_MESSAGE(r.pass(), failures(r));
        }
}

TEST_CASE("kazama-suzuki fields") {
    RatFun t = RatFun::t();
    for (int n = 2; n <= 3; ++n)
        for (auto kind : {PairKind::SL, PairKind::SO}) {
            Report r = check_ks({kind, n}, t);
            CHECK_MESSAGE(r.pass(), failures(r));
            CHECK_FALSE(check_ks({kind, n}, t, true).pass());
        }
    Report num = check_ks({PairKind::SL, 2}, RatFun(3));
    CHECK(num.pass());
}

TEST_CASE("gram duality") {
    for (int n = 2; n <= 3; ++n)
        for (auto kind : {PairKind::SL, PairKind::SO}) {
            Report r = check_gram_duality({kind, n});
            CHECK_MESSAGE(r.pass(), failures(r));
        }
}
