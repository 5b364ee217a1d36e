#include "doctest.h"
#include "wfree/fock.hpp"

using namespace wfree;

namespace {

SystemHandle bc_heis2() {
    std::vector<Species> sp{Species::fermion("b", 1, "c"), Species::fermion("c", 0, "b"), Species::heisenberg("x1"),
                            Species::heisenberg("x2")};
    PairingTable p{{"x1", "x2"}, {{RatFun(1), RatFun(0)}, {RatFun(0), RatFun(1)}}};
    return register_system(sp, p);
}

SystemHandle heis(int n) {
    std::vector<Species> sp;
    PairingTable p;
    for (int i = 0; i < n; ++i) {
        sp.push_back(Species::heisenberg("h" + std::to_string(i)));
        p.names.push_back("h" + std::to_string(i));
    }
    p.gram.assign(n, std::vector<RatFun>(n));
    for (int i = 0; i < n; ++i) p.gram[i][i] = RatFun(1);
    return register_system(sp, p);
}

}  // namespace

TEST_CASE("registration errors") {
    std::vector<Species> sp{Species::fermion("b", 1, "c"), Species::heisenberg("x")};
    try {
        register_system(sp, PairingTable{{"x"}, {{RatFun(1)}}});
        FAIL("expected failure");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UnpairedFermionHalf);
    }
    std::vector<Species> xy{Species::heisenberg("x"), Species::heisenberg("y")};
    try {
        register_system(xy, PairingTable{{"x", "y"}, {{RatFun(1), RatFun(2)}, {RatFun(0), RatFun(-1)}}});
        FAIL("expected failure");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::AsymmetricPairing);
    }
    auto ok = register_system(xy, PairingTable{{"x", "y"}, {{RatFun(1), RatFun(0)}, {RatFun(0), RatFun(-1)}}},
                              {"x", "y"});
    CHECK(ok->has_lattice());
}

TEST_CASE("normal form signs") {
    auto sys = bc_heis2();
    int b = sys->index("b"), c = sys->index("c"), x = sys->index("x1");
    auto mu = sys->zero_momentum();
    Signed s = normal_form(*sys, mu, {{c, 1}, {b, 1}});
    CHECK(s.sign == -1);
    CHECK(sys->state_str(s.state) == "b(-1)c(-1)|mu=(0,0)⟩");
    CHECK(normal_form(*sys, mu, {{b, 1}, {b, 1}}).sign == 0);
    Signed h = normal_form(*sys, mu, {{x, 2}, {x, 1}});
    CHECK(h.sign == 1);
    CHECK(h.state.modes == std::vector<Mode>{{x, 2}, {x, 1}});
    Signed p1 = normal_form(*sys, mu, {{c, 2}, {x, 1}, {b, 1}, {c, 1}});
    Signed p2 = normal_form(*sys, mu, {{b, 1}, {c, 2}, {c, 1}, {x, 1}});
    CHECK(p1.state == p2.state);
    CHECK(p1.sign == -p2.sign);
}

TEST_CASE("basis enumeration") {
    auto h2 = heis(2);
    CHECK(enumerate_basis(*h2, h2->zero_momentum(), 2).size() == 5);
    auto h1 = heis(1);
    CHECK(graded_dimension(*h1, h1->zero_momentum(), 0, 6) == std::vector<long>{1, 1, 2, 3, 5, 7, 11});

    std::vector<Species> sp{Species::fermion("b", 1, "c"), Species::fermion("c", 0, "b")};
    auto bc = register_system(sp, PairingTable{});
    auto basis = enumerate_basis(*bc, bc->zero_momentum(), 2);
    std::vector<std::string> names;
    for (auto& s : basis) names.push_back(bc->state_str(s));
    std::sort(names.begin(), names.end());
    CHECK(names == std::vector<std::string>{"b(-1)c(-2)c(-1)|mu=()⟩", "b(-1)c(-2)|mu=()⟩", "b(-2)c(-1)|mu=()⟩",
                                            "b(-2)|mu=()⟩", "c(-3)c(-1)|mu=()⟩", "c(-3)|mu=()⟩"});

    auto w = bc_heis2();
    CHECK(graded_dimension(*w, w->zero_momentum(), 0, 3) == std::vector<long>{2, 8, 24, 64});
    for (int d = 0; d <= 5; ++d)
        for (auto& s : enumerate_basis(*w, w->zero_momentum(), d))
            for (size_t i = 1; i < s.modes.size(); ++i) CHECK(!(s.modes[i] == s.modes[i - 1] && w->is_odd(s.modes[i].sp)));
}

TEST_CASE("boson pair charge slices") {
    std::vector<Species> sp{Species::boson("be", 1, "ga"), Species::boson("ga", 0, "be"), Species::heisenberg("h")};
    auto sys = register_system(sp, PairingTable{{"h"}, {{RatFun(2)}}});
    CHECK(enumerate_basis(*sys, sys->zero_momentum(), 0).size() == 1);
    CHECK(enumerate_basis(*sys, sys->zero_momentum(), 1).size() == 2);
    CHECK(enumerate_basis(*sys, sys->zero_momentum(), 0, -1).size() == 1);
}

TEST_CASE("resource cap") {
    auto h = heis(3);
    Limits::basis_cap = 10;
    CHECK_THROWS_AS(enumerate_basis(*h, h->zero_momentum(), 6), Error);
    Limits::basis_cap = 0;
}
