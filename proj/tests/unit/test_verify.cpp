#include "doctest.h"
#include "wfree/verify.hpp"

using namespace wfree;

namespace {

Rat q(long p, long d = 1) {
    Rat r(p, d);
    r.canonicalize();
    return r;
}

// coefficients of prod (1 - q^n)^-r by direct convolution over partitions
std::vector<long> heisenberg_dims(int rank, int D) {
    std::vector<long> s(D + 1);
    s[0] = 1;
    for (int k = 0; k < rank; ++k)
        for (int m = 1; m <= D; ++m)
            for (int i = m; i <= D; ++i) s[i] += s[i - m];
    return s;
}

}  // namespace

TEST_CASE("character oracle") {
    auto bc = gl11_wakimoto(RatFun(2), RatFun(0));
    CHECK(character_oracle(*bc.sys, 3) == std::vector<long>{2, 8, 24, 64});
    auto h3 = register_system({Species::heisenberg("a"), Species::heisenberg("b"), Species::heisenberg("c")},
                              PairingTable{{"a", "b", "c"},
                                           {{RatFun(1), RatFun(0), RatFun(0)},
                                            {RatFun(0), RatFun(1), RatFun(0)},
                                            {RatFun(0), RatFun(0), RatFun(1)}}});
    CHECK(character_oracle(*h3, 4) == std::vector<long>{1, 3, 9, 22, 51});
    CHECK(character_oracle(*h3, 6) == heisenberg_dims(3, 6));
    auto empty = register_system({}, PairingTable{});
    CHECK(character_oracle(*empty, 3) == std::vector<long>{1, 0, 0, 0});
    CHECK(wakimoto_character(3) == std::vector<long>{1, 4, 12, 32});
    CHECK(virasoro_character(6) == std::vector<long>{1, 0, 1, 1, 2, 2, 4});
}

TEST_CASE("character oracle with beta gamma charge slices") {
    auto m = subregular_realization({PairKind::SL, 2}, RatFun(q(3, 7)), Form::Miura);
    for (int c = -2; c <= 2; ++c) {
        CAPTURE(c);
        CHECK(character_oracle(*m.sys, 5, c) == graded_dimension(*m.sys, m.sys->zero_momentum(), 0, 5, c));
    }
}

TEST_CASE("resolution") {
    Report r = check_resolution(q(7, 2), q(1, 3), 3, 2, 3);
    CHECK(r.pass());
    std::vector<long> dims;
    for (auto& row : r.per_degree) dims.push_back(row.dim_left);
    CHECK(dims == std::vector<long>{1, 4, 12, 32});
    CHECK_THROWS_AS(check_resolution(0, 1, 2, 1), Error);
}

TEST_CASE("rank one duality") {
    CHECK(check_rank1_ff_duality(q(7, 2), 6).pass());
    CHECK(check_rank1_ff_duality(q(5, 3), 6).pass());
    Report bad = check_rank1_ff_duality(q(2), 6);
    CHECK_FALSE(bad.pass());
}

TEST_CASE("coset duality") {
    CHECK(check_coset_duality({PairKind::SL, 2}, q(-14, 5), 3).pass());
    CHECK(check_coset_duality({PairKind::SO, 2}, q(-5, 2), 2).pass());
    CHECK_THROWS_AS(check_coset_duality({PairKind::SL, 2}, q(-3, 2), 2), Error);
    CHECK_THROWS_AS(check_coset_duality({PairKind::SL, 2}, q(-3), 2), Error);
}

TEST_CASE("conformal dimensions") {
    std::vector<DeltaSample> s{{2, 0, 1, 0}, {2, 0, 0, 0}, {q(5, 3), q(-2, 7), q(5, 2), q(3, 2)}};
    Report r = check_delta(s);
    for (auto& item : r.items) CHECK_MESSAGE(item.equal, (item.id + " " + item.expected + " vs " + item.computed));
}

TEST_CASE("counting on catalog systems") {
    for (auto& key : catalog_keys()) {
        CAPTURE(key);
        Realization r = realization_by_key(key, RatFun(q(3, 11)), RatFun(q(2, 13)));
        CHECK(check_counting(*r.sys, r.sys->zero_momentum(), 5, key).pass());
    }
}
