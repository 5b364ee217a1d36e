#include <random>

#include "doctest.h"
#include "wfree/scalar.hpp"

using namespace wfree;

TEST_CASE("rational arithmetic") {
    CHECK(field_arithmetic(RatFun(Rat(1, 2)), RatFun(Rat(1, 3)), ArithOp::Add) == RatFun(Rat(5, 6)));
    RatFun t = RatFun::t();
    CHECK(field_arithmetic(RatFun(1) / (t + RatFun(3)), t + RatFun(3), ArithOp::Mul) == RatFun(1));
    RatFun f = RatFun(Rat(2, 3)) * (t + RatFun(3)) - RatFun(1);
    CHECK(f == RatFun(Poly({Rat(3), Rat(2)}), Poly(Rat(3))));
    CHECK(f.str() == "(2*t+3)/3");
    CHECK_THROWS_AS(field_arithmetic(t, RatFun(), ArithOp::Div), Error);
}

TEST_CASE("evaluation") {
    RatFun t = RatFun::t();
    RatFun f = parse_ratfun("(2*t+3)/3");
    CHECK(evaluate(f, Rat(-3, 2)) == 0);
    RatFun g = RatFun(1) / (t + RatFun(3));
    CHECK(evaluate(g, Rat(-14, 5)) == 5);
    try {
        evaluate(g, Rat(-3));
        FAIL("expected pole");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PoleAtPoint);
    }
}

TEST_CASE("linear zeros") {
    auto z = linear_zeros(parse_ratfun("(2*t+3)/3"));
    REQUIRE(z.size() == 1);
    CHECK(z[0] == Rat(-3, 2));
    CHECK(linear_zeros(RatFun(5)).empty());
    auto d = linear_zeros(parse_ratfun("t^2"));
    REQUIRE(d.size() == 1);
    CHECK(d[0] == 0);
    CHECK_THROWS_AS(linear_zeros(parse_ratfun("t^3-1")), Error);
    CHECK(linear_zeros(parse_ratfun("(t-1)*(t+2)/(t-1)")) == std::vector<Rat>{Rat(-2)});
}

TEST_CASE("text round trip") {
    for (const char* s : {"0", "-7/3", "t", "(2*t+3)/3", "-1/(t+3)", "(t^2-1)/(t^2+2*t+5)"}) {
        RatFun f = parse_ratfun(s);
        CHECK(parse_ratfun(f.str()) == f);
    }
    CHECK(to_string(parse_rat("-14/5")) == "-14/5");
    CHECK(to_string(parse_rat("6/4")) == "3/2");
}

TEST_CASE("random ring axioms") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-5, 5);
    auto rnd = [&] {
        std::vector<Rat> a, b;
        for (int i = 0; i < 3; ++i) a.emplace_back(d(rng));
        for (int i = 0; i < 2; ++i) b.emplace_back(d(rng));
        b.emplace_back(1);
        return RatFun(Poly(a), Poly(b));
    };
    for (int it = 0; it < 40; ++it) {
        RatFun a = rnd(), b = rnd(), c = rnd();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(normalize(normalize(a)) == normalize(a));
        Rat x(d(rng), 7);
        if (b.den().eval(x) != 0 && a.den().eval(x) != 0) {
            CHECK(evaluate(a * b, x) == evaluate(a, x) * evaluate(b, x));
            CHECK(evaluate(a - b, x) == evaluate(a, x) - evaluate(b, x));
        }
    }
}
