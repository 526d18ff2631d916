#include "somos/error.hpp"
#include "somos/laurent.hpp"
#include "somos/poly.hpp"
#include "somos/residue.hpp"
#include "somos/series.hpp"

#include <doctest.h>

#include <random>

using namespace somos;

namespace {

SparsePoly P(const char* text)
{
    return parse_poly(text);
}

SparsePoly random_poly(std::mt19937_64& rng, int terms, int max_exp)
{
    std::uniform_int_distribution<int> coef(-9, 9), ex(0, max_exp);
    SparsePoly out;
    const Var vars[] = {Var::alpha, Var::beta, Var::x1};
    for (int i = 0; i < terms; ++i) {
        SparsePoly t(coef(rng));
        for (Var v : vars)
            t *= SparsePoly::variable(v).pow(static_cast<unsigned>(ex(rng)));
        out += t;
    }
    return out;
}

} // namespace

TEST_CASE("rationals parse to canonical form")
{
    CHECK(parse_rat("6/-4") == Rat(-3, 2));
    CHECK(to_string(parse_rat("10/4")) == "5/2");
    CHECK(to_string(parse_rat("-7")) == "-7");
    CHECK_THROWS_AS(parse_rat("1/0"), MathError);
    CHECK_THROWS_AS(parse_rat("abc"), MathError);
}

TEST_CASE("mod_reduce inverts denominators and rejects multiples of p")
{
    CHECK(mod_reduce(Rat(-4), 5).value() == 1);
    CHECK(mod_reduce(parse_rat("55750/243"), 5).value() == 0);
    CHECK(mod_reduce(parse_rat("1/3"), 7).value() == 5);
    try {
        mod_reduce(parse_rat("1/9"), 3);
        FAIL("expected BadReduction");
    }
    catch (const MathError& e) {
        CHECK(e.kind() == ErrorKind::BadReduction);
    }
}

TEST_CASE("square roots mod p agree with brute force")
{
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 97L}) {
        for (long a = 0; a < p; ++a) {
            bool square = false;
            for (long y = 0; y < p; ++y)
                square = square || (y * y) % p == a;
            const auto r = sqrt_mod(ResidueInt(a, p));
            CHECK(r.has_value() == square);
            if (r)
                CHECK((*r * *r).value() == a);
        }
    }
}

TEST_CASE("residues refuse to mix moduli")
{
    CHECK_THROWS_AS(ResidueInt(1, 5) + ResidueInt(1, 7), MathError);
}

TEST_CASE("polynomial parsing and printing round trip")
{
    const SparsePoly p = P("(alpha+beta)^2 + beta");
    CHECK(p.to_string() == "alpha^2+2*alpha*beta+beta^2+beta");
    CHECK(parse_poly(p.to_string()) == p);
    CHECK(P("-alpha").to_string() == "-alpha");
    CHECK_THROWS_AS(parse_poly("alpha +* 2"), MathError);
    CHECK_THROWS_AS(parse_poly("omega"), MathError);
}

TEST_CASE("exact division recovers random factors")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 30; ++i) {
        const SparsePoly a = random_poly(rng, 6, 4), b = random_poly(rng, 5, 3);
        if (b.is_zero())
            continue;
        const SparsePoly prod = a * b;
        const auto q = try_exact_div(prod, b);
        REQUIRE(q.has_value());
        CHECK(*q == a);
    }
}

TEST_CASE("non-divisible quotients are detected")
{
    CHECK_FALSE(try_exact_div(P("alpha^2+1"), P("alpha+1")).has_value());
    CHECK_FALSE(try_exact_div(P("alpha+2"), P("2")).has_value());
    CHECK_FALSE(try_exact_div(P("alpha*beta+1"), P("alpha")).has_value());
    CHECK_THROWS_AS(exact_div(P("alpha"), P("0")), MathError);
}

TEST_CASE("large products take the packed path and agree with term-by-term expansion")
{
    // (1 + alpha + beta)^40 has 861 terms; squaring it crosses the packed threshold.
    const SparsePoly base = P("1+alpha+beta");
    SparsePoly slow(1);
    for (int i = 0; i < 40; ++i)
        slow *= base;
    const SparsePoly fast = base.pow(40);
    CHECK(fast == slow);
    const SparsePoly sq = fast * fast;
    CHECK(sq == base.pow(80));
    const auto q = try_exact_div(sq, fast);
    REQUIRE(q.has_value());
    CHECK(*q == fast);
    CHECK_FALSE(try_exact_div(sq + SparsePoly(1), fast).has_value());
}

TEST_CASE("evaluation matches substitution")
{
    const SparsePoly p = P("alpha^3 - 2*alpha*beta + 7");
    Assignment at{{Var::alpha, Rat(2)}, {Var::beta, Rat(-1, 3)}};
    CHECK(p.eval(at) == Rat(8) + Rat(4, 3) + 7);
    CHECK(p.substitute(Var::alpha, P("beta+1")).eval({{Var::beta, Rat(5)}}) == Rat(216 - 60 + 7));
    CHECK_THROWS_AS(p.eval({{Var::alpha, Rat(1)}}), MathError);
}

TEST_CASE("Laurent elements keep a monomial denominator in lowest terms")
{
    const LaurentElem x1 = LaurentElem::variable(Var::x1), x2 = LaurentElem::variable(Var::x2);
    const LaurentElem q = laurent_div(x1 * x1 + x2, x1);
    CHECK_FALSE(q.is_polynomial());
    CHECK(q.den().to_string() == "x1");
    CHECK(q * x1 == x1 * x1 + x2);
    CHECK(laurent_div(x1 * x2, x1 * x2) == LaurentElem(1));
    CHECK_THROWS_AS(laurent_div(x1, x1 + x2), MathError);
}

TEST_CASE("truncated series lose one order per eps in the divisor")
{
    const TruncSeries e = TruncSeries::perturbed(Rat(0), 4);  // eps, known to O(eps^4)
    const TruncSeries one_plus = TruncSeries::perturbed(Rat(1), 4);
    const TruncSeries q = series_div(one_plus * e, e);
    CHECK(q.precision() == 3);
    CHECK(q.specialize() == 1);
    CHECK_THROWS_AS(series_div(TruncSeries(Rat(1), 4), TruncSeries(Rat(0), 4)), MathError);
}
