#include "oracle.hpp"

#include "somos/divis.hpp"
#include "somos/laurent.hpp"
#include "somos/somos.hpp"

#include <doctest.h>

using namespace somos;

namespace {

std::vector<std::string> decimal(const SeqWindow<BigInt>& w)
{
    std::vector<std::string> out;
    for (const auto& t : w.terms())
        out.push_back(to_string(t));
    return out;
}

SeqWindow<BigInt> unit_integer(int k, long lo, long hi)
{
    return extend(unit_spec<BigInt>(k, 1, 1, BigInt(1)), lo, hi);
}

SomosSpec<SparsePoly> symbolic_unit(int k)
{
    return unit_spec<SparsePoly>(k, SparsePoly::variable(Var::alpha), SparsePoly::variable(Var::beta), SparsePoly(1));
}

} // namespace

TEST_CASE("unit Somos-4 and Somos-5 match the reference recurrence")
{
    CHECK(decimal(unit_integer(4, 1, 12)) == oracle()["somos4_unit_1_12"].get<std::vector<std::string>>());
    CHECK(decimal(unit_integer(5, 1, 11)) == oracle()["somos5_unit_1_11"].get<std::vector<std::string>>());
    CHECK(decimal(unit_integer(4, -10, 4).slice(-10, 0)) == oracle()["somos4_unit_-10_0"].get<std::vector<std::string>>());
}

TEST_CASE("rational and integer engines agree on a long window")
{
    const auto zi = unit_integer(4, -40, 120);
    const auto q = extend(unit_spec<Rat>(4, Rat(1), Rat(1), Rat(1)), -40, 120);
    CHECK(to_integer_window(q) == zi);
    CHECK(recurrence_violations(unit_spec<BigInt>(4, 1, 1, BigInt(1)), zi).empty());
}

TEST_CASE("a non-integral step is reported with its index")
{
    SomosSpec<BigInt> spec{4, 1, 1, {1, 2, 3, 4}};
    try {
        extend(spec, 1, 30);
        FAIL("expected NotDivisible");
    }
    catch (const MathError& e) {
        CHECK(e.kind() == ErrorKind::NotDivisible);
        REQUIRE(e.index().has_value());
        CHECK(*e.index() >= 5);
    }
    const auto partial = extend_partial(spec, 1, 30);
    REQUIRE(partial.error.has_value());
    CHECK(partial.window.hi() == *partial.error->index() - 1);
}

TEST_CASE("a zero divisor stops extension")
{
    SomosSpec<Rat> spec{4, Rat(1), Rat(1), {Rat(0), Rat(1), Rat(1), Rat(1)}};
    try {
        extend(spec, 1, 10);
        FAIL("expected ZeroDivisor");
    }
    catch (const MathError& e) {
        CHECK(e.kind() == ErrorKind::ZeroDivisor);
    }
}

TEST_CASE("symbolic term sizes match an independent expansion")
{
    const auto w = extend(symbolic_unit(4), 1, 16);
    for (const auto& [n, size] : oracle()["somos4_symbolic_sizes"].items())
        CHECK_MESSAGE(w[std::stol(n)].size() == size.get<std::size_t>(), "n = " << n);
}

TEST_CASE("symbolic windows respect the index budget")
{
    ExtendOptions opt;
    opt.symbolic_max_index = 12;
    CHECK_NOTHROW(extend(symbolic_unit(4), 1, 12, opt));
    try {
        extend(symbolic_unit(4), 1, 13, opt);
        FAIL("expected BudgetExceeded");
    }
    catch (const MathError& e) {
        CHECK(e.kind() == ErrorKind::BudgetExceeded);
        CHECK(e.index() == 13);
    }
    opt.symbolic_max_index = 40;
    opt.max_term_size = 50;
    CHECK_THROWS_AS(extend(symbolic_unit(4), 1, 20, opt), MathError);
}

TEST_CASE("unit-initial symbolic windows are palindromic")
{
    for (int k : {4, 5}) {
        const auto w = extend(symbolic_unit(k), k + 1 - 18, 18);
        const auto rep = symmetry_check(k, w);
        CHECK(rep.ok());
        CHECK(rep.pairs_checked >= 15);
    }
}

TEST_CASE("variable-initial Laurent windows divide exactly")
{
    SomosSpec<LaurentElem> spec{4, LaurentElem::variable(Var::alpha), LaurentElem::variable(Var::beta),
                                {LaurentElem::variable(Var::x1), LaurentElem::variable(Var::x2),
                                 LaurentElem::variable(Var::x3), LaurentElem::variable(Var::x4)}};
    ExtendOptions opt;
    opt.symbolic_max_index = 12;
    const auto w = extend(spec, 1, 12, opt);
    CHECK(recurrence_violations(spec, w).empty());
    CHECK_FALSE(w[5].is_polynomial());
    CHECK(w[5].den().to_string() == "x1");

    // Specializing at the unit point recovers the integer sequence.
    Assignment unit{{Var::alpha, 1}, {Var::beta, 1}, {Var::x1, 1}, {Var::x2, 1}, {Var::x3, 1}, {Var::x4, 1}};
    const auto zi = unit_integer(4, 1, 12);
    for (long n = 1; n <= 12; ++n)
        CHECK(w[n].eval(unit) == Rat(zi[n]));
}

TEST_CASE("invariants at unit initials")
{
    const auto w4 = extend(symbolic_unit(4), 1, 10);
    const auto inv4 = invariants4(symbolic_unit(4), w4, 1);
    CHECK(inv4.I == LaurentElem(parse_poly("(alpha+beta)^2+beta")));
    for (long at = 2; at <= 7; ++at)
        CHECK(invariants4(symbolic_unit(4), w4, at).I == inv4.I);

    const auto w5 = extend(symbolic_unit(5), 1, 10);
    const auto inv5 = invariants5(symbolic_unit(5), w5, 1);
    CHECK(inv5.J == LaurentElem(parse_poly("(2*alpha+beta)*(alpha+1)")));
    for (long at = 2; at <= 6; ++at)
        CHECK(invariants5(symbolic_unit(5), w5, at).J == inv5.J);
}

TEST_CASE("numeric invariants stay constant")
{
    const SomosSpec<Rat> spec{4, Rat(3), Rat(7), {Rat(1), Rat(2), Rat(-1), Rat(5)}};
    const auto w = extend(spec, 1, 40);
    const auto first = invariants4(spec, w, 1);
    for (long at = 2; at + 3 <= 40; ++at)
        CHECK(invariants4(spec, w, at).T == first.T);
}

TEST_CASE("mod-4 residues have period 10 and never vanish")
{
    const auto w = unit_integer(4, -50, 200);
    std::vector<long> residues;
    for (const auto& t : w.terms())
        residues.push_back(static_cast<long>(BigInt(((t % 4) + 4) % 4).get_si()));
    CHECK(residues == oracle()["somos4_unit_mod4_-50_200"].get<std::vector<long>>());
    const auto rep = period_mod(w, 4, 4);
    CHECK(rep.period == 10);
    CHECK_FALSE(rep.contains_zero);
}

TEST_CASE("degenerate parameters give monomial terms")
{
    for (Degenerate d : {Degenerate::alpha_zero, Degenerate::beta_zero}) {
        const auto rep = verify_degenerate(d, 16);
        CHECK_MESSAGE(rep.ok(), to_string(d));
    }
    // beta = 0: 1,1,1,1,alpha,alpha^2,alpha^3,alpha^5, exponents from the engine itself
    const auto e = degenerate_exponents(Degenerate::beta_zero, 8);
    CHECK(e == std::vector<long>{0, 0, 0, 0, 1, 2, 3, 5});
    // alpha = 0: t7 = beta t5^2 / t3 = beta^3
    CHECK(degenerate_exponents(Degenerate::alpha_zero, 8) == std::vector<long>{0, 0, 0, 0, 1, 1, 3, 3});
}

TEST_CASE("equivalent-sequence transforms hold symbolically")
{
    for (TransformKind t : {TransformKind::mg, TransformKind::mgs, TransformKind::somos5_abcba,
                            TransformKind::sign_twist}) {
        const auto rep = verify_transform(t, 12);
        CHECK_MESSAGE(rep.ok(), to_string(t));
        CHECK(rep.checked.size() == 12);
    }
}

TEST_CASE("numeric transforms reject a zero parameter")
{
    TransformParams p;
    p.numeric = true;
    p.gamma = Rat(0);
    p.delta = Rat(2);
    try {
        verify_transform(TransformKind::mg, 10, p);
        FAIL("expected ZeroParameter");
    }
    catch (const MathError& e) {
        CHECK(e.kind() == ErrorKind::ZeroParameter);
    }
    p.gamma = Rat(3, 2);
    CHECK(verify_transform(TransformKind::mg, 10, p).ok());
}

TEST_CASE("the Fibonacci extension passes through its zero term")
{
    const auto w = fibonacci_extension(-40, 40);
    std::vector<std::string> nonneg;
    for (long n = 0; n <= 40; ++n)
        nonneg.push_back(to_string(w[n]));
    CHECK(nonneg == oracle()["fib_0_40"].get<std::vector<std::string>>());
    CHECK(symmetry_check(4, w.slice(-30, 30), SymmetryRule::fibonacci_sign).ok());
}
