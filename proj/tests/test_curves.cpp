#include "oracle.hpp"

#include "somos/curves.hpp"

#include <doctest.h>

#include <random>

using namespace somos;

namespace {

using Coeffs = std::array<Rat, 4>;

const Coeffs kUnitCurve{Rat(4), Rat(0), Rat(-4), Rat(1)};  // y^2 = 4(x^3 - x) + 1
const Coeffs kA4B9{Rat(4), Rat(0), parse_rat("-12428112196/19683"), parse_rat("1385503884676628/14348907")};
const Coeffs kA2B5{Rat(4), Rat(0), parse_rat("-48492460561/38880000"), parse_rat("10678311547192441/1259712000000")};
const Coeffs kFibonacciPrinted{Rat(4), Rat(0), Rat(-25, 12), Rat(-125, 216)};

std::vector<CurvePoint> affine_points(const Curve& e)
{
    std::vector<CurvePoint> pts;
    const auto elems = e.field.elements();
    for (const auto& x : elems)
        for (const auto& y : elems) {
            const auto p = CurvePoint::affine(x, y);
            if (on_curve(e, p) && !is_singular_point(e, p))
                pts.push_back(p);
        }
    return pts;
}

RatCoord rational(const Rat& q)
{
    return RatCoord{q, 0, 0};
}

} // namespace

TEST_CASE("fields: construction and arithmetic")
{
    CHECK_THROWS_AS(FiniteField::prime(9), MathError);
    const auto f7 = FiniteField::prime(7);
    CHECK(f7.order() == 7);
    CHECK(f7.inverse(f7.from_rat(3)) == f7.from_rat(5));
    CHECK(f7.from_rat(Rat(1, 3)) == f7.from_rat(5));
    CHECK_THROWS_AS(f7.from_rat(Rat(1, 7)), MathError);

    try {
        FiniteField::extension(7, 2);
        FAIL("expected NotNonResidue");
    }
    catch (const MathError& e) {
        CHECK(e.kind() == ErrorKind::NotNonResidue);
    }
    const auto f49 = FiniteField::extension(7, 3);
    CHECK(f49.order() == 49);
    CHECK(f49.elements().size() == 49);
    CHECK(f49.root() * f49.root() == f49.from_rat(3));
}

TEST_CASE("Frobenius is a field automorphism of order two")
{
    const auto f = FiniteField::extension(11, 2);
    const auto elems = f.elements();
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    for (int i = 0; i < 200; ++i) {
        const auto& a = elems[pick(rng)];
        const auto& b = elems[pick(rng)];
        CHECK(f.frobenius(a + b) == f.frobenius(a) + f.frobenius(b));
        CHECK(f.frobenius(a * b) == f.frobenius(a) * f.frobenius(b));
        CHECK(f.frobenius(f.frobenius(a)) == a);
        CHECK(f.frobenius(a) == f.pow(a, 11));
    }
}

TEST_CASE("group law axioms on random points")
{
    for (long p : {7L, 11L, 13L}) {
        const Curve e = make_curve(kUnitCurve, p);
        REQUIRE_FALSE(e.singular);
        const auto pts = affine_points(e);
        std::mt19937_64 rng(static_cast<unsigned long>(p));
        std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
        for (int i = 0; i < 60; ++i) {
            const auto& P = pts[pick(rng)];
            const auto& Q = pts[pick(rng)];
            const auto& R = pts[pick(rng)];
            CHECK(point_add(e, P, CurvePoint::infinity()) == P);
            CHECK(point_add(e, P, negate(P)).is_infinity());
            CHECK(point_add(e, P, Q) == point_add(e, Q, P));
            CHECK(point_add(e, point_add(e, P, Q), R) == point_add(e, P, point_add(e, Q, R)));
            CHECK(on_curve(e, point_add(e, P, Q)));
        }
    }
}

TEST_CASE("point orders divide the brute-force group order inside the Hasse window")
{
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L}) {
        const Curve e = make_curve(kUnitCurve, p);
        if (e.singular)
            continue;
        const BigInt n = count_points(e);
        const long h = hasse_upper(p);
        CHECK(n <= h);
        CHECK(n >= 2 * (p + 1) - h);
        for (const auto& P : affine_points(e)) {
            CHECK(n % point_order(e, P) == 0);
            CHECK(scalar_mul(e, P, n).is_infinity());
        }
    }
}

TEST_CASE("c3 normalization preserves point orders")
{
    // y^2 = 4x^3 + c1 x + c0  <->  Y^2 = X^3 + (c1/4) X + c0/4 with Y = y/2.
    const Coeffs general{Rat(4), Rat(0), Rat(3), Rat(5)};
    const Coeffs shortform{Rat(1), Rat(0), Rat(3, 4), Rat(5, 4)};
    for (long p : {7L, 13L, 17L}) {
        const Curve e = make_curve(general, p), s = make_curve(shortform, p);
        CHECK(count_points(e) == count_points(s));
        const auto half = e.field.inverse(e.field.from_rat(2));
        for (const auto& P : affine_points(e)) {
            const auto image = make_point(s, P.x(), P.y() * half);
            CHECK(point_order(e, P) == point_order(s, image));
        }
    }
}

TEST_CASE("gaps of unit Somos-4 equal point orders of (1,1)")
{
    for (long p : {3L, 7L, 11L}) {
        const Curve e = make_curve(kUnitCurve, p);
        const auto P = make_point(e, e.field.one(), e.field.one());
        CHECK(point_order(e, P) == oracle()["curve_unit_order_p" + std::to_string(p)].get<long>());
    }
}

TEST_CASE("alpha=4, beta=9 curve: order 7 over F_5, bad reduction at 3")
{
    const auto pp = prepare_point(kA4B9, 5, rational(parse_rat("55750/243")), rational(2));
    CHECK(point_order(pp.curve, pp.point) == oracle()["a4b9_curve_order"].get<long>());
    try {
        make_curve(kA4B9, 3);
        FAIL("expected BadReduction");
    }
    catch (const MathError& e) {
        CHECK(e.kind() == ErrorKind::BadReduction);
    }
}

TEST_CASE("alpha=2, beta=5 curve: order 10 with sqrt 2 in F_7")
{
    const auto x = rational(parse_rat("223081/21600"));
    const auto pp = prepare_point(kA2B5, 7, x, parse_coord("sqrt:2"));
    CHECK_FALSE(pp.curve.field.is_extension());
    CHECK(point_order(pp.curve, pp.point) == 10);
    const auto orders = oracle()["a2b5_curve_orders"].get<std::vector<long>>();
    for (long y : {3L, 4L}) {
        const auto q = prepare_point(kA2B5, 7, x, rational(y));
        CHECK(point_order(q.curve, q.point) == orders[static_cast<std::size_t>(y - 3)]);
    }
}

TEST_CASE("Fibonacci curve after a change of variables")
{
    CHECK_THROWS_AS(make_curve(kFibonacciPrinted, 3), MathError);

    const Rat u(1, 4), r(-5, 12), w(1, 4);
    const auto c = change_variables(kFibonacciPrinted, u, r, w);
    CHECK(c == Coeffs{Rat(1), Rat(-5), Rat(0), Rat(0)});
    const auto xy = change_point(rational(Rat(7, 12)), parse_coord("sqrt:-1"), u, r, w);
    CHECK(to_string(xy[0]) == "4");
    CHECK(to_string(xy[1]) == "4*sqrt:-1");

    const auto pp = prepare_point(c, 3, xy[0], xy[1]);
    CHECK(pp.curve.singular);
    CHECK(pp.curve.field.is_extension());
    CHECK(point_order(pp.curve, pp.point) == 4);
    CHECK(count_points(pp.curve, true) % 4 == 0);
}

TEST_CASE("invalid points and curves")
{
    const Curve e = make_curve(kUnitCurve, 7);
    try {
        make_point(e, e.field.from_rat(2), e.field.from_rat(3));
        FAIL("expected NotOnCurve");
    }
    catch (const MathError& err) {
        CHECK(err.kind() == ErrorKind::NotOnCurve);
    }
    // y^2 = x^3 + x^2 has its node at the origin.
    const Curve node = make_curve({Rat(1), Rat(1), Rat(0), Rat(0)}, 5);
    CHECK(node.singular);
    try {
        make_point(node, node.field.zero(), node.field.zero());
        FAIL("expected SingularPoint");
    }
    catch (const MathError& err) {
        CHECK(err.kind() == ErrorKind::SingularPoint);
    }
    CHECK_THROWS_AS(make_curve(kUnitCurve, 2), MathError);
    CHECK_THROWS_AS(make_curve({Rat(5), Rat(0), Rat(1), Rat(1)}, 5), MathError);
}

TEST_CASE("square adjoin falls back to the prime field with a notice")
{
    const Curve e = make_curve(kUnitCurve, 7, Rat(2));
    CHECK_FALSE(e.field.is_extension());
    CHECK_FALSE(e.notices.empty());
}

TEST_CASE("coordinate parsing")
{
    CHECK(to_string(parse_coord("3/4")) == "3/4");
    CHECK(to_string(parse_coord("sqrt:2")) == "sqrt:2");
    CHECK(to_string(parse_coord("-2*sqrt:5")) == "-2*sqrt:5");
    CHECK(to_string(parse_coord("1+3*sqrt:2")) == "1+3*sqrt:2");
    CHECK_THROWS_AS(parse_coord("sqrt:"), MathError);
}
