#include "somos/curves.hpp"

namespace somos {

FiniteField FiniteField::prime(const BigInt& p)
{
    if (p < 2 || !is_probable_prime(p))
        throw MathError(ErrorKind::InvalidArgument, "field characteristic " + somos::to_string(p) + " is not prime");
    return FiniteField(p, ResidueInt(0, p), false);
}

FiniteField FiniteField::extension(const BigInt& p, const Rat& d)
{
    prime(p);
    if (p == 2)
        throw MathError(ErrorKind::InvalidArgument, "quadratic extensions need an odd characteristic");
    const ResidueInt dr = mod_reduce(d, p);
    if (legendre(dr) != -1)
        throw MathError(ErrorKind::NotNonResidue,
                        somos::to_string(d) + " is a square mod " + somos::to_string(p));
    return FiniteField(p, dr, true);
}

FieldElem FiniteField::zero() const
{
    return FieldElem(ResidueInt(0, p_), ResidueInt(0, p_), d_);
}

FieldElem FiniteField::one() const
{
    return FieldElem(ResidueInt(1, p_), ResidueInt(0, p_), d_);
}

FieldElem FiniteField::from_rat(const Rat& x) const
{
    return FieldElem(mod_reduce(x, p_), ResidueInt(0, p_), d_);
}

FieldElem FiniteField::root() const
{
    if (!extension_)
        throw MathError(ErrorKind::InvalidArgument, "prime field has no adjoined root");
    return FieldElem(ResidueInt(0, p_), ResidueInt(1, p_), d_);
}

FieldElem FiniteField::inverse(const FieldElem& x) const
{
    if (x.a().is_zero() && x.b().is_zero())
        throw MathError(ErrorKind::ZeroDivisor, "inverse of zero in F_" + somos::to_string(order()));
    const ResidueInt n_inv = x.norm().inverse();
    const FieldElem c = x.conjugate();
    return FieldElem(c.a() * n_inv, c.b() * n_inv, d_);
}

FieldElem FiniteField::pow(const FieldElem& x, BigInt e) const
{
    FieldElem result = one(), base = x;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

bool FiniteField::is_square(const FieldElem& x) const
{
    if (x == zero())
        return true;
    if (p_ == 2)
        return true;
    return pow(x, (order() - 1) / 2) == one();
}

FieldElem FiniteField::frobenius(const FieldElem& x) const
{
    return x.conjugate();
}

std::vector<FieldElem> FiniteField::elements() const
{
    std::vector<FieldElem> out;
    const BigInt bmax = extension_ ? p_ : BigInt(1);
    for (BigInt a = 0; a < p_; ++a)
        for (BigInt b = 0; b < bmax; ++b)
            out.emplace_back(ResidueInt(a, p_), ResidueInt(b, p_), d_);
    return out;
}

std::string FiniteField::to_string(const FieldElem& x) const
{
    const std::string a = somos::to_string(x.a().value());
    if (!extension_)
        return a;
    return a + "+" + somos::to_string(x.b().value()) + "*sqrt(" + somos::to_string(d_.value()) + ")";
}

RatCoord parse_coord(std::string_view text)
{
    const auto pos = text.find("sqrt:");
    if (pos == std::string_view::npos)
        return RatCoord{parse_rat(text), 0, 0};
    RatCoord c;
    c.d = parse_rat(text.substr(pos + 5));
    std::string_view prefix = text.substr(0, pos);
    if (!prefix.empty() && prefix.back() == '*')
        prefix.remove_suffix(1);
    std::size_t split = std::string_view::npos;
    for (std::size_t i = prefix.size(); i-- > 1;)
        if (prefix[i] == '+' || prefix[i] == '-') {
            split = i;
            break;
        }
    std::string_view coeff = prefix;
    if (split != std::string_view::npos) {
        c.a = parse_rat(prefix.substr(0, split));
        coeff = prefix.substr(split);
    }
    if (!coeff.empty() && coeff.front() == '+')
        coeff.remove_prefix(1);
    if (coeff.empty())
        c.b = 1;
    else if (coeff == "-")
        c.b = -1;
    else
        c.b = parse_rat(coeff);
    if (c.b == 0)
        c.d = 0;
    return c;
}

std::string to_string(const RatCoord& c)
{
    if (c.is_rational())
        return to_string(c.a);
    std::string out;
    if (c.a != 0)
        out = to_string(c.a) + (c.b > 0 ? "+" : "");
    if (c.b == -1)
        out += "-";
    else if (c.b != 1)
        out += to_string(c.b) + "*";
    return out + "sqrt:" + to_string(c.d);
}

FieldElem Curve::rhs(const FieldElem& x) const
{
    return ((c[0] * x + c[1]) * x + c[2]) * x + c[3];
}

FieldElem Curve::derivative(const FieldElem& x) const
{
    const FieldElem three = field.from_rat(3), two = field.from_rat(2);
    return (three * c[0] * x + two * c[1]) * x + c[2];
}

namespace {

bool cubic_has_repeated_root(const FiniteField& F, const std::array<FieldElem, 4>& c)
{
    const FieldElem &a = c[0], &b = c[1], &cc = c[2], &d = c[3];
    auto k = [&](long v) { return F.from_rat(v); };
    const FieldElem disc = k(18) * a * b * cc * d - k(4) * b * b * b * d + b * b * cc * cc - k(4) * a * cc * cc * cc -
                           k(27) * a * a * d * d;
    return disc == F.zero();
}

} // namespace

Curve make_curve(const std::array<Rat, 4>& c, const BigInt& p, const std::optional<Rat>& adjoin)
{
    if (p == 2)
        throw MathError(ErrorKind::InvalidArgument, "curves need an odd characteristic");
    std::vector<std::string> notices;
    FiniteField F = FiniteField::prime(p);
    if (adjoin) {
        try {
            F = FiniteField::extension(p, *adjoin);
        }
        catch (const MathError& e) {
            if (e.kind() != ErrorKind::NotNonResidue)
                throw;
            notices.push_back("sqrt(" + to_string(*adjoin) + ") lies in F_" + to_string(p) +
                              "; curve built over the prime field");
        }
    }
    std::array<FieldElem, 4> reduced{F.from_rat(c[0]), F.from_rat(c[1]), F.from_rat(c[2]), F.from_rat(c[3])};
    if (reduced[0] == F.zero())
        throw MathError(ErrorKind::InvalidArgument, "leading coefficient vanishes mod " + to_string(p));
    const bool singular = cubic_has_repeated_root(F, reduced);
    return Curve{std::move(F), c, std::move(reduced), singular, std::move(notices)};
}

FieldElem reduce_coord(const Curve& curve, const RatCoord& c)
{
    const FiniteField& F = curve.field;
    const FieldElem a = F.from_rat(c.a);
    if (c.is_rational())
        return a;
    const BigInt& p = F.characteristic();
    const ResidueInt dr = mod_reduce(c.d, p);
    if (dr.is_zero())
        return a;
    if (auto s = sqrt_mod(dr))
        return a + F.from_rat(c.b) * FieldElem(*s, ResidueInt(0, p), F.radicand());
    if (!F.is_extension())
        throw MathError(ErrorKind::InvalidArgument,
                        "sqrt(" + to_string(c.d) + ") needs a quadratic extension of F_" + to_string(p));
    // d / d' is a square when both are non-residues.
    const auto s = sqrt_mod(dr * F.radicand().inverse());
    return a + F.from_rat(c.b) * FieldElem(ResidueInt(0, p), *s, F.radicand());
}

bool on_curve(const Curve& curve, const CurvePoint& pt)
{
    if (pt.is_infinity())
        return true;
    return pt.y() * pt.y() == curve.rhs(pt.x());
}

bool is_singular_point(const Curve& curve, const CurvePoint& pt)
{
    if (pt.is_infinity())
        return false;
    const FieldElem zero = curve.field.zero();
    return pt.y() == zero && curve.derivative(pt.x()) == zero && curve.rhs(pt.x()) == zero;
}

CurvePoint make_point(const Curve& curve, const FieldElem& x, const FieldElem& y)
{
    CurvePoint pt = CurvePoint::affine(x, y);
    if (!on_curve(curve, pt))
        throw MathError(ErrorKind::NotOnCurve, "(" + curve.field.to_string(x) + ", " + curve.field.to_string(y) +
                                                   ") is not on the curve");
    if (is_singular_point(curve, pt))
        throw MathError(ErrorKind::SingularPoint,
                        "(" + curve.field.to_string(x) + ", " + curve.field.to_string(y) + ") is singular");
    return pt;
}

CurvePoint negate(const CurvePoint& pt)
{
    if (pt.is_infinity())
        return pt;
    return CurvePoint::affine(pt.x(), -pt.y());
}

CurvePoint point_add(const Curve& curve, const CurvePoint& a, const CurvePoint& b)
{
    if (a.is_infinity())
        return b;
    if (b.is_infinity())
        return a;
    if (is_singular_point(curve, a) || is_singular_point(curve, b))
        throw MathError(ErrorKind::SingularPoint, "group law is undefined at a singular point");
    const FiniteField& F = curve.field;
    FieldElem lambda = F.zero();
    if (a.x() == b.x()) {
        if (a.y() == -b.y())
            return CurvePoint::infinity();
        lambda = curve.derivative(a.x()) * F.inverse(F.from_rat(2) * a.y());
    }
    else {
        lambda = (b.y() - a.y()) * F.inverse(b.x() - a.x());
    }
    const FieldElem x3 = (lambda * lambda - curve.c[1]) * F.inverse(curve.c[0]) - a.x() - b.x();
    const FieldElem y3 = -(a.y() + lambda * (x3 - a.x()));
    return CurvePoint::affine(x3, y3);
}

CurvePoint scalar_mul(const Curve& curve, const CurvePoint& pt, BigInt n)
{
    CurvePoint base = n < 0 ? negate(pt) : pt;
    if (n < 0)
        n = -n;
    CurvePoint acc = CurvePoint::infinity();
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t()))
            acc = point_add(curve, acc, base);
        base = point_add(curve, base, base);
        n >>= 1;
    }
    return acc;
}

BigInt order_bound(const Curve& curve)
{
    const BigInt& p = curve.field.characteristic();
    if (curve.singular)
        return curve.field.order() + 1;
    const BigInt prime_bound = hasse_upper(p);
    return curve.field.is_extension() ? prime_bound * prime_bound : prime_bound;
}

long point_order(const Curve& curve, const CurvePoint& pt)
{
    if (!on_curve(curve, pt))
        throw MathError(ErrorKind::NotOnCurve, "point is not on the curve");
    if (is_singular_point(curve, pt))
        throw MathError(ErrorKind::SingularPoint, "point order at a singular point");
    const BigInt bound = order_bound(curve);
    CurvePoint q = pt;
    long n = 1;
    while (!q.is_infinity()) {
        if (n >= bound)
            throw MathError(ErrorKind::OrderNotFound, "no order up to " + to_string(bound));
        q = point_add(curve, q, pt);
        ++n;
    }
    return n;
}

BigInt count_points(const Curve& curve, bool nonsingular_only)
{
    const FiniteField& F = curve.field;
    BigInt count = 1;
    for (const auto& x : F.elements()) {
        const FieldElem r = curve.rhs(x);
        if (r == F.zero()) {
            if (!nonsingular_only || !(curve.derivative(x) == F.zero()))
                count += 1;
        }
        else if (F.is_square(r))
            count += 2;
    }
    return count;
}

PreparedPoint prepare_point(const std::array<Rat, 4>& c, const BigInt& p, const RatCoord& x, const RatCoord& y,
                            const std::optional<Rat>& adjoin)
{
    std::optional<Rat> field_root = adjoin;
    if (!field_root)
        for (const RatCoord* coord : {&x, &y})
            if (!coord->is_rational() && legendre(mod_reduce(coord->d, p)) == -1) {
                field_root = coord->d;
                break;
            }
    Curve curve = make_curve(c, p, field_root);
    CurvePoint pt = make_point(curve, reduce_coord(curve, x), reduce_coord(curve, y));
    return {std::move(curve), std::move(pt)};
}

std::array<Rat, 4> change_variables(const std::array<Rat, 4>& c, const Rat& u, const Rat& r, const Rat& w)
{
    if (u == 0 || w == 0)
        throw MathError(ErrorKind::ZeroParameter, "change of variables needs u, w nonzero");
    const Rat &c3 = c[0], &c2 = c[1], &c1 = c[2], &c0 = c[3];
    const Rat w2 = w * w;
    return {
        Rat(c3 * u * u * u / w2),
        Rat((3 * c3 * r + c2) * u * u / w2),
        Rat((3 * c3 * r * r + 2 * c2 * r + c1) * u / w2),
        Rat((((c3 * r + c2) * r + c1) * r + c0) / w2),
    };
}

std::array<RatCoord, 2> change_point(const RatCoord& x, const RatCoord& y, const Rat& u, const Rat& r, const Rat& w)
{
    if (u == 0 || w == 0)
        throw MathError(ErrorKind::ZeroParameter, "change of variables needs u, w nonzero");
    return {RatCoord{Rat((x.a - r) / u), Rat(x.b / u), x.d}, RatCoord{Rat(y.a / w), Rat(y.b / w), y.d}};
}

GapOrderComparison gap_vs_order(const GapReport& report, const Curve& curve, const CurvePoint& pt)
{
    GapOrderComparison cmp;
    cmp.order = point_order(curve, pt);
    if (report.is_ap && report.gap) {
        cmp.gap = *report.gap;
        cmp.equal = *cmp.gap == cmp.order;
        cmp.gap_divides_order = cmp.order % *cmp.gap == 0;
        cmp.order_divides_gap = *cmp.gap % cmp.order == 0;
    }
    return cmp;
}

} // namespace somos
