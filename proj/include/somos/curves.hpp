#pragma once

// Cubic curves y^2 = c3 x^3 + c2 x^2 + c1 x + c0 over F_p or F_p(sqrt d),
// with the chord-tangent group law on nonsingular points.

#include "somos/divis.hpp"
#include "somos/quad.hpp"
#include "somos/residue.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace somos {

/// Field element a + b sqrt(d). Prime-field elements carry d = 0 and b = 0.
using FieldElem = QuadElem<ResidueInt>;

class FiniteField {
public:
    /// F_p. Throws InvalidArgument unless p is a prime.
    static FiniteField prime(const BigInt& p);

    /// F_p(sqrt d) for odd p. Throws NotNonResidue when d is a square mod p.
    static FiniteField extension(const BigInt& p, const Rat& d);

    const BigInt& characteristic() const noexcept { return p_; }
    bool is_extension() const noexcept { return extension_; }
    /// Radicand reduced mod p (zero for a prime field).
    const ResidueInt& radicand() const noexcept { return d_; }
    BigInt order() const { return extension_ ? p_ * p_ : p_; }

    FieldElem zero() const;
    FieldElem one() const;
    /// Throws BadReduction when p divides the denominator.
    FieldElem from_rat(const Rat& x) const;
    /// sqrt(d) of the extension.
    FieldElem root() const;

    FieldElem inverse(const FieldElem& x) const;
    FieldElem pow(const FieldElem& x, BigInt e) const;
    bool is_square(const FieldElem& x) const;
    /// (a + b sqrt d) -> (a - b sqrt d); identity on F_p.
    FieldElem frobenius(const FieldElem& x) const;

    std::vector<FieldElem> elements() const;
    std::string to_string(const FieldElem& x) const;

private:
    FiniteField(BigInt p, ResidueInt d, bool extension) : p_(std::move(p)), d_(std::move(d)), extension_(extension) {}

    BigInt p_;
    ResidueInt d_;
    bool extension_;
};

/// a + b sqrt(d) with rational parts; the textual form is "q", "sqrt:d" or "q*sqrt:d".
struct RatCoord {
    Rat a = 0;
    Rat b = 0;
    Rat d = 0;

    bool is_rational() const { return b == 0; }
};

RatCoord parse_coord(std::string_view text);
std::string to_string(const RatCoord& c);

struct CurvePoint {
    std::optional<std::array<FieldElem, 2>> xy;  // empty = point at infinity

    static CurvePoint infinity() { return {}; }
    static CurvePoint affine(FieldElem x, FieldElem y) { return {std::array<FieldElem, 2>{std::move(x), std::move(y)}}; }
    bool is_infinity() const noexcept { return !xy.has_value(); }
    const FieldElem& x() const { return (*xy)[0]; }
    const FieldElem& y() const { return (*xy)[1]; }

    friend bool operator==(const CurvePoint& a, const CurvePoint& b) { return a.xy == b.xy; }
};

struct Curve {
    FiniteField field;
    std::array<Rat, 4> coeffs;       // c3, c2, c1, c0 as given
    std::array<FieldElem, 4> c;      // reduced
    bool singular = false;
    std::vector<std::string> notices;

    FieldElem rhs(const FieldElem& x) const;
    FieldElem derivative(const FieldElem& x) const;
};

/// Reduces the coefficients into F_p, or F_p(sqrt adjoin) when adjoin is a
/// non-residue. A square adjoin builds the curve over F_p with a notice.
/// Throws BadReduction for denominators divisible by p and InvalidArgument
/// for p = 2 or c3 = 0 after reduction.
Curve make_curve(const std::array<Rat, 4>& c, const BigInt& p, const std::optional<Rat>& adjoin = std::nullopt);

/// Reduces a coordinate into the curve's field. sqrt(d) for a residue d
/// resolves to the smaller square root; otherwise the field must already
/// adjoin d (InvalidArgument).
FieldElem reduce_coord(const Curve& curve, const RatCoord& c);

bool on_curve(const Curve& curve, const CurvePoint& pt);
bool is_singular_point(const Curve& curve, const CurvePoint& pt);

/// Validated point: NotOnCurve, or SingularPoint on the singular locus.
CurvePoint make_point(const Curve& curve, const FieldElem& x, const FieldElem& y);

CurvePoint negate(const CurvePoint& pt);
CurvePoint point_add(const Curve& curve, const CurvePoint& a, const CurvePoint& b);
CurvePoint scalar_mul(const Curve& curve, const CurvePoint& pt, BigInt n);

/// Iteration bound for point_order: h = p + 1 + ceil(2 sqrt p) over F_p, h^2
/// over F_p(sqrt d), and field size + 1 for singular curves.
BigInt order_bound(const Curve& curve);

/// Smallest N >= 1 with [N]P = infinity. Throws OrderNotFound past order_bound.
long point_order(const Curve& curve, const CurvePoint& pt);

/// Affine points plus infinity, by brute force over the field. With
/// nonsingular_only, singular points are left out (the group of a singular cubic).
BigInt count_points(const Curve& curve, bool nonsingular_only = false);

/// Curve and point built from rational data. The field adjoins the radicand of
/// any sqrt coordinate (or `adjoin`) when it is a non-residue mod p.
struct PreparedPoint {
    Curve curve;
    CurvePoint point;
};

PreparedPoint prepare_point(const std::array<Rat, 4>& c, const BigInt& p, const RatCoord& x, const RatCoord& y,
                            const std::optional<Rat>& adjoin = std::nullopt);

/// Coefficients of Y^2 = f(u X + r) / w^2, the image of y^2 = f(x) under
/// x = u X + r, y = w Y.
std::array<Rat, 4> change_variables(const std::array<Rat, 4>& c, const Rat& u, const Rat& r, const Rat& w);

/// (x, y) -> ((x - r)/u, y/w).
std::array<RatCoord, 2> change_point(const RatCoord& x, const RatCoord& y, const Rat& u, const Rat& r, const Rat& w);

struct GapOrderComparison {
    std::optional<long> gap;  // only when the report is a verified progression
    long order = 0;
    bool equal = false;
    bool gap_divides_order = false;
    bool order_divides_gap = false;
};

GapOrderComparison gap_vs_order(const GapReport& report, const Curve& curve, const CurvePoint& pt);

} // namespace somos
