#pragma once

#include "somos/bigint.hpp"
#include "somos/monomial.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace somos {

struct Term {
    Monomial mono;
    BigInt coeff;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Variable assignment for evaluation; unassigned variables are an error.
using Assignment = std::map<Var, Rat>;

/// Sparse multivariate polynomial with integer coefficients over the fixed
/// alphabet. Terms are kept strictly decreasing in graded-lex order with no
/// zero coefficients, so equality is structural and the leading term is front().
class SparsePoly {
public:
    SparsePoly() = default;
    SparsePoly(long c);
    SparsePoly(const BigInt& c);

    static SparsePoly variable(Var v);
    static SparsePoly monomial(const Monomial& m, const BigInt& c = 1);

    /// Combines like terms and drops zeros; input order is irrelevant.
    static SparsePoly from_terms(std::vector<Term> terms);

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    std::size_t size() const noexcept { return terms_.size(); }
    std::span<const Term> terms() const noexcept { return terms_; }
    const Term& leading() const { return terms_.front(); }

    /// Constant term (0 when absent).
    BigInt constant_term() const;

    std::uint32_t degree() const noexcept;
    std::uint32_t degree(Var v) const noexcept;

    /// Componentwise minimum exponent over all terms (the monomial content).
    Monomial monomial_content() const;

    /// Divide every term by m; precondition m | every term.
    SparsePoly div_monomial(const Monomial& m) const;
    SparsePoly mul_monomial(const Monomial& m) const;

    /// Rewrites each term's monomial through f (coefficients untouched).
    SparsePoly map_monomials(const std::function<Monomial(const Monomial&)>& f) const;

    SparsePoly pow(unsigned e) const;

    /// Exact value at a rational point. Throws ZeroDenominator never (polynomials
    /// have no poles) and InvalidArgument if a needed variable is unassigned.
    Rat eval(const Assignment& at) const;

    /// Substitutes a full polynomial for one variable.
    SparsePoly substitute(Var v, const SparsePoly& value) const;

    SparsePoly operator-() const;
    SparsePoly& operator+=(const SparsePoly& o);
    SparsePoly& operator-=(const SparsePoly& o);
    SparsePoly& operator*=(const SparsePoly& o);

    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);

    friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

    std::string to_string() const;

private:
    friend struct PolyKernel;
    std::vector<Term> terms_;
};

/// Exact quotient num/den, or nullopt when den does not divide num in Z[vars].
/// Leading-term reduction in graded-lex order. Throws ZeroDivisor for den = 0.
std::optional<SparsePoly> try_exact_div(const SparsePoly& num, const SparsePoly& den);

/// As try_exact_div but throws NotDivisible.
SparsePoly exact_div(const SparsePoly& num, const SparsePoly& den);

/// Parses "alpha^2 + 3*alpha*beta - (x1+1)^2" style expressions over the
/// alphabet (names as printed by var_name). Throws ParseError.
SparsePoly parse_poly(std::string_view text);

} // namespace somos
