#pragma once

#include "somos/poly.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace somos {

using SignedExponents = std::array<long, kNumVars>;

/// Laurent polynomial num / den with a single monomial denominator.
///
/// Normal form: den is coprime to the monomial content of num, i.e. for
/// every variable that appears in den some term of num is free of it.
/// Zero is 0/1.
class LaurentElem {
public:
    LaurentElem() = default;
    LaurentElem(long c) : num_(c) {}
    LaurentElem(const BigInt& c) : num_(c) {}
    LaurentElem(SparsePoly p) : num_(std::move(p)) {}
    LaurentElem(SparsePoly num, const Monomial& den);

    static LaurentElem variable(Var v) { return LaurentElem(SparsePoly::variable(v)); }

    /// x^e with possibly negative exponents.
    static LaurentElem monomial(const SignedExponents& e, const BigInt& c = 1);

    /// Sum of c * x^e over signed exponent vectors.
    static LaurentElem from_signed_terms(const std::vector<std::pair<SignedExponents, BigInt>>& terms);

    const SparsePoly& num() const noexcept { return num_; }
    const Monomial& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.is_one(); }
    std::size_t size() const noexcept { return num_.size(); }

    /// Terms as (signed exponents, coefficient), in numerator order.
    std::vector<std::pair<SignedExponents, BigInt>> signed_terms() const;

    Rat eval(const Assignment& at) const;

    LaurentElem operator-() const;
    LaurentElem& operator+=(const LaurentElem& o);
    LaurentElem& operator-=(const LaurentElem& o);
    LaurentElem& operator*=(const LaurentElem& o);

    friend LaurentElem operator+(LaurentElem a, const LaurentElem& b) { return a += b; }
    friend LaurentElem operator-(LaurentElem a, const LaurentElem& b) { return a -= b; }
    friend LaurentElem operator*(LaurentElem a, const LaurentElem& b) { return a *= b; }

    friend bool operator==(const LaurentElem&, const LaurentElem&) = default;

    std::string to_string() const;

    /// Idempotent; constructors already normalize.
    LaurentElem normalized() const;

private:
    void normalize();

    SparsePoly num_;
    Monomial den_;
};

/// Exact quotient in the Laurent ring. Throws ZeroDivisor or NotDivisible.
LaurentElem laurent_div(const LaurentElem& num, const LaurentElem& den);

} // namespace somos
