#pragma once

// Uniform view of the coefficient domains for the sequence engines. Each
// domain supplies exact division, a zero test and a size measure used for
// symbolic budgets.

#include "somos/bigint.hpp"
#include "somos/error.hpp"
#include "somos/laurent.hpp"
#include "somos/poly.hpp"
#include "somos/quad.hpp"
#include "somos/residue.hpp"
#include "somos/series.hpp"

#include <concepts>
#include <cstddef>
#include <string>

namespace somos {

template <class T>
struct RingTraits;

template <class T>
concept ExactRing = requires(const T& a, const T& b) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { -a } -> std::convertible_to<T>;
    { a == b } -> std::convertible_to<bool>;
    { RingTraits<T>::divide_exact(a, b) } -> std::same_as<T>;
    { RingTraits<T>::is_zero(a) } -> std::same_as<bool>;
    { RingTraits<T>::size(a) } -> std::same_as<std::size_t>;
    { RingTraits<T>::to_string(a) } -> std::same_as<std::string>;
    { RingTraits<T>::symbolic } -> std::convertible_to<bool>;
};

template <>
struct RingTraits<BigInt> {
    static constexpr bool symbolic = false;
    static BigInt divide_exact(const BigInt& a, const BigInt& b)
    {
        if (b == 0)
            throw MathError(ErrorKind::ZeroDivisor, "integer division by zero");
        if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
            throw MathError(ErrorKind::NotDivisible, to_string(b) + " does not divide " + to_string(a));
        BigInt q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
    static bool is_zero(const BigInt& a) { return a == 0; }
    static std::size_t size(const BigInt&) { return 1; }
    static std::string to_string(const BigInt& a) { return somos::to_string(a); }
};

template <>
struct RingTraits<Rat> {
    static constexpr bool symbolic = false;
    static Rat divide_exact(const Rat& a, const Rat& b)
    {
        if (b == 0)
            throw MathError(ErrorKind::ZeroDivisor, "rational division by zero");
        return a / b;
    }
    static bool is_zero(const Rat& a) { return a == 0; }
    static std::size_t size(const Rat&) { return 1; }
    static std::string to_string(const Rat& a) { return somos::to_string(a); }
};

template <>
struct RingTraits<ResidueInt> {
    static constexpr bool symbolic = false;
    static ResidueInt divide_exact(const ResidueInt& a, const ResidueInt& b)
    {
        if (b.is_zero())
            throw MathError(ErrorKind::ZeroDivisor, "residue division by zero");
        return a * b.inverse();
    }
    static bool is_zero(const ResidueInt& a) { return a.is_zero(); }
    static std::size_t size(const ResidueInt&) { return 1; }
    static std::string to_string(const ResidueInt& a) { return a.to_string(); }
};

template <>
struct RingTraits<SparsePoly> {
    static constexpr bool symbolic = true;
    static SparsePoly divide_exact(const SparsePoly& a, const SparsePoly& b) { return exact_div(a, b); }
    static bool is_zero(const SparsePoly& a) { return a.is_zero(); }
    static std::size_t size(const SparsePoly& a) { return a.size(); }
    static std::string to_string(const SparsePoly& a) { return a.to_string(); }
};

template <>
struct RingTraits<LaurentElem> {
    static constexpr bool symbolic = true;
    static LaurentElem divide_exact(const LaurentElem& a, const LaurentElem& b) { return laurent_div(a, b); }
    static bool is_zero(const LaurentElem& a) { return a.is_zero(); }
    static std::size_t size(const LaurentElem& a) { return a.size(); }
    static std::string to_string(const LaurentElem& a) { return a.to_string(); }
};

template <>
struct RingTraits<TruncSeries> {
    static constexpr bool symbolic = false;
    static TruncSeries divide_exact(const TruncSeries& a, const TruncSeries& b) { return series_div(a, b); }
    static bool is_zero(const TruncSeries& a) { return a.is_zero(); }
    static std::size_t size(const TruncSeries&) { return 1; }
    static std::string to_string(const TruncSeries& a) { return a.to_string(); }
};

/// Division in the quadratic extension. Pure elements (a + 0*sqrt d or
/// 0 + b*sqrt d) divide componentwise, which is all the companion sequences
/// need; mixed divisors go through the norm.
template <ExactRing B>
struct RingTraits<QuadElem<B>> {
    static constexpr bool symbolic = RingTraits<B>::symbolic;

    static QuadElem<B> divide_exact(const QuadElem<B>& x, const QuadElem<B>& y)
    {
        using BT = RingTraits<B>;
        const B& d = y.radicand();
        if (BT::is_zero(y.b())) {
            if (BT::is_zero(y.a()))
                throw MathError(ErrorKind::ZeroDivisor, "quadratic division by zero");
            return QuadElem<B>(div_or_zero(x.a(), y.a()), div_or_zero(x.b(), y.a()), d);
        }
        if (BT::is_zero(y.a())) {
            // (a + b r) / (e r) = b/e + (a/(e d)) r
            B ed = y.b() * d;
            return QuadElem<B>(div_or_zero(x.b(), y.b()), div_or_zero(x.a(), ed), d);
        }
        B n = y.norm();
        if (BT::is_zero(n))
            throw MathError(ErrorKind::ZeroDivisor, "quadratic divisor has zero norm");
        QuadElem<B> t = x * y.conjugate();
        return QuadElem<B>(div_or_zero(t.a(), n), div_or_zero(t.b(), n), d);
    }
    static bool is_zero(const QuadElem<B>& x)
    {
        return RingTraits<B>::is_zero(x.a()) && RingTraits<B>::is_zero(x.b());
    }
    static std::size_t size(const QuadElem<B>& x)
    {
        return RingTraits<B>::size(x.a()) + RingTraits<B>::size(x.b());
    }
    static std::string to_string(const QuadElem<B>& x)
    {
        return "(" + RingTraits<B>::to_string(x.a()) + ")+(" + RingTraits<B>::to_string(x.b()) + ")*sqrt(" +
               RingTraits<B>::to_string(x.radicand()) + ")";
    }

private:
    static B div_or_zero(const B& a, const B& b)
    {
        if (RingTraits<B>::is_zero(a))
            return a;
        return RingTraits<B>::divide_exact(a, b);
    }
};

/// The domain in which ratios of ring elements are taken: integers lift to
/// rationals, every other domain is used as is.
template <class T>
struct FieldOf {
    using type = T;
    static const T& lift(const T& x) { return x; }
};

template <>
struct FieldOf<BigInt> {
    using type = Rat;
    static Rat lift(const BigInt& x) { return Rat(x); }
};

} // namespace somos
