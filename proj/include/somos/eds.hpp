#pragma once

// Elliptic divisibility sequences and companion sequences.
//
// An EDS is generated by the special Somos-4 form
//
//   a[m+2] a[m-2] = P(m) a[m+1] a[m-1] - Q a[m]^2
//
// with P(m) = a2^2 and Q = a1 a3 for Ward's sequences. The Somos-5 companion
// uses an index-dependent P.

#include "somos/somos.hpp"

#include <array>
#include <functional>

namespace somos {

template <class T>
struct EdsSpec {
    std::array<T, 4> initial;                 // a1..a4
    std::function<T(long)> lead;              // P(m)
    T square;                                 // Q

    /// Ward's form: P = a2^2, Q = a1 a3.
    static EdsSpec standard(T a1, T a2, T a3, T a4)
    {
        T p = a2 * a2;
        T q = a1 * a3;
        return EdsSpec{{std::move(a1), std::move(a2), std::move(a3), std::move(a4)},
                       [p](long) { return p; },
                       std::move(q)};
    }
};

/// Extends over [lo, hi]. Positive indices come from the recurrence, a0 and
/// a[-1] from the recurrence solved downward, and a[-n] = -a[n] for n >= 2.
template <class T>
SeqWindow<T> eds_extend(const EdsSpec<T>& spec, long lo, long hi, const ExtendOptions& opt = {})
{
    if (lo > 1 || hi < 4)
        throw MathError(ErrorKind::InvalidArgument, "EDS window must cover indices 1..4");
    const long top = std::max(hi, -lo);
    std::vector<T> pos(spec.initial.begin(), spec.initial.end());  // pos[n-1] = a[n]
    auto at = [&](long n) -> const T& { return pos[static_cast<std::size_t>(n - 1)]; };

    for (long n = 5; n <= top; ++n) {
        if constexpr (RingTraits<T>::symbolic) {
            if (n > opt.symbolic_max_index)
                throw MathError(ErrorKind::BudgetExceeded, "symbolic EDS index beyond budget", n);
        }
        const long m = n - 2;
        if (RingTraits<T>::is_zero(at(m - 2)))
            throw MathError(ErrorKind::ZeroDivisor, "EDS term " + std::to_string(m - 2) + " vanishes", m - 2);
        T num = spec.lead(m) * (at(m + 1) * at(m - 1)) - spec.square * (at(m) * at(m));
        try {
            pos.push_back(RingTraits<T>::divide_exact(num, at(m - 2)));
        }
        catch (const MathError& e) {
            throw e.at_index(n);
        }
    }

    std::vector<T> terms;
    terms.reserve(static_cast<std::size_t>(hi - lo + 1));
    if (lo <= 0) {
        // m = 2: a4 a0 = P(2) a3 a1 - Q a2^2
        if (RingTraits<T>::is_zero(at(4)))
            throw MathError(ErrorKind::ZeroDivisor, "EDS term 4 vanishes", 4);
        const T a0 = RingTraits<T>::divide_exact(spec.lead(2) * (at(3) * at(1)) - spec.square * (at(2) * at(2)),
                                                 at(4));
        std::optional<T> am1;
        if (lo <= -1) {
            // m = 1: a3 a[-1] = P(1) a2 a0 - Q a1^2
            if (RingTraits<T>::is_zero(at(3)))
                throw MathError(ErrorKind::ZeroDivisor, "EDS term 3 vanishes", 3);
            am1 = RingTraits<T>::divide_exact(spec.lead(1) * (at(2) * a0) - spec.square * (at(1) * at(1)), at(3));
        }
        for (long n = lo; n <= 0 && n <= hi; ++n) {
            if (n == 0)
                terms.push_back(a0);
            else if (n == -1)
                terms.push_back(*am1);
            else
                terms.push_back(-at(-n));
        }
    }
    for (long n = std::max(lo, 1L); n <= hi; ++n)
        terms.push_back(at(n));
    return SeqWindow<T>(lo, std::move(terms));
}

/// Ward's properness plus integrality: a1 = 1, a2^2 + a3^2 != 0, a2 | a4.
bool is_proper(const BigInt& a1, const BigInt& a2, const BigInt& a3, const BigInt& a4);

struct PairViolation {
    long m;
    long n;
};

struct FamilyReport {
    long checked = 0;
    long skipped = 0;  // pairs referencing indices outside the window
    std::vector<PairViolation> violations;
    bool ok() const noexcept { return violations.empty() && checked > 0; }
};

/// Pairs (m, n) with n_min <= n <= n_max, m_min <= m <= m_max and n <= m.
struct PairRange {
    long m_min = 1, m_max = 10, n_min = 1, n_max = 10;
};

namespace detail {

template <class F>
FamilyReport for_each_pair(const PairRange& r, F&& check)
{
    FamilyReport rep;
    for (long m = r.m_min; m <= r.m_max; ++m)
        for (long n = r.n_min; n <= std::min(m, r.n_max); ++n) {
            const int v = check(m, n);  // 1 ok, 0 violation, -1 skipped
            if (v < 0)
                ++rep.skipped;
            else {
                ++rep.checked;
                if (v == 0)
                    rep.violations.push_back({m, n});
            }
        }
    return rep;
}

template <class T>
bool all_in(const SeqWindow<T>& w, std::initializer_list<long> idx)
{
    for (long i : idx)
        if (!w.contains(i))
            return false;
    return true;
}

} // namespace detail

/// a[m+n] a[m-n] = a[n]^2 a[m-1] a[m+1] - a[n-1] a[n+1] a[m]^2.
template <class T>
FamilyReport verify_family_for(const SeqWindow<T>& a, const PairRange& r)
{
    return detail::for_each_pair(r, [&](long m, long n) -> int {
        if (!detail::all_in(a, {m + n, m - n, n - 1, n + 1, m - 1, m + 1}))
            return -1;
        const T lhs = a[m + n] * a[m - n];
        const T rhs = a[n] * a[n] * a[m - 1] * a[m + 1] - a[n - 1] * a[n + 1] * a[m] * a[m];
        return lhs == rhs ? 1 : 0;
    });
}

/// a1 a2 a[m+n+1] a[m-n] = a[n] a[m-1] a[n+1] a[m+2] - a[n-1] a[m] a[n+2] a[m+1].
template <class T>
FamilyReport verify_family_fora2(const SeqWindow<T>& a, const PairRange& r)
{
    return detail::for_each_pair(r, [&](long m, long n) -> int {
        if (!detail::all_in(a, {1, 2, m + n + 1, m - n, n - 1, n + 2, m - 1, m + 2}))
            return -1;
        const T lhs = a[1] * a[2] * a[m + n + 1] * a[m - n];
        const T rhs = a[n] * a[m - 1] * a[n + 1] * a[m + 2] - a[n - 1] * a[m] * a[n + 2] * a[m + 1];
        return lhs == rhs ? 1 : 0;
    });
}

/// {m in window : a[k] | a[m]} for an integer window.
std::vector<long> divisor_set(const SeqWindow<BigInt>& a, long k);

/// Indices n > 1 (both n, n+1 in window) with gcd(a[n], a[n+1]) != 1.
std::vector<long> consecutive_gcd_failures(const SeqWindow<BigInt>& a);

/// Indices m in the window where divisibility a[k] | a[m] disagrees with k | m,
/// decided by exact polynomial division.
std::vector<long> divisor_set_mismatches(const SeqWindow<SparsePoly>& a, long k);

/// EDS with a1 = 1, a2 = x2, a3 = x3, a4 = x2 x4: the generic proper EDS
/// with a2 | a4, as polynomials in x2, x3, x4.
EdsSpec<SparsePoly> generic_eds_spec();

// ---------------------------------------------------------------------------
// Companion sequences

/// Somos sequence with unit initial values together with its companion EDS
/// over the quadratic extension by sqrt(radicand). For Somos-5 there is one
/// companion per parity i, with radicand h_i; for Somos-4 both entries hold
/// the same sequence (radicand alpha).
template <class B>
struct CompanionPair {
    int k = 4;
    B alpha, beta;
    SeqWindow<B> tau;
    std::array<SeqWindow<QuadElem<B>>, 2> a;

    /// Companion used for the identity instance (m, n).
    const SeqWindow<QuadElem<B>>& companion_for(long m, long n) const
    {
        return k == 4 ? a[0] : a[static_cast<std::size_t>(((m + n) % 2 + 2) % 2)];
    }
};

template <class B>
QuadElem<B> embed(const B& x, const B& d)
{
    return QuadElem<B>(x, B(0), d);
}

/// I = (alpha + beta)^2 + beta, the Somos-4 invariant at unit initials.
template <class B>
B unit_invariant_I(const B& alpha, const B& beta)
{
    return (alpha + beta) * (alpha + beta) + beta;
}

/// h_l: 2 alpha + beta for even l, alpha + 1 for odd l.
template <class B>
B somos5_h(const B& alpha, const B& beta, long l)
{
    return (l % 2 == 0) ? B(alpha + alpha + beta) : B(alpha + B(1));
}

/// a1 = 1, a2 = -sqrt(alpha), a3 = -beta, a4 = sqrt(alpha) I; recurrence
/// coefficients alpha and -beta as in Somos-4.
template <class B>
CompanionPair<B> companion4(const B& alpha, const B& beta, long lo, long hi, const ExtendOptions& opt = {})
{
    using Q = QuadElem<B>;
    CompanionPair<B> pair;
    pair.k = 4;
    pair.alpha = alpha;
    pair.beta = beta;
    pair.tau = extend(unit_spec<B>(4, alpha, beta, B(1)), lo, hi, opt);
    const B& d = alpha;
    const B zero(0);
    EdsSpec<Q> spec{{Q(B(1), zero, d), Q(zero, B(-1), d), Q(-beta, zero, d), Q(zero, unit_invariant_I(alpha, beta), d)},
                    [p = embed(alpha, d)](long) { return p; },
                    embed(B(-beta), d)};
    pair.a[0] = eds_extend(spec, std::min(lo, 0L), std::max(hi, 4L), opt).slice(lo, hi);
    pair.a[1] = pair.a[0];
    return pair;
}

/// For parity i: a1 = 1, a2 = sqrt(h_i), a3 = alpha, a4 = -beta a2 and
/// a[k+2] a[k-2] = h_{i+k} a[k+1] a[k-1] - alpha a[k]^2.
template <class B>
SeqWindow<QuadElem<B>> companion5_sequence(const B& alpha, const B& beta, int parity, long lo, long hi,
                                           const ExtendOptions& opt = {})
{
    using Q = QuadElem<B>;
    const B d = somos5_h(alpha, beta, parity);
    const B zero(0);
    const B h_even = somos5_h(alpha, beta, 0), h_odd = somos5_h(alpha, beta, 1);
    EdsSpec<Q> spec{{Q(B(1), zero, d), Q(zero, B(1), d), Q(alpha, zero, d), Q(zero, B(-beta), d)},
                    [=](long k) { return embed(((parity + k) % 2 + 2) % 2 == 0 ? h_even : h_odd, d); },
                    embed(alpha, d)};
    return eds_extend(spec, std::min(lo, 0L), std::max(hi, 4L), opt).slice(lo, hi);
}

template <class B>
CompanionPair<B> companion5(const B& alpha, const B& beta, long lo, long hi, const ExtendOptions& opt = {})
{
    CompanionPair<B> pair;
    pair.k = 5;
    pair.alpha = alpha;
    pair.beta = beta;
    pair.tau = extend(unit_spec<B>(5, alpha, beta, B(1)), lo, hi, opt);
    pair.a[0] = companion5_sequence(alpha, beta, 0, lo, hi, opt);
    pair.a[1] = companion5_sequence(alpha, beta, 1, lo, hi, opt);
    return pair;
}

struct CompanionReport {
    FamilyReport for1;
    FamilyReport for2;
    bool ok() const noexcept { return for1.ok() && for2.ok(); }
};

/// Checks
///   t[m+n] t[m-n]          = a[n]^2 t[m-1] t[m+1] - a[n-1] a[n+1] t[m]^2
///   a1 a2 t[m+n+1] t[m-n]  = a[n] t[m-1] a[n+1] t[m+2] - a[n-1] t[m] a[n+2] t[m+1]
/// componentwise in the quadratic extension.
template <class B>
CompanionReport verify_companion(const CompanionPair<B>& pair, const PairRange& r)
{
    CompanionReport rep;
    const auto& t = pair.tau;
    rep.for1 = detail::for_each_pair(r, [&](long m, long n) -> int {
        const auto& a = pair.companion_for(m, n);
        if (!detail::all_in(t, {m + n, m - n, m - 1, m + 1}) || !detail::all_in(a, {n - 1, n, n + 1}))
            return -1;
        const B& d = a[n].radicand();
        auto T = [&](long i) { return embed(t[i], d); };
        const auto lhs = T(m + n) * T(m - n);
        const auto rhs = a[n] * a[n] * T(m - 1) * T(m + 1) - a[n - 1] * a[n + 1] * T(m) * T(m);
        return lhs == rhs ? 1 : 0;
    });
    rep.for2 = detail::for_each_pair(r, [&](long m, long n) -> int {
        const auto& a = pair.companion_for(m, n);
        if (!detail::all_in(t, {m + n + 1, m - n, m - 1, m, m + 1, m + 2}) ||
            !detail::all_in(a, {1, 2, n - 1, n, n + 1, n + 2}))
            return -1;
        const B& d = a[n].radicand();
        auto T = [&](long i) { return embed(t[i], d); };
        const auto lhs = a[1] * a[2] * T(m + n + 1) * T(m - n);
        const auto rhs = a[n] * T(m - 1) * a[n + 1] * T(m + 2) - a[n - 1] * T(m) * a[n + 2] * T(m + 1);
        return lhs == rhs ? 1 : 0;
    });
    return rep;
}

/// Per-index comparison of the two Somos-5 companions.
struct RatioRow {
    long k;
    bool ratio_holds;    // a_k(0)^2 h_1 == a_k(1)^2 h_0
    bool squares_equal;  // a_k(0)^2 == a_k(1)^2
};

template <class B>
std::vector<RatioRow> companion5_ratio(const CompanionPair<B>& pair, long k_max)
{
    const B h0 = somos5_h(pair.alpha, pair.beta, 0), h1 = somos5_h(pair.alpha, pair.beta, 1);
    std::vector<RatioRow> rows;
    for (long k = 1; k <= k_max; ++k) {
        const auto s0 = pair.a[0][k] * pair.a[0][k];
        const auto s1 = pair.a[1][k] * pair.a[1][k];
        // squares of pure elements lie in the base ring
        rows.push_back({k, s0.a() * h1 == s1.a() * h0, s0.a() == s1.a()});
    }
    return rows;
}

/// True when every term is pure: in the base ring for odd n, in
/// sqrt(d) * base for even n (n != 0).
template <class B>
bool companion_parity_ok(const SeqWindow<QuadElem<B>>& a)
{
    for (long n = a.lo(); n <= a.hi(); ++n) {
        const bool even = n % 2 == 0;
        const auto& x = a[n];
        if (even ? !RingTraits<B>::is_zero(x.a()) : !RingTraits<B>::is_zero(x.b()))
            return false;
    }
    return true;
}

/// Value of x when sqrt(d) is rational; nullopt otherwise.
std::optional<Rat> resolve_sqrt(const QuadElem<Rat>& x);

} // namespace somos
