#pragma once

// Bidirectional Somos-k engine over any exact domain:
//
//   t[n+k-2] t[n-2] = alpha t[n+k-3] t[n-1] + beta t[n+k-4] t[n]
//
// with initial values at indices 1..k. Windows are indexed over Z.

#include "somos/ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace somos {

template <class T>
class SeqWindow {
public:
    SeqWindow() = default;
    SeqWindow(long lo, std::vector<T> terms) : lo_(lo), terms_(std::move(terms)) {}

    long lo() const noexcept { return lo_; }
    long hi() const noexcept { return lo_ + static_cast<long>(terms_.size()) - 1; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    bool contains(long n) const noexcept { return !terms_.empty() && n >= lo_ && n <= hi(); }

    const T& operator[](long n) const
    {
        if (!contains(n))
            throw MathError(ErrorKind::InvalidArgument,
                            "index " + std::to_string(n) + " outside window " + std::to_string(lo_) + ".." +
                                std::to_string(hi()),
                            n);
        return terms_[static_cast<std::size_t>(n - lo_)];
    }

    const std::vector<T>& terms() const noexcept { return terms_; }

    /// Sub-window [lo, hi] (clipped to this window).
    SeqWindow slice(long lo, long hi) const
    {
        lo = std::max(lo, lo_);
        hi = std::min(hi, this->hi());
        if (lo > hi)
            return {};
        return SeqWindow(lo, std::vector<T>(terms_.begin() + (lo - lo_), terms_.begin() + (hi - lo_ + 1)));
    }

    template <class F>
    auto map(F&& f) const -> SeqWindow<std::decay_t<decltype(f(std::declval<const T&>()))>>
    {
        std::vector<std::decay_t<decltype(f(std::declval<const T&>()))>> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_)
            out.push_back(f(t));
        return {lo_, std::move(out)};
    }

    friend bool operator==(const SeqWindow&, const SeqWindow&) = default;

private:
    long lo_ = 1;
    std::vector<T> terms_;
};

template <class T>
struct SomosSpec {
    int k = 4;
    T alpha;
    T beta;
    std::vector<T> initials;  // values at indices 1..k

    void validate() const
    {
        if (k < 4)
            throw MathError(ErrorKind::InvalidArgument, "k must be at least 4");
        if (initials.size() != static_cast<std::size_t>(k))
            throw MathError(ErrorKind::InvalidArgument, "expected " + std::to_string(k) + " initial values, got " +
                                                            std::to_string(initials.size()));
    }
};

/// Unit initial values 1..1 built from a ring element equal to one.
template <class T>
SomosSpec<T> unit_spec(int k, T alpha, T beta, const T& one)
{
    return SomosSpec<T>{k, std::move(alpha), std::move(beta), std::vector<T>(static_cast<std::size_t>(k), one)};
}

struct ExtendOptions {
    /// Symbolic windows stop at index max_index going forward and at the
    /// mirrored index k+1-max_index going backward.
    long symbolic_max_index = 24;
    /// Largest admissible term size (RingTraits::size); 0 disables the check.
    std::size_t max_term_size = 0;
};

template <class T>
struct PartialWindow {
    SeqWindow<T> window;
    std::optional<MathError> error;  // why extension stopped early
};

namespace detail {

template <class T>
void check_budget(const SomosSpec<T>& spec, long n, const ExtendOptions& opt)
{
    if constexpr (RingTraits<T>::symbolic) {
        if (n > opt.symbolic_max_index || n < spec.k + 1 - opt.symbolic_max_index)
            throw MathError(ErrorKind::BudgetExceeded,
                            "symbolic index " + std::to_string(n) + " beyond budget " +
                                std::to_string(opt.symbolic_max_index),
                            n);
    }
}

template <class T>
void check_size(const T& value, long n, const ExtendOptions& opt)
{
    if (opt.max_term_size != 0 && RingTraits<T>::size(value) > opt.max_term_size)
        throw MathError(ErrorKind::BudgetExceeded,
                        "term size " + std::to_string(RingTraits<T>::size(value)) + " exceeds budget", n);
}

/// Value of t[target] from the k other terms of one recurrence instance.
/// `lower` = true solves for the lowest index j (divisor t[j+k]),
/// otherwise for the highest index m (divisor t[m-k]).
template <class T, class Get>
T solve_step(const SomosSpec<T>& spec, long target, bool lower, Get&& get)
{
    const int k = spec.k;
    const long s = lower ? 1 : -1;
    const long far = target + s * k;
    const T& divisor = get(far);
    if (RingTraits<T>::is_zero(divisor))
        throw MathError(ErrorKind::ZeroDivisor, "term " + std::to_string(far) + " vanishes", far);
    T num = spec.alpha * (get(target + s * (k - 1)) * get(target + s)) +
            spec.beta * (get(target + s * (k - 2)) * get(target + s * 2));
    try {
        return RingTraits<T>::divide_exact(num, divisor);
    }
    catch (const MathError& e) {
        throw e.at_index(target);
    }
}

} // namespace detail

/// Extends forward to `hi` and backward to `lo`. Stops at the first failing
/// index and returns what was computed, together with the error.
template <class T>
PartialWindow<T> extend_partial(const SomosSpec<T>& spec, long lo, long hi, const ExtendOptions& opt = {})
{
    spec.validate();
    const long k = spec.k;
    if (lo > 1 || hi < k)
        throw MathError(ErrorKind::InvalidArgument, "window must cover the initial indices 1.." + std::to_string(k));

    std::vector<T> fwd(spec.initials.begin(), spec.initials.end());  // indices 1..
    std::vector<T> back;                                               // indices 0, -1, ...
    PartialWindow<T> out;

    auto get = [&](long n) -> const T& {
        return n >= 1 ? fwd[static_cast<std::size_t>(n - 1)] : back[static_cast<std::size_t>(-n)];
    };

    try {
        for (long m = k + 1; m <= hi; ++m) {
            detail::check_budget(spec, m, opt);
            T v = detail::solve_step(spec, m, false, get);
            detail::check_size(v, m, opt);
            fwd.push_back(std::move(v));
        }
        for (long j = 0; j >= lo; --j) {
            detail::check_budget(spec, j, opt);
            T v = detail::solve_step(spec, j, true, get);
            detail::check_size(v, j, opt);
            back.push_back(std::move(v));
        }
    }
    catch (const MathError& e) {
        out.error = e;
    }

    std::vector<T> terms;
    terms.reserve(back.size() + fwd.size());
    for (auto it = back.rbegin(); it != back.rend(); ++it)
        terms.push_back(std::move(*it));
    for (auto& t : fwd)
        terms.push_back(std::move(t));
    out.window = SeqWindow<T>(1 - static_cast<long>(back.size()), std::move(terms));
    return out;
}

/// As extend_partial but throws the stopping error.
template <class T>
SeqWindow<T> extend(const SomosSpec<T>& spec, long lo, long hi, const ExtendOptions& opt = {})
{
    auto r = extend_partial(spec, lo, hi, opt);
    if (r.error)
        throw *r.error;
    return std::move(r.window);
}

/// Lowest indices j of every (k+1)-tuple in the window whose recurrence
/// residual is nonzero.
template <class T>
std::vector<long> recurrence_violations(const SomosSpec<T>& spec, const SeqWindow<T>& w)
{
    std::vector<long> bad;
    const long k = spec.k;
    for (long j = w.lo(); j + k <= w.hi(); ++j) {
        // n - 2 = j
        const T lhs = w[j + k] * w[j];
        const T rhs = spec.alpha * (w[j + k - 1] * w[j + 1]) + spec.beta * (w[j + k - 2] * w[j + 2]);
        if (!(lhs == rhs))
            bad.push_back(j);
    }
    return bad;
}

// ---------------------------------------------------------------------------
// Invariants

template <class F>
struct Invariants4 {
    F T;
    F I;
};

template <class F>
struct Invariants5 {
    F S;
    F J;
};

/// T and I from (t[at], ..., t[at+3]).
template <class T>
Invariants4<typename FieldOf<T>::type> invariants4(const SomosSpec<T>& spec, const SeqWindow<T>& w, long at)
{
    using F = typename FieldOf<T>::type;
    if (spec.k != 4)
        throw MathError(ErrorKind::InvalidArgument, "invariants4 needs k = 4");
    auto L = [&](long n) -> F { return F(FieldOf<T>::lift(w[n])); };
    const F t1 = L(at), t2 = L(at + 1), t3 = L(at + 2), t4 = L(at + 3);
    const F a = FieldOf<T>::lift(spec.alpha), b = FieldOf<T>::lift(spec.beta);
    const F den = t1 * t2 * t3 * t4;
    if (RingTraits<F>::is_zero(den))
        throw MathError(ErrorKind::ZeroDivisor, "zero term among the four at index " + std::to_string(at), at);
    const F num = t1 * t1 * t4 * t4 + a * (t2 * t2 * t2 * t4 + t1 * t3 * t3 * t3) + b * t2 * t2 * t3 * t3;
    F Tv = RingTraits<F>::divide_exact(num, den);
    F Iv = a * a + b * Tv;
    return {std::move(Tv), std::move(Iv)};
}

/// S and J from (t[at], ..., t[at+4]).
template <class T>
Invariants5<typename FieldOf<T>::type> invariants5(const SomosSpec<T>& spec, const SeqWindow<T>& w, long at)
{
    using F = typename FieldOf<T>::type;
    if (spec.k != 5)
        throw MathError(ErrorKind::InvalidArgument, "invariants5 needs k = 5");
    auto L = [&](long n) -> F { return F(FieldOf<T>::lift(w[n])); };
    const F t1 = L(at), t2 = L(at + 1), t3 = L(at + 2), t4 = L(at + 3), t5 = L(at + 4);
    const F a = FieldOf<T>::lift(spec.alpha), b = FieldOf<T>::lift(spec.beta);
    const F den = t1 * t2 * t3 * t4 * t5;
    if (RingTraits<F>::is_zero(den))
        throw MathError(ErrorKind::ZeroDivisor, "zero term among the five at index " + std::to_string(at), at);
    const F num = (t1 * t5 + a * t3 * t3) * (t1 * t4 * t4 + t2 * t2 * t5) + b * t2 * t3 * t3 * t3 * t4;
    F Sv = RingTraits<F>::divide_exact(num, den);
    F Jv = b + a * Sv;
    return {std::move(Sv), std::move(Jv)};
}

// ---------------------------------------------------------------------------
// Symmetry

enum class SymmetryRule {
    palindromic,     // t[j] = t[k+1-j]
    fibonacci_sign,  // t[n] = (-1)^(n+1) t[-n]
};

struct SymmetryReport {
    SymmetryRule rule = SymmetryRule::palindromic;
    long pairs_checked = 0;
    std::vector<long> violations;  // offending j (the larger index of the pair)
    bool ok() const noexcept { return violations.empty(); }
};

template <class T>
SymmetryReport symmetry_check(int k, const SeqWindow<T>& w, SymmetryRule rule = SymmetryRule::palindromic)
{
    SymmetryReport r;
    r.rule = rule;
    if (rule == SymmetryRule::palindromic) {
        // pairs (j, k+1-j) with j > k+1-j, both in the window
        for (long j = w.hi(); 2 * j > k + 1; --j) {
            const long mirror = k + 1 - j;
            if (!w.contains(j) || !w.contains(mirror))
                continue;
            ++r.pairs_checked;
            if (!(w[j] == w[mirror]))
                r.violations.push_back(j);
        }
    }
    else {
        for (long n = 1; w.contains(n) && w.contains(-n); ++n) {
            ++r.pairs_checked;
            const T rhs = (n % 2 == 1) ? T(w[-n]) : T(-w[-n]);
            if (!(w[n] == rhs))
                r.violations.push_back(n);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Periodicity

struct PeriodReport {
    BigInt modulus;
    std::optional<long> period;   // smallest period consistent with the whole window
    std::vector<BigInt> cycle;    // one period of residues starting at window.lo()
    bool contains_zero = false;   // whether residue 0 occurs anywhere in the window
};

/// Smallest P such that the reduced window repeats with period P and at
/// least one full k-tuple recurs inside the window.
PeriodReport period_mod(const SeqWindow<BigInt>& w, const BigInt& m, int k);

// ---------------------------------------------------------------------------
// Degenerate parameters

enum class Degenerate { alpha_zero, beta_zero };

std::string_view to_string(Degenerate d) noexcept;

/// Exponents e_1..e_count of t[n] = beta^e_n (alpha = 0) or alpha^e_n
/// (beta = 0) for unit-initial Somos-4, from their linear recurrences.
std::vector<long> degenerate_exponents(Degenerate which, int count);

struct DegenerateCheck {
    Degenerate which = Degenerate::alpha_zero;
    std::vector<long> exponents;  // index n -> exponents[n-1]
    std::vector<long> mismatches; // indices where the engine disagrees
    bool ok() const noexcept { return mismatches.empty(); }
};

/// Compares the exponent recurrence against a symbolic engine run with the
/// other parameter set to zero.
DegenerateCheck verify_degenerate(Degenerate which, int count);

// ---------------------------------------------------------------------------
// Equivalent sequences

enum class TransformKind { mg, mgs, somos5_abcba, sign_twist };

std::string_view to_string(TransformKind t) noexcept;
std::optional<TransformKind> parse_transform(std::string_view name) noexcept;

/// Symbolic checks use gamma, delta and, for a,b,c,b,a, the variables x1, x2,
/// x3 in place of a, b, c. Numeric checks run over Q at
/// (alpha, beta) = (alpha_at, beta_at) and need every parameter the transform
/// uses; a zero parameter raises ZeroParameter.
struct TransformParams {
    bool numeric = false;
    std::optional<Rat> gamma, delta, a, b, c;
    Rat alpha_at = 2;
    Rat beta_at = 3;
};

struct TransformReport {
    TransformKind kind = TransformKind::mg;
    bool symbolic = true;
    std::vector<long> checked;     // n = 1..n_max
    std::vector<long> mismatches;
    bool ok() const noexcept { return mismatches.empty(); }
};

/// Exponents (A_n, B_n, C_n) of the a,b,c,b,a prefactor a^A b^B / c^C.
std::array<long, 3> abcba_exponents(long n);

TransformReport verify_transform(TransformKind kind, int n_max, const TransformParams& params = {});

// ---------------------------------------------------------------------------
// Specialisation through vanishing terms

/// Runs the recurrence over Q[[eps]] with initials[perturb-1] replaced by
/// initials[perturb-1] + eps and returns the eps = 0 values. Terms through
/// which the unperturbed run would divide by zero become computable this way;
/// PrecisionLoss is raised when `precision` orders are not enough.
SeqWindow<Rat> specialize_window(const SomosSpec<Rat>& spec, long lo, long hi, int perturb, std::size_t precision);

/// Somos-4 with alpha = -1, beta = 2 and initials (1, 1, 2, 3): the Fibonacci
/// numbers extended to negative indices.
SeqWindow<BigInt> fibonacci_extension(long lo, long hi);

/// Integer view of a rational window; throws NotDivisible on a proper fraction.
SeqWindow<BigInt> to_integer_window(const SeqWindow<Rat>& w);

} // namespace somos
