#include "somos/somos.hpp"

#include <array>

namespace somos {

PeriodReport period_mod(const SeqWindow<BigInt>& w, const BigInt& m, int k)
{
    if (m < 1)
        throw MathError(ErrorKind::InvalidArgument, "modulus must be positive");
    PeriodReport r;
    r.modulus = m;
    std::vector<BigInt> res;
    res.reserve(w.size());
    for (const auto& t : w.terms()) {
        BigInt v;
        mpz_fdiv_r(v.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
        if (v == 0)
            r.contains_zero = true;
        res.push_back(std::move(v));
    }
    const std::size_t n = res.size();
    for (std::size_t p = 1; p + static_cast<std::size_t>(k) <= n; ++p) {
        bool ok = true;
        for (std::size_t i = 0; i + p < n && ok; ++i)
            ok = res[i] == res[i + p];
        if (ok) {
            r.period = static_cast<long>(p);
            r.cycle.assign(res.begin(), res.begin() + static_cast<long>(p));
            break;
        }
    }
    return r;
}

std::string_view to_string(Degenerate d) noexcept
{
    return d == Degenerate::alpha_zero ? "alpha_zero" : "beta_zero";
}

std::vector<long> degenerate_exponents(Degenerate which, int count)
{
    std::vector<long> e(static_cast<std::size_t>(std::max(count, 0)), 0);
    // e[i] holds the exponent at index i+1
    for (int n = 5; n <= count; ++n) {
        const std::size_t i = static_cast<std::size_t>(n - 1);
        if (which == Degenerate::alpha_zero)
            e[i] = 2 * e[i - 2] - e[i - 4] + 1;  // k_{n} = 2k_{n-2} - k_{n-4} + 1
        else
            e[i] = e[i - 1] + e[i - 3] - e[i - 4] + 1;  // l_{n} = l_{n-1} + l_{n-3} - l_{n-4} + 1
    }
    return e;
}

DegenerateCheck verify_degenerate(Degenerate which, int count)
{
    DegenerateCheck r;
    r.which = which;
    r.exponents = degenerate_exponents(which, count);
    if (count < 4)
        return r;
    const Var live = which == Degenerate::alpha_zero ? Var::beta : Var::alpha;
    SomosSpec<SparsePoly> spec{4, SparsePoly(0), SparsePoly(0), std::vector<SparsePoly>(4, SparsePoly(1))};
    (which == Degenerate::alpha_zero ? spec.beta : spec.alpha) = SparsePoly::variable(live);
    ExtendOptions opt;
    opt.symbolic_max_index = count;
    const auto w = extend(spec, 1, count, opt);
    for (long n = 1; n <= count; ++n) {
        const auto e = static_cast<std::uint32_t>(r.exponents[static_cast<std::size_t>(n - 1)]);
        if (!(w[n] == SparsePoly::monomial(Monomial::variable(live, e))))
            r.mismatches.push_back(n);
    }
    return r;
}

std::string_view to_string(TransformKind t) noexcept
{
    switch (t) {
    case TransformKind::mg: return "mg";
    case TransformKind::mgs: return "mgs";
    case TransformKind::somos5_abcba: return "somos5_abcba";
    case TransformKind::sign_twist: return "sign_twist";
    }
    return "?";
}

std::optional<TransformKind> parse_transform(std::string_view name) noexcept
{
    for (auto t : {TransformKind::mg, TransformKind::mgs, TransformKind::somos5_abcba, TransformKind::sign_twist})
        if (to_string(t) == name)
            return t;
    return std::nullopt;
}

std::array<long, 3> abcba_exponents(long n)
{
    const long sign = (n % 2 == 0) ? 1 : -1;  // (-1)^n
    const long q = 2 * n * n - 12 * n;        // 8 * (n^2/4 - 3n/2)
    return {(q + 17 - sign) / 8, (1 + sign) / 2, (q + 13 + 3 * sign) / 8};
}

namespace {

// Sequence prefactor exponents for the a,b,c,b,a family and the gamma/delta
// families, as signed integers.
long mg_gamma_exponent(long n)
{
    return -((n - 1) * (n - 4) / 2);
}

long mgs_delta_exponent(long n)
{
    return (n - 2) * (n - 3) / 2;
}

Rat rat_pow(const Rat& x, long e)
{
    Rat r = 1;
    Rat b = e >= 0 ? x : Rat(1 / x);
    for (long i = 0; i < std::abs(e); ++i)
        r *= b;
    return r;
}

// Rewrites p(alpha, beta) as p(alpha * u_alpha, beta * u_beta) * prefactor
// where u_alpha, u_beta and prefactor are Laurent monomials.
LaurentElem rescale(const SparsePoly& p, const SignedExponents& u_alpha, const SignedExponents& u_beta,
                    const SignedExponents& prefactor)
{
    std::vector<std::pair<SignedExponents, BigInt>> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
        SignedExponents e{};
        const long i = t.mono.exponent(Var::alpha);
        const long j = t.mono.exponent(Var::beta);
        for (std::size_t v = 0; v < kNumVars; ++v)
            e[v] = static_cast<long>(t.mono.exponent(static_cast<Var>(v))) + i * u_alpha[v] + j * u_beta[v] +
                   prefactor[v];
        terms.emplace_back(e, t.coeff);
    }
    return LaurentElem::from_signed_terms(terms);
}

constexpr std::size_t idx(Var v)
{
    return static_cast<std::size_t>(v);
}

const Rat& require(const std::optional<Rat>& v, const char* name)
{
    if (!v)
        throw MathError(ErrorKind::InvalidArgument, std::string("numeric transform needs parameter ") + name);
    if (*v == 0)
        throw MathError(ErrorKind::ZeroParameter, std::string("parameter ") + name + " is zero");
    return *v;
}

TransformReport verify_symbolic(TransformKind kind, int n_max)
{
    TransformReport r;
    r.kind = kind;
    r.symbolic = true;
    ExtendOptions opt;
    opt.symbolic_max_index = n_max;
    const int k = kind == TransformKind::somos5_abcba ? 5 : 4;
    const SparsePoly A = SparsePoly::variable(Var::alpha), B = SparsePoly::variable(Var::beta);
    const auto unit = extend(unit_spec<SparsePoly>(k, A, B, SparsePoly(1)), 1, n_max, opt);

    if (kind == TransformKind::sign_twist) {
        SomosSpec<SparsePoly> twisted{4, A, B, {SparsePoly(1), SparsePoly(-1), SparsePoly(-1), SparsePoly(1)}};
        const auto lhs = extend(twisted, 1, n_max, opt);
        for (long n = 1; n <= n_max; ++n) {
            SparsePoly rhs = unit[n].substitute(Var::alpha, -A);
            if ((n / 2) % 2 == 1)
                rhs = -rhs;
            r.checked.push_back(n);
            if (!(lhs[n] == rhs))
                r.mismatches.push_back(n);
        }
        return r;
    }

    const LaurentElem LA = LaurentElem::variable(Var::alpha), LB = LaurentElem::variable(Var::beta);
    SomosSpec<LaurentElem> spec{k, LA, LB, {}};
    const LaurentElem g = LaurentElem::variable(Var::gamma), d = LaurentElem::variable(Var::delta);
    const LaurentElem x1 = LaurentElem::variable(Var::x1), x2 = LaurentElem::variable(Var::x2),
                      x3 = LaurentElem::variable(Var::x3);
    if (kind == TransformKind::mg)
        spec.initials = {LaurentElem(1), g, g, LaurentElem(1)};
    else if (kind == TransformKind::mgs)
        spec.initials = {d, g, g, d};
    else
        spec.initials = {x1, x2, x3, x2, x1};
    const auto lhs = extend(spec, 1, n_max, opt);

    for (long n = 1; n <= n_max; ++n) {
        SignedExponents ua{}, ub{}, pre{};
        switch (kind) {
        case TransformKind::mg:
            ua[idx(Var::gamma)] = 3;
            ub[idx(Var::gamma)] = 4;
            pre[idx(Var::gamma)] = mg_gamma_exponent(n);
            break;
        case TransformKind::mgs:
            ua[idx(Var::gamma)] = 3;
            ua[idx(Var::delta)] = -3;
            ub[idx(Var::gamma)] = 4;
            ub[idx(Var::delta)] = -4;
            pre[idx(Var::gamma)] = mg_gamma_exponent(n);
            pre[idx(Var::delta)] = mgs_delta_exponent(n);
            break;
        default: {
            const auto [An, Bn, Cn] = abcba_exponents(n);
            ua[idx(Var::x3)] = 2;
            ua[idx(Var::x1)] = -2;
            ub[idx(Var::x3)] = 3;
            ub[idx(Var::x1)] = -3;
            pre[idx(Var::x1)] = An;
            pre[idx(Var::x2)] = Bn;
            pre[idx(Var::x3)] = -Cn;
            break;
        }
        }
        r.checked.push_back(n);
        if (!(lhs[n] == rescale(unit[n], ua, ub, pre)))
            r.mismatches.push_back(n);
    }
    return r;
}

TransformReport verify_numeric(TransformKind kind, int n_max, const TransformParams& p)
{
    TransformReport r;
    r.kind = kind;
    r.symbolic = false;
    const int k = kind == TransformKind::somos5_abcba ? 5 : 4;
    const Rat& al = p.alpha_at;
    const Rat& be = p.beta_at;

    SomosSpec<Rat> lhs_spec{k, al, be, {}};
    Rat a_scale = 1, b_scale = 1;
    switch (kind) {
    case TransformKind::sign_twist:
        lhs_spec.initials = {1, -1, -1, 1};
        a_scale = -1;
        break;
    case TransformKind::mg: {
        const Rat& g = require(p.gamma, "gamma");
        lhs_spec.initials = {1, g, g, 1};
        a_scale = rat_pow(g, 3);
        b_scale = rat_pow(g, 4);
        break;
    }
    case TransformKind::mgs: {
        const Rat& g = require(p.gamma, "gamma");
        const Rat& d = require(p.delta, "delta");
        lhs_spec.initials = {d, g, g, d};
        a_scale = rat_pow(g / d, 3);
        b_scale = rat_pow(g / d, 4);
        break;
    }
    case TransformKind::somos5_abcba: {
        const Rat& a = require(p.a, "a");
        const Rat& b = require(p.b, "b");
        const Rat& c = require(p.c, "c");
        lhs_spec.initials = {a, b, c, b, a};
        a_scale = rat_pow(c / a, 2);
        b_scale = rat_pow(c / a, 3);
        break;
    }
    }
    const auto lhs = extend(lhs_spec, 1, n_max);
    const auto base = extend(unit_spec<Rat>(k, al * a_scale, be * b_scale, Rat(1)), 1, n_max);
    for (long n = 1; n <= n_max; ++n) {
        Rat pre = 1;
        switch (kind) {
        case TransformKind::sign_twist: pre = (n / 2) % 2 == 1 ? -1 : 1; break;
        case TransformKind::mg: pre = rat_pow(*p.gamma, mg_gamma_exponent(n)); break;
        case TransformKind::mgs:
            pre = rat_pow(*p.gamma, mg_gamma_exponent(n)) * rat_pow(*p.delta, mgs_delta_exponent(n));
            break;
        case TransformKind::somos5_abcba: {
            const auto [An, Bn, Cn] = abcba_exponents(n);
            pre = rat_pow(*p.a, An) * rat_pow(*p.b, Bn) * rat_pow(*p.c, -Cn);
            break;
        }
        }
        r.checked.push_back(n);
        if (lhs[n] != pre * base[n])
            r.mismatches.push_back(n);
    }
    return r;
}

} // namespace

TransformReport verify_transform(TransformKind kind, int n_max, const TransformParams& params)
{
    const int k = kind == TransformKind::somos5_abcba ? 5 : 4;
    if (n_max < k + 1)
        throw MathError(ErrorKind::InvalidArgument, "n_max must be at least k+1");
    return params.numeric ? verify_numeric(kind, n_max, params) : verify_symbolic(kind, n_max);
}

SeqWindow<Rat> specialize_window(const SomosSpec<Rat>& spec, long lo, long hi, int perturb, std::size_t precision)
{
    spec.validate();
    if (perturb < 1 || perturb > spec.k)
        throw MathError(ErrorKind::InvalidArgument, "perturbed index must be an initial index");
    SomosSpec<TruncSeries> s{spec.k, TruncSeries(spec.alpha), TruncSeries(spec.beta), {}};
    for (int i = 1; i <= spec.k; ++i) {
        const Rat& v = spec.initials[static_cast<std::size_t>(i - 1)];
        s.initials.push_back(i == perturb ? TruncSeries::perturbed(v, precision) : TruncSeries(v));
    }
    return extend(s, lo, hi).map([](const TruncSeries& t) { return t.specialize(); });
}

SeqWindow<BigInt> to_integer_window(const SeqWindow<Rat>& w)
{
    long n = w.lo();
    return w.map([&n](const Rat& x) {
        if (!is_integer(x))
            throw MathError(ErrorKind::NotDivisible, "term " + to_string(x) + " is not an integer", n);
        ++n;
        return BigInt(x.get_num());
    });
}

SeqWindow<BigInt> fibonacci_extension(long lo, long hi)
{
    const SomosSpec<Rat> spec{4, Rat(-1), Rat(2), {Rat(1), Rat(1), Rat(2), Rat(3)}};
    // t[0] = 0 is divided by once going backward, costing one order.
    return to_integer_window(specialize_window(spec, std::min(lo, 1L), std::max(hi, 4L), 3, 4))
        .slice(lo, hi);
}

} // namespace somos
