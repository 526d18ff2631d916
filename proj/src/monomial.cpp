#include "somos/monomial.hpp"

#include "somos/error.hpp"

#include <algorithm>

namespace somos {

namespace {

constexpr std::array<std::string_view, kNumVars> kNames = {
    "alpha", "beta", "gamma", "delta", "s", "x1", "x2", "x3", "x4", "x5",
};

} // namespace

std::string_view var_name(Var v) noexcept
{
    return kNames[static_cast<std::size_t>(v)];
}

std::optional<Var> parse_var(std::string_view name) noexcept
{
    for (std::size_t i = 0; i < kNumVars; ++i)
        if (kNames[i] == name)
            return static_cast<Var>(i);
    return std::nullopt;
}

Var initial_var(int i)
{
    if (i < 1 || i > 5)
        throw MathError(ErrorKind::InvalidArgument, "initial-value variable index must be 1..5");
    return static_cast<Var>(static_cast<int>(Var::x1) + i - 1);
}

Monomial Monomial::from_exponents(const ExponentVector& e)
{
    Key key = 0;
    std::uint64_t deg = 0;
    for (std::size_t i = 0; i < kNumVars; ++i) {
        if (e[i] > kMaxExponent)
            throw MathError(ErrorKind::ExponentOverflow, "exponent exceeds " + std::to_string(kMaxExponent));
        key |= static_cast<Key>(e[i]) << shift(static_cast<Var>(i));
        deg += e[i];
    }
    if (deg > kMaxDegree)
        throw MathError(ErrorKind::ExponentOverflow, "total degree exceeds " + std::to_string(kMaxDegree));
    key |= static_cast<Key>(deg) << kDegShift;
    return from_key(key);
}

Monomial Monomial::variable(Var v, std::uint32_t exp)
{
    ExponentVector e{};
    e[static_cast<std::size_t>(v)] = exp;
    return from_exponents(e);
}

ExponentVector Monomial::exponents() const noexcept
{
    ExponentVector e{};
    for (std::size_t i = 0; i < kNumVars; ++i)
        e[i] = exponent(static_cast<Var>(i));
    return e;
}

bool Monomial::divides(const Monomial& other) const noexcept
{
    if (degree() > other.degree())
        return false;
    for (std::size_t i = 0; i < kNumVars; ++i) {
        const auto v = static_cast<Var>(i);
        if (exponent(v) > other.exponent(v))
            return false;
    }
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const
{
    ExponentVector e = exponents();
    for (std::size_t i = 0; i < kNumVars; ++i)
        e[i] += o.exponent(static_cast<Var>(i));
    return from_exponents(e);
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b)
{
    ExponentVector e{};
    for (std::size_t i = 0; i < kNumVars; ++i) {
        const auto v = static_cast<Var>(i);
        e[i] = std::min(a.exponent(v), b.exponent(v));
    }
    return from_exponents(e);
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b)
{
    ExponentVector e{};
    for (std::size_t i = 0; i < kNumVars; ++i) {
        const auto v = static_cast<Var>(i);
        e[i] = std::max(a.exponent(v), b.exponent(v));
    }
    return from_exponents(e);
}

std::string Monomial::to_string() const
{
    if (is_one())
        return "1";
    std::string out;
    for (std::size_t i = 0; i < kNumVars; ++i) {
        const auto v = static_cast<Var>(i);
        const auto e = exponent(v);
        if (e == 0)
            continue;
        if (!out.empty())
            out += '*';
        out += var_name(v);
        if (e > 1)
            out += "^" + std::to_string(e);
    }
    return out;
}

} // namespace somos
