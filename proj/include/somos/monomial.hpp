#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace somos {

/// The fixed variable alphabet, in monomial-order significance.
enum class Var : std::uint8_t { alpha, beta, gamma, delta, s, x1, x2, x3, x4, x5 };

inline constexpr std::size_t kNumVars = 10;

std::string_view var_name(Var v) noexcept;
std::optional<Var> parse_var(std::string_view name) noexcept;

/// Initial-value variable x_i, i in 1..5.
Var initial_var(int i);

using ExponentVector = std::array<std::uint32_t, kNumVars>;

/// Power product over the fixed alphabet, packed into one 128-bit key:
///
///   bits 110..125  total degree
///   bits  99..109  exponent of alpha
///   ...
///   bits   0..10   exponent of x5
///
/// Comparing keys as unsigned integers therefore gives graded-lex order with
/// alpha most significant. Multiplication is key addition; callers in the hot
/// loops must make sure no field overflows (see SparsePoly::mul).
class Monomial {
public:
    using Key = unsigned __int128;

    static constexpr unsigned kExpBits = 11;
    static constexpr std::uint32_t kMaxExponent = (1u << kExpBits) - 1;
    static constexpr unsigned kDegShift = kExpBits * kNumVars;
    static constexpr std::uint32_t kMaxDegree = 0xFFFF;

    constexpr Monomial() = default;

    static Monomial from_exponents(const ExponentVector& e);
    static Monomial variable(Var v, std::uint32_t exp = 1);
    static constexpr Monomial from_key(Key k) noexcept
    {
        Monomial m;
        m.key_ = k;
        return m;
    }

    Key key() const noexcept { return key_; }
    bool is_one() const noexcept { return key_ == 0; }

    std::uint32_t exponent(Var v) const noexcept
    {
        return static_cast<std::uint32_t>(key_ >> shift(v)) & kMaxExponent;
    }
    std::uint32_t degree() const noexcept { return static_cast<std::uint32_t>(key_ >> kDegShift); }
    ExponentVector exponents() const noexcept;

    bool divides(const Monomial& other) const noexcept;

    /// Checked product; throws ExponentOverflow.
    Monomial operator*(const Monomial& o) const;
    Monomial mul_unchecked(const Monomial& o) const noexcept { return from_key(key_ + o.key_); }

    /// this / other; precondition other.divides(*this).
    Monomial div_unchecked(const Monomial& o) const noexcept { return from_key(key_ - o.key_); }

    static Monomial gcd(const Monomial& a, const Monomial& b);
    static Monomial lcm(const Monomial& a, const Monomial& b);

    friend constexpr bool operator==(const Monomial&, const Monomial&) = default;
    friend constexpr std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
    {
        return a.key_ <=> b.key_;
    }

    /// "alpha^2*beta"; the empty product prints as "1".
    std::string to_string() const;

    static constexpr unsigned shift(Var v) noexcept
    {
        return kExpBits * (kNumVars - 1 - static_cast<unsigned>(v));
    }

private:
    Key key_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept
    {
        const auto k = m.key();
        const auto lo = static_cast<std::uint64_t>(k);
        const auto hi = static_cast<std::uint64_t>(k >> 64);
        return static_cast<std::size_t>(lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x632BE59BD9B4E019ull + (lo << 6)));
    }
};

} // namespace somos
