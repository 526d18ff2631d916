#pragma once

#include "somos/bigint.hpp"

#include <string>
#include <vector>

namespace somos {

/// Truncated power series in a perturbation parameter eps with rational
/// coefficients, tracking how many leading coefficients are known.
///
/// Used to specialise a sequence through a vanishing term: perturb one
/// initial value by eps, run the recurrence exactly in Q[[eps]] and read off
/// the constant coefficient. Division by eps^v * unit costs v orders of
/// precision; running out of precision is reported as PrecisionLoss.
class TruncSeries {
public:
    TruncSeries() = default;
    TruncSeries(long c, std::size_t precision = kExact);
    TruncSeries(const Rat& c, std::size_t precision = kExact);

    /// c0 + eps, known to the given precision.
    static TruncSeries perturbed(const Rat& c0, std::size_t precision);

    /// Exact constants carry unbounded precision.
    static constexpr std::size_t kExact = static_cast<std::size_t>(-1);

    std::size_t precision() const noexcept { return precision_; }
    const std::vector<Rat>& coeffs() const noexcept { return coeffs_; }

    /// eps-adic valuation among known coefficients; precision() if all vanish.
    std::size_t valuation() const noexcept;
    bool is_zero() const noexcept;

    /// Value at eps = 0. Throws PrecisionLoss when nothing is known.
    Rat specialize() const;

    TruncSeries operator-() const;
    TruncSeries& operator+=(const TruncSeries& o);
    TruncSeries& operator-=(const TruncSeries& o);
    TruncSeries& operator*=(const TruncSeries& o);

    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(TruncSeries a, const TruncSeries& b) { return a *= b; }

    /// Equality of known coefficients up to the smaller precision.
    friend bool operator==(const TruncSeries& a, const TruncSeries& b);

    std::string to_string() const;

private:
    friend TruncSeries series_div(const TruncSeries& num, const TruncSeries& den);
    void trim();

    std::vector<Rat> coeffs_;  // coefficients 0..min(precision, size)-1; missing = 0
    std::size_t precision_ = kExact;
};

/// num / den. Throws ZeroDivisor (den has no known nonzero coefficient),
/// NotDivisible (num has lower eps-order than den) or PrecisionLoss.
TruncSeries series_div(const TruncSeries& num, const TruncSeries& den);

} // namespace somos
