#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace somos {

enum class ErrorKind {
    ZeroDivisor,
    NotDivisible,
    BadReduction,
    ZeroDenominator,
    ZeroInput,
    BudgetExceeded,
    ModulusMismatch,
    ExponentOverflow,
    PrecisionLoss,
    InvalidArgument,
    ParseError,
    OrderNotFound,
    SingularPoint,
    NotOnCurve,
    NotNonResidue,
    QTooLarge,
    ZeroParameter,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Error raised by the arithmetic and sequence layers. Carries a
/// machine-readable kind and, for sequence engines, the index at which the
/// computation stopped.
class MathError : public std::runtime_error {
public:
    MathError(ErrorKind kind, const std::string& what, std::optional<long> index = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<long> index() const noexcept { return index_; }

    MathError at_index(long index) const;

private:
    ErrorKind kind_;
    std::optional<long> index_;
    std::string message_;
};

} // namespace somos
