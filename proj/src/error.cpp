#include "somos/error.hpp"

namespace somos {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::ZeroDivisor: return "ZeroDivisor";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ModulusMismatch: return "ModulusMismatch";
    case ErrorKind::ExponentOverflow: return "ExponentOverflow";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::OrderNotFound: return "OrderNotFound";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::NotOnCurve: return "NotOnCurve";
    case ErrorKind::NotNonResidue: return "NotNonResidue";
    case ErrorKind::QTooLarge: return "QTooLarge";
    case ErrorKind::ZeroParameter: return "ZeroParameter";
    }
    return "Unknown";
}

namespace {

std::string compose(ErrorKind kind, const std::string& what, std::optional<long> index)
{
    std::string msg(to_string(kind));
    msg += ": ";
    msg += what;
    if (index)
        msg += " (at index " + std::to_string(*index) + ")";
    return msg;
}

} // namespace

MathError::MathError(ErrorKind kind, const std::string& what, std::optional<long> index)
    : std::runtime_error(compose(kind, what, index)), kind_(kind), index_(index), message_(what)
{
}

MathError MathError::at_index(long index) const
{
    return MathError(kind_, message_, index);
}

} // namespace somos
