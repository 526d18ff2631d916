#include "somos/series.hpp"

#include "somos/error.hpp"

#include <algorithm>

namespace somos {

namespace {

constexpr std::size_t kInf = TruncSeries::kExact;

std::size_t sat_add(std::size_t a, std::size_t b)
{
    return (a == kInf || b == kInf || a > kInf - b) ? kInf : a + b;
}

} // namespace

TruncSeries::TruncSeries(long c, std::size_t precision) : TruncSeries(Rat(c), precision) {}

TruncSeries::TruncSeries(const Rat& c, std::size_t precision) : coeffs_{c}, precision_(precision)
{
    trim();
}

TruncSeries TruncSeries::perturbed(const Rat& c0, std::size_t precision)
{
    TruncSeries s;
    s.coeffs_ = {c0, Rat(1)};
    s.precision_ = precision;
    s.trim();
    return s;
}

void TruncSeries::trim()
{
    if (precision_ != kInf && coeffs_.size() > precision_)
        coeffs_.resize(precision_);
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

std::size_t TruncSeries::valuation() const noexcept
{
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            return i;
    return precision_;
}

bool TruncSeries::is_zero() const noexcept
{
    return coeffs_.empty();
}

Rat TruncSeries::specialize() const
{
    if (precision_ == 0)
        throw MathError(ErrorKind::PrecisionLoss, "series carries no known coefficients");
    return coeffs_.empty() ? Rat(0) : coeffs_[0];
}

TruncSeries TruncSeries::operator-() const
{
    TruncSeries r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o)
{
    if (coeffs_.size() < o.coeffs_.size())
        coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    precision_ = std::min(precision_, o.precision_);
    trim();
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o)
{
    return *this += -o;
}

TruncSeries& TruncSeries::operator*=(const TruncSeries& o)
{
    // Unknown tails enter at order precision + valuation of the other factor.
    const std::size_t p = std::min(sat_add(precision_, o.valuation()), sat_add(o.precision_, valuation()));
    std::vector<Rat> out;
    if (!coeffs_.empty() && !o.coeffs_.empty()) {
        std::size_t n = coeffs_.size() + o.coeffs_.size() - 1;
        if (p != kInf)
            n = std::min(n, p);
        out.assign(n, Rat(0));
        for (std::size_t i = 0; i < coeffs_.size() && i < n; ++i)
            for (std::size_t j = 0; j < o.coeffs_.size() && i + j < n; ++j)
                out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    coeffs_ = std::move(out);
    precision_ = p;
    trim();
    return *this;
}

bool operator==(const TruncSeries& a, const TruncSeries& b)
{
    const std::size_t n = std::min({a.precision_, b.precision_, std::max(a.coeffs_.size(), b.coeffs_.size())});
    for (std::size_t i = 0; i < n; ++i) {
        const Rat x = i < a.coeffs_.size() ? a.coeffs_[i] : Rat(0);
        const Rat y = i < b.coeffs_.size() ? b.coeffs_[i] : Rat(0);
        if (x != y)
            return false;
    }
    return true;
}

std::string TruncSeries::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0)
            continue;
        if (!out.empty())
            out += " + ";
        out += somos::to_string(coeffs_[i]);
        if (i == 1)
            out += "*eps";
        else if (i > 1)
            out += "*eps^" + std::to_string(i);
    }
    if (out.empty())
        out = "0";
    if (precision_ != kInf)
        out += " + O(eps^" + std::to_string(precision_) + ")";
    return out;
}

TruncSeries series_div(const TruncSeries& num, const TruncSeries& den)
{
    if (den.is_zero())
        throw MathError(ErrorKind::ZeroDivisor, "series divisor has no known nonzero coefficient");
    const std::size_t vd = den.valuation();
    if (num.is_zero() && num.precision_ == kInf)
        return TruncSeries(0L);
    const std::size_t vn = num.valuation();
    if (vn < vd) {
        if (vn < num.precision_ && vn < num.coeffs_.size())
            throw MathError(ErrorKind::NotDivisible, "series numerator has lower order than the divisor");
    }
    if (num.precision_ <= vd)
        throw MathError(ErrorKind::PrecisionLoss, "series quotient has no known coefficients");

    // Quotient precision: shifted numerator precision, and the divisor's
    // unknown tail scaled by the quotient's own valuation.
    std::size_t p = num.precision_ == kInf ? kInf : num.precision_ - vd;
    if (den.precision_ != kInf) {
        const std::size_t vq = vn - vd;
        p = std::min(p, sat_add(den.precision_ - vd, vq));
    }
    if (p == kInf) {
        if (den.coeffs_.size() - vd != 1)
            throw MathError(ErrorKind::InvalidArgument, "exact series quotient would not terminate");
        p = num.coeffs_.size() > vd ? num.coeffs_.size() - vd : 0;
        TruncSeries q;
        q.coeffs_.assign(p, Rat(0));
        for (std::size_t k = 0; k < p; ++k)
            q.coeffs_[k] = num.coeffs_[k + vd] / den.coeffs_[vd];
        q.precision_ = kInf;
        q.trim();
        return q;
    }
    if (p == 0)
        throw MathError(ErrorKind::PrecisionLoss, "series quotient has no known coefficients");

    auto nc = [&](std::size_t i) { return i < num.coeffs_.size() ? num.coeffs_[i] : Rat(0); };
    auto dc = [&](std::size_t i) { return i < den.coeffs_.size() ? den.coeffs_[i] : Rat(0); };
    TruncSeries q;
    q.coeffs_.assign(p, Rat(0));
    const Rat lead = dc(vd);
    for (std::size_t k = 0; k < p; ++k) {
        Rat acc = nc(k + vd);
        for (std::size_t j = 1; j <= k; ++j)
            acc -= dc(j + vd) * q.coeffs_[k - j];
        q.coeffs_[k] = acc / lead;
    }
    q.precision_ = p;
    q.trim();
    return q;
}

} // namespace somos
