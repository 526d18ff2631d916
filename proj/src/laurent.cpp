#include "somos/laurent.hpp"

#include "somos/error.hpp"

namespace somos {

namespace {

// Splits signed exponents into numerator and denominator monomials.
std::pair<Monomial, Monomial> split(const SignedExponents& e)
{
    ExponentVector pos{}, neg{};
    for (std::size_t i = 0; i < kNumVars; ++i) {
        if (e[i] >= 0)
            pos[i] = static_cast<std::uint32_t>(e[i]);
        else
            neg[i] = static_cast<std::uint32_t>(-e[i]);
    }
    return {Monomial::from_exponents(pos), Monomial::from_exponents(neg)};
}

} // namespace

LaurentElem::LaurentElem(SparsePoly num, const Monomial& den) : num_(std::move(num)), den_(den)
{
    normalize();
}

void LaurentElem::normalize()
{
    if (num_.is_zero()) {
        den_ = Monomial{};
        return;
    }
    if (den_.is_one())
        return;
    const Monomial c = Monomial::gcd(num_.monomial_content(), den_);
    if (!c.is_one()) {
        num_ = num_.div_monomial(c);
        den_ = den_.div_unchecked(c);
    }
}

LaurentElem LaurentElem::normalized() const
{
    LaurentElem r = *this;
    r.normalize();
    return r;
}

LaurentElem LaurentElem::monomial(const SignedExponents& e, const BigInt& c)
{
    auto [p, n] = split(e);
    return LaurentElem(SparsePoly::monomial(p, c), n);
}

LaurentElem LaurentElem::from_signed_terms(const std::vector<std::pair<SignedExponents, BigInt>>& terms)
{
    ExponentVector common{};
    for (const auto& [e, c] : terms)
        for (std::size_t i = 0; i < kNumVars; ++i)
            if (e[i] < 0)
                common[i] = std::max(common[i], static_cast<std::uint32_t>(-e[i]));
    std::vector<Term> shifted;
    shifted.reserve(terms.size());
    for (const auto& [e, c] : terms) {
        SignedExponents s = e;
        for (std::size_t i = 0; i < kNumVars; ++i)
            s[i] += common[i];
        shifted.push_back(Term{split(s).first, c});
    }
    return LaurentElem(SparsePoly::from_terms(std::move(shifted)), Monomial::from_exponents(common));
}

std::vector<std::pair<SignedExponents, BigInt>> LaurentElem::signed_terms() const
{
    std::vector<std::pair<SignedExponents, BigInt>> out;
    out.reserve(num_.size());
    for (const auto& t : num_.terms()) {
        SignedExponents e{};
        for (std::size_t i = 0; i < kNumVars; ++i) {
            const auto v = static_cast<Var>(i);
            e[i] = static_cast<long>(t.mono.exponent(v)) - static_cast<long>(den_.exponent(v));
        }
        out.emplace_back(e, t.coeff);
    }
    return out;
}

Rat LaurentElem::eval(const Assignment& at) const
{
    const Rat d = SparsePoly::monomial(den_).eval(at);
    if (d == 0)
        throw MathError(ErrorKind::ZeroDenominator, "Laurent denominator " + den_.to_string() + " vanishes");
    return num_.eval(at) / d;
}

LaurentElem LaurentElem::operator-() const
{
    LaurentElem r = *this;
    r.num_ = -r.num_;
    return r;
}

LaurentElem& LaurentElem::operator+=(const LaurentElem& o)
{
    if (den_ == o.den_) {
        num_ += o.num_;
    }
    else {
        const Monomial l = Monomial::lcm(den_, o.den_);
        num_ = num_.mul_monomial(l.div_unchecked(den_)) + o.num_.mul_monomial(l.div_unchecked(o.den_));
        den_ = l;
    }
    normalize();
    return *this;
}

LaurentElem& LaurentElem::operator-=(const LaurentElem& o)
{
    return *this += -o;
}

LaurentElem& LaurentElem::operator*=(const LaurentElem& o)
{
    num_ *= o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

std::string LaurentElem::to_string() const
{
    if (den_.is_one())
        return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

LaurentElem laurent_div(const LaurentElem& num, const LaurentElem& den)
{
    if (den.is_zero())
        throw MathError(ErrorKind::ZeroDivisor, "Laurent division by zero");
    // Monomials are units; after stripping them the divisor has no variable
    // factor, so divisibility in the Laurent ring equals divisibility of the
    // numerators in the polynomial ring.
    const Monomial c = den.num().monomial_content();
    const SparsePoly core = den.num().div_monomial(c);
    SparsePoly q = exact_div(num.num(), core);
    return LaurentElem(q.mul_monomial(den.den()), num.den() * c);
}

} // namespace somos
