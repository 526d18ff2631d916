#include "somos/residue.hpp"

#include "somos/error.hpp"

namespace somos {

ResidueInt::ResidueInt(const BigInt& value, const BigInt& modulus) : modulus_(modulus)
{
    if (modulus < 1)
        throw MathError(ErrorKind::InvalidArgument, "residue modulus must be positive");
    mpz_fdiv_r(value_.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
}

void ResidueInt::check_modulus(const ResidueInt& o) const
{
    if (modulus_ != o.modulus_)
        throw MathError(ErrorKind::ModulusMismatch,
                        "moduli " + somos::to_string(modulus_) + " and " + somos::to_string(o.modulus_));
}

bool ResidueInt::is_unit() const
{
    BigInt g;
    mpz_gcd(g.get_mpz_t(), value_.get_mpz_t(), modulus_.get_mpz_t());
    return g == 1;
}

ResidueInt ResidueInt::inverse() const
{
    BigInt inv;
    if (modulus_ == 1 || mpz_invert(inv.get_mpz_t(), value_.get_mpz_t(), modulus_.get_mpz_t()) == 0)
        throw MathError(ErrorKind::BadReduction,
                        somos::to_string(value_) + " is not a unit mod " + somos::to_string(modulus_));
    return ResidueInt(inv, modulus_);
}

ResidueInt ResidueInt::pow(const BigInt& exp) const
{
    if (exp < 0)
        return inverse().pow(-exp);
    BigInt r;
    mpz_powm(r.get_mpz_t(), value_.get_mpz_t(), exp.get_mpz_t(), modulus_.get_mpz_t());
    return ResidueInt(r, modulus_);
}

ResidueInt ResidueInt::operator-() const
{
    return ResidueInt(-value_, modulus_);
}

ResidueInt& ResidueInt::operator+=(const ResidueInt& o)
{
    check_modulus(o);
    value_ += o.value_;
    if (value_ >= modulus_)
        value_ -= modulus_;
    return *this;
}

ResidueInt& ResidueInt::operator-=(const ResidueInt& o)
{
    check_modulus(o);
    value_ -= o.value_;
    if (value_ < 0)
        value_ += modulus_;
    return *this;
}

ResidueInt& ResidueInt::operator*=(const ResidueInt& o)
{
    check_modulus(o);
    value_ *= o.value_;
    mpz_fdiv_r(value_.get_mpz_t(), value_.get_mpz_t(), modulus_.get_mpz_t());
    return *this;
}

std::string ResidueInt::to_string() const
{
    return somos::to_string(value_) + " mod " + somos::to_string(modulus_);
}

ResidueInt mod_reduce(const Rat& x, const BigInt& p)
{
    ResidueInt den(x.get_den(), p);
    if (!den.is_unit())
        throw MathError(ErrorKind::BadReduction,
                        "denominator of " + to_string(x) + " vanishes mod " + to_string(p));
    return ResidueInt(x.get_num(), p) * den.inverse();
}

int legendre(const ResidueInt& a)
{
    return mpz_legendre(a.value().get_mpz_t(), a.modulus().get_mpz_t());
}

std::optional<ResidueInt> sqrt_mod(const ResidueInt& a)
{
    const BigInt& p = a.modulus();
    if (a.is_zero())
        return a;
    if (p == 2)
        return a;
    if (legendre(a) != 1)
        return std::nullopt;

    // Tonelli-Shanks: p - 1 = q * 2^s with q odd.
    BigInt q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    ResidueInt z(2, p);
    while (legendre(z) != -1)
        z += ResidueInt::one(p);

    ResidueInt c = z.pow(q);
    ResidueInt t = a.pow(q);
    ResidueInt r = a.pow((q + 1) / 2);
    unsigned long m = s;
    const ResidueInt one = ResidueInt::one(p);
    while (!(t == one)) {
        unsigned long i = 0;
        ResidueInt t2 = t;
        while (!(t2 == one)) {
            t2 *= t2;
            ++i;
        }
        ResidueInt b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j)
            b *= b;
        m = i;
        c = b * b;
        t *= c;
        r *= b;
    }
    // Canonical choice: the smaller representative.
    ResidueInt neg = -r;
    return neg.value() < r.value() ? neg : r;
}

} // namespace somos
