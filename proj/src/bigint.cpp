#include "somos/bigint.hpp"

#include "somos/error.hpp"

#include <cctype>

namespace somos {

namespace {

bool valid_integer(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

BigInt parse_bigint(std::string_view text)
{
    auto s = trim(text);
    if (!valid_integer(s))
        throw MathError(ErrorKind::ParseError, "not an integer: '" + std::string(text) + "'");
    if (s[0] == '+')
        s.remove_prefix(1);
    return BigInt(std::string(s), 10);
}

Rat parse_rat(std::string_view text)
{
    auto s = trim(text);
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rat(parse_bigint(s));
    return make_rat(parse_bigint(s.substr(0, slash)), parse_bigint(s.substr(slash + 1)));
}

Rat make_rat(const BigInt& num, const BigInt& den)
{
    if (den == 0)
        throw MathError(ErrorKind::ZeroDenominator, "rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const BigInt& x)
{
    return x.get_str(10);
}

std::string to_string(const Rat& x)
{
    return x.get_str(10);
}

bool is_integer(const Rat& x)
{
    return x.get_den() == 1;
}

BigInt pow(const BigInt& base, unsigned long exp)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

bool is_probable_prime(const BigInt& p)
{
    return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

} // namespace somos
