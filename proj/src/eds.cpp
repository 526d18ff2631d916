#include "somos/eds.hpp"

namespace somos {

bool is_proper(const BigInt& a1, const BigInt& a2, const BigInt& a3, const BigInt& a4)
{
    if (a1 != 1 || a2 * a2 + a3 * a3 == 0)
        return false;
    return mpz_divisible_p(a4.get_mpz_t(), a2.get_mpz_t()) != 0;
}

std::vector<long> divisor_set(const SeqWindow<BigInt>& a, long k)
{
    const BigInt& ak = a[k];
    std::vector<long> out;
    for (long m = a.lo(); m <= a.hi(); ++m)
        if (mpz_divisible_p(a[m].get_mpz_t(), ak.get_mpz_t()))
            out.push_back(m);
    return out;
}

std::vector<long> consecutive_gcd_failures(const SeqWindow<BigInt>& a)
{
    std::vector<long> out;
    for (long n = std::max(2L, a.lo()); n + 1 <= a.hi(); ++n) {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), a[n].get_mpz_t(), a[n + 1].get_mpz_t());
        if (g != 1)
            out.push_back(n);
    }
    return out;
}

std::vector<long> divisor_set_mismatches(const SeqWindow<SparsePoly>& a, long k)
{
    std::vector<long> out;
    const SparsePoly& ak = a[k];
    for (long m = a.lo(); m <= a.hi(); ++m) {
        const bool divides = try_exact_div(a[m], ak).has_value();
        if (divides != (m % k == 0))
            out.push_back(m);
    }
    return out;
}

EdsSpec<SparsePoly> generic_eds_spec()
{
    const SparsePoly x2 = SparsePoly::variable(Var::x2), x3 = SparsePoly::variable(Var::x3),
                     x4 = SparsePoly::variable(Var::x4);
    return EdsSpec<SparsePoly>::standard(SparsePoly(1), x2, x3, x2 * x4);
}

std::optional<Rat> resolve_sqrt(const QuadElem<Rat>& x)
{
    if (x.b() == 0)
        return x.a();
    const Rat& d = x.radicand();
    if (d < 0 || !mpz_perfect_square_p(d.get_num_mpz_t()) || !mpz_perfect_square_p(d.get_den_mpz_t()))
        return std::nullopt;
    BigInt rn, rd;
    mpz_sqrt(rn.get_mpz_t(), d.get_num_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_den_mpz_t());
    return Rat(x.a() + x.b() * make_rat(rn, rd));
}

} // namespace somos
