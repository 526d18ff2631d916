#pragma once

// Arbitrary-precision integers and rationals. Both are GMP values; the
// helpers here fix the textual form used everywhere else ("num/den").

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace somos {

using BigInt = mpz_class;
using Rat = mpq_class;

BigInt parse_bigint(std::string_view text);

/// Accepts "n" or "n/d" with optional sign; result is canonical (den > 0, reduced).
Rat parse_rat(std::string_view text);

Rat make_rat(const BigInt& num, const BigInt& den);

std::string to_string(const BigInt& x);
std::string to_string(const Rat& x);

bool is_integer(const Rat& x);

/// Exact integer power.
BigInt pow(const BigInt& base, unsigned long exp);

/// Probabilistic primality test (mpz_probab_prime_p, 40 rounds).
bool is_probable_prime(const BigInt& p);

} // namespace somos
