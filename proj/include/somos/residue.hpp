#pragma once

#include "somos/bigint.hpp"

#include <optional>
#include <string>

namespace somos {

/// Element of Z/mZ. Value is always reduced into [0, m); mixing moduli throws.
class ResidueInt {
public:
    ResidueInt(const BigInt& value, const BigInt& modulus);

    static ResidueInt zero(const BigInt& modulus) { return ResidueInt(0, modulus); }
    static ResidueInt one(const BigInt& modulus) { return ResidueInt(1, modulus); }

    const BigInt& value() const noexcept { return value_; }
    const BigInt& modulus() const noexcept { return modulus_; }

    bool is_zero() const noexcept { return value_ == 0; }
    bool is_unit() const;

    /// Throws BadReduction when the value is not a unit.
    ResidueInt inverse() const;
    ResidueInt pow(const BigInt& exp) const;

    ResidueInt operator-() const;
    ResidueInt& operator+=(const ResidueInt& o);
    ResidueInt& operator-=(const ResidueInt& o);
    ResidueInt& operator*=(const ResidueInt& o);

    friend ResidueInt operator+(ResidueInt a, const ResidueInt& b) { return a += b; }
    friend ResidueInt operator-(ResidueInt a, const ResidueInt& b) { return a -= b; }
    friend ResidueInt operator*(ResidueInt a, const ResidueInt& b) { return a *= b; }

    friend bool operator==(const ResidueInt& a, const ResidueInt& b)
    {
        return a.modulus_ == b.modulus_ && a.value_ == b.value_;
    }

    std::string to_string() const;

private:
    void check_modulus(const ResidueInt& o) const;

    BigInt value_;
    BigInt modulus_;
};

/// num * den^{-1} mod p. Throws BadReduction when p | den.
ResidueInt mod_reduce(const Rat& x, const BigInt& p);

/// Legendre symbol (a/p) for odd prime p: 0, 1 or -1.
int legendre(const ResidueInt& a);

/// Square root in F_p for odd prime p (Tonelli-Shanks); nullopt when a is a non-residue.
std::optional<ResidueInt> sqrt_mod(const ResidueInt& a);

} // namespace somos
