#pragma once

#include <cstdint>
#include <random>

#include "kmilnor/fp_poly.hpp"

namespace kmilnor {

// F_{ell^d} presented as F_ell[z]/(g) for the first monic irreducible g of
// degree d in enumeration order. Elements are reduced FpPoly values over ell.
class FiniteField {
public:
    using Elem = FpPoly;

    FiniteField(std::uint64_t ell, std::uint32_t degree);

    std::uint64_t ell() const { return ell_; }
    std::uint32_t degree() const { return degree_; }
    const FpPoly& modulus() const { return modulus_; }
    std::uint64_t size() const { return pow_u64(ell_, degree_); }

    Elem zero() const { return FpPoly::zero(ell_); }
    Elem one() const { return FpPoly::constant(ell_, 1); }
    Elem from_int(std::uint64_t c) const { return FpPoly::constant(ell_, c % ell_); }
    Elem generator() const;  // the class of z
    Elem reduce(const FpPoly& a) const { return poly_mod(a, modulus_); }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return reduce(a * b); }
    Elem pow(const Elem& a, std::uint64_t e) const { return pow_mod(a, e, modulus_); }
    Elem inv(const Elem& a) const;
    /// x -> x^{ell^times}: the Frobenius generator of Gal(F_{ell^d}/F_ell).
    Elem frobenius(const Elem& a, std::uint64_t times) const;

    Elem random_elem(std::mt19937_64& rng) const;
    Elem random_nonzero(std::mt19937_64& rng) const;

private:
    std::uint64_t ell_;
    std::uint32_t degree_;
    FpPoly modulus_;
};

}  // namespace kmilnor
