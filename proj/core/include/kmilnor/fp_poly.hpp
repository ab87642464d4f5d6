#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kmilnor/prime_params.hpp"

namespace kmilnor {

// Univariate polynomial over F_p, coefficients ascending, no trailing zeros.
class FpPoly {
public:
    FpPoly() : p_(2) {}
    FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);

    static FpPoly zero(std::uint64_t p) { return FpPoly(p, {}); }
    static FpPoly constant(std::uint64_t p, std::uint64_t c) { return FpPoly(p, {c}); }
    static FpPoly x(std::uint64_t p) { return FpPoly(p, {0, 1}); }

    std::uint64_t p() const { return p_; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    std::uint64_t leading() const;
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    std::uint64_t coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0; }

    friend FpPoly operator+(const FpPoly&, const FpPoly&);
    friend FpPoly operator-(const FpPoly&, const FpPoly&);
    friend FpPoly operator*(const FpPoly&, const FpPoly&);
    bool operator==(const FpPoly&) const = default;
    /// Total order for map keys: (p, degree, coefficients).
    bool operator<(const FpPoly&) const;

    FpPoly scaled(std::uint64_t c) const;
    FpPoly monic() const;
    FpPoly derivative() const;
    std::uint64_t eval(std::uint64_t x) const;
    /// f(g(x)) by Horner.
    FpPoly compose(const FpPoly& g) const;

    std::string to_string(char var) const;

private:
    std::uint64_t p_;
    std::vector<std::uint64_t> c_;
    void trim();
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
FpPoly poly_mod(const FpPoly& a, const FpPoly& b);
/// Monic gcd.
FpPoly poly_gcd(FpPoly a, FpPoly b);
FpPoly pow_mod(const FpPoly& base, std::uint64_t e, const FpPoly& mod);

/// Rabin irreducibility test; degree >= 1 required.
bool is_irreducible(const FpPoly& f);

struct FpFactorization {
    std::uint64_t unit = 1;                    // in F_p^x
    std::map<FpPoly, std::uint64_t> factors;   // monic irreducible -> multiplicity
};

inline constexpr std::uint64_t kDefaultFactorSeed = 123456789;

/// Full factorization: squarefree split, distinct-degree, then equal-degree
/// (Cantor-Zassenhaus; trace splitting for p = 2). The seed drives the
/// equal-degree stage only; results are seed-independent, the seed is recorded
/// for reproducibility of the search path.
FpFactorization factor_poly(const FpPoly& f, std::uint64_t seed = kDefaultFactorSeed);

/// All monic polynomials of the given degree, ordered by the base-p value of
/// their coefficient vector.
std::vector<FpPoly> monic_polys_of_degree(std::uint64_t p, std::uint32_t degree);

/// All monic irreducibles of degree in [1, max_degree], ascending.
std::vector<FpPoly> monic_irreducibles_up_to(std::uint64_t p, std::uint32_t max_degree);

}  // namespace kmilnor
