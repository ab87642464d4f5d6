#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kmilnor/fp_poly.hpp"
#include "kmilnor/gal_module.hpp"
#include "kmilnor/prime_params.hpp"

namespace kmilnor {

// The two rational function fields in play: F = F_p(t) and E = F_p(theta)
// with t = theta^p - theta and sigma(theta) = theta + 1.
enum class Side { F, E };

inline char side_var(Side side) { return side == Side::F ? 't' : 'x'; }

// A nonzero field element in factored form: unit constant times a product of
// monic irreducibles with integer exponents.
struct FactoredElement {
    Side side = Side::F;
    std::uint64_t p = 2;
    std::uint64_t unit = 1;                 // in F_p^x
    std::map<FpPoly, std::int64_t> factors; // monic irreducible -> nonzero exponent

    static FactoredElement one(Side side, std::uint64_t p);
    /// Factor a nonzero polynomial into certified irreducibles.
    static FactoredElement from_poly(Side side, const FpPoly& f,
                                     std::uint64_t seed = kDefaultFactorSeed);

    FactoredElement& mul(const FactoredElement& other);
    FactoredElement& mul_pow(const FpPoly& irreducible, std::int64_t exp);
    FactoredElement inverse() const;
    FactoredElement pow(std::int64_t e) const;
    /// Expand to a polynomial; requires all exponents nonnegative.
    FpPoly expand() const;
    bool is_one() const { return unit == 1 && factors.empty(); }
    bool operator==(const FactoredElement&) const = default;
    std::string to_string() const;
};

/// theta -> theta + 1 in every irreducible; order p.
FactoredElement sigma_act(const FactoredElement& a);
FpPoly sigma_act_poly(const FpPoly& f);

/// Is the E-side polynomial fixed by sigma (equivalently, a polynomial in t)?
bool is_sigma_invariant(const FpPoly& f);

/// Rewrite a sigma-invariant E-side polynomial as a polynomial in t, by
/// matching coefficients against powers of theta^p - theta from the top down.
FpPoly rewrite_invariant_to_t(const FpPoly& g);

/// N_{E/F}: product of the p conjugates, rewritten over F and factored.
FactoredElement norm_E_to_F(const FactoredElement& a);

/// iota_{F,E}: substitute t -> theta^p - theta and factor over E.
FactoredElement include_F_to_E(const FactoredElement& f);

// One sigma-orbit of split E-side irreducibles; members[k] = sigma^k(members[0]).
struct SigmaOrbit {
    std::vector<FpPoly> members;
    FpPoly below;  // the F-side irreducible underneath
};

// Classification of all F-side monic irreducibles of degree <= dF in E/F.
struct TruncatedInstance {
    PrimeParams params;  // n = 1
    std::uint32_t dF = 1;
    std::vector<SigmaOrbit> split_orbits;
    std::vector<FpPoly> inert_primes;
};

/// Enumerates and classifies every F-prime within the bound. Exactly two
/// behaviours occur for finite primes here (only the infinite place ramifies);
/// anything else trips a diagnostic.
TruncatedInstance enumerate_orbits(const PrimeParams& params, std::uint32_t dF);

// The truncated K_1 Galois module tower with its decomposition certificate and
// the norm-span cross-check of the rank data.
struct K1ModuleBuild {
    std::vector<GModulePresentation> tower;  // stages s' = 1..s
    DecompositionCertificate certificate;    // integral coords, valid at each stage
    std::vector<std::uint64_t> ranks;        // (r_0, r_1) = (#inert, #split)
    std::vector<FpPoly> coordinate_basis;    // E-side irreducible per coordinate
    bool cross_check_passed = false;
    std::uint64_t dim_norm_image = 0;  // dim_Fp of the truncated norm span
    std::uint64_t dim_quotient = 0;    // dim_Fp of k_1F / norms, truncated
    std::uint64_t factor_seed = kDefaultFactorSeed;
};

K1ModuleBuild build_k1_module(const TruncatedInstance& inst, std::uint32_t s);

}  // namespace kmilnor
