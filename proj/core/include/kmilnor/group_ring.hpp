#pragma once

#include <optional>
#include <vector>

#include "kmilnor/prime_params.hpp"

namespace kmilnor {

// An element of (Z/p^s)[G_i] for G_i cyclic of order p^i with generator tau.
// Canonical representation is the group basis: coeffs[j] is the coefficient
// of tau^j, reduced to [0, p^s). The (tau-1)-power basis is a derived view.
class GroupRingElement {
public:
    GroupRingElement(PrimeParams params, std::uint32_t level,
                     std::vector<std::uint64_t> coeffs);

    static GroupRingElement zero(const PrimeParams& params, std::uint32_t level);
    static GroupRingElement one(const PrimeParams& params, std::uint32_t level);
    static GroupRingElement tau(const PrimeParams& params, std::uint32_t level);
    static GroupRingElement scalar(const PrimeParams& params, std::uint32_t level,
                                   std::uint64_t c);

    const PrimeParams& params() const { return params_; }
    std::uint32_t level() const { return level_; }
    const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
    std::uint64_t order() const { return coeffs_.size(); }  // p^level

    bool is_zero() const;
    /// Coefficient sum mod p^s (the augmentation map to R_s).
    std::uint64_t augmentation() const;

    friend GroupRingElement operator+(const GroupRingElement&, const GroupRingElement&);
    friend GroupRingElement operator-(const GroupRingElement&, const GroupRingElement&);
    /// Cyclic convolution of length p^i, reduced mod p^s.
    friend GroupRingElement operator*(const GroupRingElement&, const GroupRingElement&);
    bool operator==(const GroupRingElement&) const = default;

    GroupRingElement scaled(std::uint64_t c) const;
    GroupRingElement pow(std::uint64_t e) const;

    /// Coefficients c_j with *this = sum c_j (tau-1)^j, j = 0..p^i-1.
    std::vector<std::uint64_t> to_tau_basis() const;
    static GroupRingElement from_tau_basis(const PrimeParams& params, std::uint32_t level,
                                           const std::vector<std::uint64_t>& c);

private:
    PrimeParams params_;
    std::uint32_t level_;
    std::vector<std::uint64_t> coeffs_;
};

/// p^{s-1} (tau-1)^{p^i - 1}: the element contained in every nonzero ideal of
/// R_s G_i. Requires i >= 1.
GroupRingElement socle(const PrimeParams& params, std::uint32_t level);

/// For b != 0 returns gamma with gamma * b = socle. Follows the ideal lemma:
/// scale b by the least power of p landing it in p^{s-1} R_s G_i \ {0}, expand
/// in the (tau-1) basis, locate the least index k with unit part, then multiply
/// by (tau-1)^{p^i-1-k} and the inverse of that unit.
GroupRingElement socle_multiplier(const GroupRingElement& b);

/// Unit test and two-sided inverse. a is a unit iff its augmentation is prime
/// to p; the inverse is lifted from R_s by Newton iteration (the complement of
/// the initial approximation lies in the nilpotent ideal (tau-1)).
std::optional<GroupRingElement> try_invert(const GroupRingElement& a);

}  // namespace kmilnor
