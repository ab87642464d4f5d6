#pragma once

#include <cstdint>
#include <stdexcept>

namespace kmilnor {

/// Deterministic primality check by trial division (inputs are desk-scale).
bool is_prime_u64(std::uint64_t n);

/// base^exp with an overflow guard; throws std::overflow_error past 2^63.
std::uint64_t pow_u64(std::uint64_t base, std::uint32_t exp);

/// p-adic valuation of a nonzero residue; returns cap for a = 0.
std::uint32_t padic_valuation(std::uint64_t a, std::uint64_t p, std::uint32_t cap);

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t r = a + b;
    return r >= m ? r - m : r;
}
inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + m - b;
}
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return (a * b) % m;  // moduli are capped well below 2^32
}
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse of a unit mod p^s (unit iff a is coprime to p). Throws on non-units.
std::uint64_t inv_mod_prime_power(std::uint64_t a, std::uint64_t p, std::uint32_t s);

// Shared parameter block: the coefficient modulus p^s and the group orders
// p^i, 0 <= i <= n. Moduli and group orders are capped so that all
// intermediate products stay inside uint64.
struct PrimeParams {
    std::uint64_t p = 2;
    std::uint32_t s = 1;
    std::uint32_t n = 0;

    PrimeParams() = default;
    PrimeParams(std::uint64_t p_, std::uint32_t s_, std::uint32_t n_ = 0);

    std::uint64_t modulus() const { return pow_u64(p, s); }
    std::uint64_t group_order(std::uint32_t i) const;

    bool operator==(const PrimeParams&) const = default;

    static constexpr std::uint64_t kMaxModulus = 1u << 20;
    static constexpr std::uint64_t kMaxGroupOrder = 1u << 20;
};

}  // namespace kmilnor
