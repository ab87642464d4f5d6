#include "kmilnor/prime_params.hpp"

#include <limits>

namespace kmilnor {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t pow_u64(std::uint64_t base, std::uint32_t exp) {
    std::uint64_t r = 1;
    for (std::uint32_t k = 0; k < exp; ++k) {
        if (base != 0 && r > (std::uint64_t{1} << 63) / base)
            throw std::overflow_error("pow_u64: overflow");
        r *= base;
    }
    return r;
}

std::uint32_t padic_valuation(std::uint64_t a, std::uint64_t p, std::uint32_t cap) {
    if (a == 0) return cap;
    std::uint32_t v = 0;
    while (v < cap && a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

std::uint64_t inv_mod_prime_power(std::uint64_t a, std::uint64_t p, std::uint32_t s) {
    std::uint64_t m = pow_u64(p, s);
    a %= m;
    if (a % p == 0) throw std::domain_error("inv_mod_prime_power: not a unit");
    // invert mod p by Fermat, then Newton-lift: x <- x(2 - ax) doubles precision
    std::uint64_t x = pow_mod(a % p, p - 2, p);
    std::uint32_t prec = 1;
    while (prec < s) {
        x = mul_mod(x, sub_mod(2 % m, mul_mod(a, x, m), m), m);
        prec *= 2;
    }
    return x % m;
}

PrimeParams::PrimeParams(std::uint64_t p_, std::uint32_t s_, std::uint32_t n_)
    : p(p_), s(s_), n(n_) {
    if (!is_prime_u64(p)) throw std::invalid_argument("PrimeParams: p is not prime");
    if (s < 1) throw std::invalid_argument("PrimeParams: s must be >= 1");
    if (pow_u64(p, s) > kMaxModulus)
        throw std::invalid_argument("PrimeParams: p^s exceeds the desk-scale cap");
    if (pow_u64(p, n) > kMaxGroupOrder)
        throw std::invalid_argument("PrimeParams: p^n exceeds the desk-scale cap");
}

std::uint64_t PrimeParams::group_order(std::uint32_t i) const {
    if (i > n) throw std::invalid_argument("PrimeParams: level exceeds tower height");
    return pow_u64(p, i);
}

}  // namespace kmilnor
