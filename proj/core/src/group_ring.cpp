#include "kmilnor/group_ring.hpp"

#include <algorithm>
#include <cassert>

namespace kmilnor {

GroupRingElement::GroupRingElement(PrimeParams params, std::uint32_t level,
                                   std::vector<std::uint64_t> coeffs)
    : params_(params), level_(level), coeffs_(std::move(coeffs)) {
    if (level_ > params_.n)
        throw std::invalid_argument("GroupRingElement: level exceeds tower height");
    std::uint64_t ord = params_.group_order(level_);
    if (coeffs_.size() != ord)
        throw std::invalid_argument("GroupRingElement: coefficient count != p^level");
    std::uint64_t m = params_.modulus();
    for (auto& c : coeffs_) c %= m;
}

GroupRingElement GroupRingElement::zero(const PrimeParams& params, std::uint32_t level) {
    return GroupRingElement(params, level,
                            std::vector<std::uint64_t>(params.group_order(level), 0));
}

GroupRingElement GroupRingElement::one(const PrimeParams& params, std::uint32_t level) {
    return scalar(params, level, 1);
}

GroupRingElement GroupRingElement::scalar(const PrimeParams& params, std::uint32_t level,
                                          std::uint64_t c) {
    std::vector<std::uint64_t> v(params.group_order(level), 0);
    v[0] = c % params.modulus();
    return GroupRingElement(params, level, std::move(v));
}

GroupRingElement GroupRingElement::tau(const PrimeParams& params, std::uint32_t level) {
    if (level == 0) throw std::domain_error("tau: level-0 group is trivial");
    std::vector<std::uint64_t> v(params.group_order(level), 0);
    v[1] = 1;
    return GroupRingElement(params, level, std::move(v));
}

bool GroupRingElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](std::uint64_t c) { return c == 0; });
}

std::uint64_t GroupRingElement::augmentation() const {
    std::uint64_t m = params_.modulus();
    std::uint64_t a = 0;
    for (auto c : coeffs_) a = add_mod(a, c, m);
    return a;
}

static void require_same_ring(const GroupRingElement& a, const GroupRingElement& b) {
    if (!(a.params() == b.params()) || a.level() != b.level())
        throw std::invalid_argument("group ring op: mismatched params or level");
}

GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
    require_same_ring(a, b);
    std::uint64_t m = a.params().modulus();
    std::vector<std::uint64_t> v(a.coeffs());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = add_mod(v[j], b.coeffs()[j], m);
    return GroupRingElement(a.params(), a.level(), std::move(v));
}

GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
    require_same_ring(a, b);
    std::uint64_t m = a.params().modulus();
    std::vector<std::uint64_t> v(a.coeffs());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = sub_mod(v[j], b.coeffs()[j], m);
    return GroupRingElement(a.params(), a.level(), std::move(v));
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    require_same_ring(a, b);
    std::uint64_t m = a.params().modulus();
    std::size_t ord = a.coeffs().size();
    std::vector<std::uint64_t> v(ord, 0);
    for (std::size_t j = 0; j < ord; ++j) {
        if (a.coeffs()[j] == 0) continue;
        for (std::size_t k = 0; k < ord; ++k) {
            std::size_t idx = j + k;
            if (idx >= ord) idx -= ord;
            v[idx] = add_mod(v[idx], mul_mod(a.coeffs()[j], b.coeffs()[k], m), m);
        }
    }
    return GroupRingElement(a.params(), a.level(), std::move(v));
}

GroupRingElement GroupRingElement::scaled(std::uint64_t c) const {
    std::uint64_t m = params_.modulus();
    c %= m;
    std::vector<std::uint64_t> v(coeffs_);
    for (auto& x : v) x = mul_mod(x, c, m);
    return GroupRingElement(params_, level_, std::move(v));
}

GroupRingElement GroupRingElement::pow(std::uint64_t e) const {
    GroupRingElement r = one(params_, level_);
    GroupRingElement base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

std::vector<std::uint64_t> GroupRingElement::to_tau_basis() const {
    // Taylor shift T -> U + 1: both bases have size p^i and the transition is
    // unipotent triangular, so no reduction by tau^{p^i} = 1 is needed.
    std::uint64_t m = params_.modulus();
    std::vector<std::uint64_t> c(coeffs_);
    std::size_t d = c.size();
    for (std::size_t i = 0; i + 1 < d; ++i)
        for (std::size_t k = d - 1; k-- > i;)
            c[k] = add_mod(c[k], c[k + 1], m);
    return c;
}

GroupRingElement GroupRingElement::from_tau_basis(const PrimeParams& params,
                                                  std::uint32_t level,
                                                  const std::vector<std::uint64_t>& cin) {
    std::uint64_t ord = params.group_order(level);
    if (cin.size() != ord)
        throw std::invalid_argument("from_tau_basis: coefficient count != p^level");
    std::uint64_t m = params.modulus();
    std::vector<std::uint64_t> c(cin);
    for (auto& x : c) x %= m;
    std::size_t d = c.size();
    for (std::size_t i = 0; i + 1 < d; ++i)
        for (std::size_t k = d - 1; k-- > i;)
            c[k] = sub_mod(c[k], c[k + 1], m);
    return GroupRingElement(params, level, std::move(c));
}

GroupRingElement socle(const PrimeParams& params, std::uint32_t level) {
    if (level < 1) throw std::domain_error("socle: level must be >= 1");
    std::uint64_t ord = params.group_order(level);
    std::vector<std::uint64_t> tb(ord, 0);
    tb[ord - 1] = pow_u64(params.p, params.s - 1);
    return GroupRingElement::from_tau_basis(params, level, tb);
}

GroupRingElement socle_multiplier(const GroupRingElement& b) {
    if (b.is_zero()) throw std::domain_error("socle_multiplier: b must be nonzero");
    if (b.level() < 1) throw std::domain_error("socle_multiplier: level must be >= 1");
    const PrimeParams& params = b.params();
    std::uint64_t p = params.p;
    std::uint32_t s = params.s;
    std::uint64_t ord = b.order();

    // least e with p^e b in p^{s-1} R_s G_i \ {0}
    std::uint32_t vmin = s;
    for (auto c : b.coeffs())
        if (c != 0) vmin = std::min(vmin, padic_valuation(c, p, s));
    std::uint32_t e = s - 1 - vmin;

    GroupRingElement scaled = b.scaled(pow_u64(p, e));
    std::vector<std::uint64_t> tb = scaled.to_tau_basis();
    std::uint64_t ps1 = pow_u64(p, s - 1);
    std::size_t k = tb.size();
    std::uint64_t unit_part = 0;
    for (std::size_t j = 0; j < tb.size(); ++j) {
        if (tb[j] != 0) {
            k = j;
            if (tb[j] % ps1 != 0)
                throw std::logic_error("socle_multiplier: scaled element left p^{s-1}R");
            unit_part = tb[j] / ps1;
            break;
        }
    }
    if (k >= tb.size() || unit_part % p == 0)
        throw std::logic_error("socle_multiplier: no unit pivot after scaling");

    // gamma = p^e * inv(unit) * (tau-1)^{p^i-1-k}
    std::vector<std::uint64_t> gtb(ord, 0);
    gtb[ord - 1 - k] = 1;
    GroupRingElement gamma = GroupRingElement::from_tau_basis(params, b.level(), gtb);
    std::uint64_t c = mul_mod(pow_u64(p, e), inv_mod_prime_power(unit_part, p, s),
                              params.modulus());
    return gamma.scaled(c);
}

std::optional<GroupRingElement> try_invert(const GroupRingElement& a) {
    const PrimeParams& params = a.params();
    std::uint64_t aug = a.augmentation();
    if (aug % params.p == 0) return std::nullopt;

    GroupRingElement one = GroupRingElement::one(params, a.level());
    GroupRingElement x =
        GroupRingElement::scalar(params, a.level(),
                                 inv_mod_prime_power(aug, params.p, params.s));
    // 1 - a*x has augmentation 0, hence lies in the nilpotent ideal (tau-1);
    // the error squares each round, so this terminates.
    for (int round = 0; round < 64; ++round) {
        GroupRingElement err = one - a * x;
        if (err.is_zero()) return x;
        x = x * (one + err);
    }
    throw std::logic_error("try_invert: Newton iteration failed to terminate");
}

}  // namespace kmilnor
