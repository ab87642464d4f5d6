#include "kmilnor/finite_field.hpp"

namespace kmilnor {

FiniteField::FiniteField(std::uint64_t ell, std::uint32_t degree)
    : ell_(ell), degree_(degree), modulus_(FpPoly::zero(ell)) {
    if (!is_prime_u64(ell)) throw std::invalid_argument("FiniteField: ell must be prime");
    if (degree < 1 || degree > 64)
        throw std::invalid_argument("FiniteField: degree out of range");
    for (const auto& g : monic_polys_of_degree(ell, degree)) {
        if (is_irreducible(g)) {
            modulus_ = g;
            break;
        }
    }
    if (modulus_.is_zero())
        throw std::logic_error("FiniteField: no irreducible modulus found");
}

FiniteField::Elem FiniteField::generator() const {
    return reduce(FpPoly::x(ell_));
}

FiniteField::Elem FiniteField::inv(const Elem& a) const {
    if (a.is_zero()) throw std::domain_error("FiniteField::inv: zero element");
    return pow(a, size() - 2);
}

FiniteField::Elem FiniteField::frobenius(const Elem& a, std::uint64_t times) const {
    Elem r = reduce(a);
    times %= degree_;  // Frobenius has order equal to the extension degree
    for (std::uint64_t k = 0; k < times; ++k) r = pow(r, ell_);
    return r;
}

FiniteField::Elem FiniteField::random_elem(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::uint64_t> dist(0, ell_ - 1);
    std::vector<std::uint64_t> c(degree_, 0);
    for (auto& x : c) x = dist(rng);
    return FpPoly(ell_, std::move(c));
}

FiniteField::Elem FiniteField::random_nonzero(std::mt19937_64& rng) const {
    for (;;) {
        Elem e = random_elem(rng);
        if (!e.is_zero()) return e;
    }
}

}  // namespace kmilnor
