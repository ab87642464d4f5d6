#include <doctest.h>

#include <random>

#include "kmilnor/fp_poly.hpp"

using namespace kmilnor;

namespace {

FpPoly poly(std::uint64_t p, std::vector<std::uint64_t> c) { return FpPoly(p, std::move(c)); }

FpPoly random_poly(std::uint64_t p, int max_deg, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<std::uint64_t> coeff(0, p - 1);
    std::vector<std::uint64_t> c(deg(rng) + 1);
    for (auto& x : c) x = coeff(rng);
    return FpPoly(p, std::move(c));
}

}  // namespace

TEST_CASE("basic polynomial arithmetic") {
    auto f = poly(2, {1, 1});      // 1 + x
    auto g = poly(2, {1, 1, 1});   // 1 + x + x^2
    CHECK((f * g) == poly(2, {1, 0, 0, 1}));  // (1+x)(1+x+x^2) = 1 + x^3
    CHECK((f + f).is_zero());
    CHECK(f.degree() == 1);
    CHECK(poly(3, {0, 0, 0}).is_zero());
    CHECK(poly(5, {7}).coeffs() == std::vector<std::uint64_t>{2});
}

TEST_CASE("divmod and gcd") {
    auto f = poly(3, {2, 0, 1, 1});  // x^3 + x^2 + 2
    auto g = poly(3, {1, 1});        // x + 1
    auto [q, r] = divmod(f, g);
    CHECK(q * g + r == f);
    CHECK(r.degree() < g.degree());

    auto a = poly(2, {1, 1}) * poly(2, {1, 1, 1});
    auto b = poly(2, {1, 1}) * poly(2, {0, 1});
    CHECK(poly_gcd(a, b) == poly(2, {1, 1}));
    CHECK(poly_gcd(a, FpPoly::zero(2)) == a);
}

TEST_CASE("irreducibility on known cases") {
    CHECK(is_irreducible(poly(2, {1, 1, 1})));        // x^2+x+1
    CHECK_FALSE(is_irreducible(poly(2, {1, 0, 1})));  // (x+1)^2
    CHECK(is_irreducible(poly(2, {1, 1, 0, 1})));     // x^3+x+1
    CHECK(is_irreducible(poly(2, {1, 0, 0, 1, 1})));  // x^4+x^3+1
    CHECK_FALSE(is_irreducible(poly(2, {1, 1, 1, 1})));  // divisible by x+1
    CHECK(is_irreducible(poly(3, {1, 0, 1})));        // x^2+1 over F_3
    CHECK_FALSE(is_irreducible(poly(3, {2, 0, 1})));  // x^2+2 = (x+1)(x+2)
    CHECK_FALSE(is_irreducible(poly(2, {1})));
}

TEST_CASE("irreducible counts match the field formula") {
    // number of monic irreducibles of degree d over F_p:
    // (1/d) sum_{e | d} mu(e) p^{d/e}
    auto count = [](std::uint64_t p, std::uint32_t d) {
        std::size_t c = 0;
        for (const auto& f : monic_polys_of_degree(p, d))
            if (is_irreducible(f)) ++c;
        return c;
    };
    CHECK(count(2, 1) == 2);
    CHECK(count(2, 2) == 1);
    CHECK(count(2, 3) == 2);
    CHECK(count(2, 4) == 3);
    CHECK(count(3, 1) == 3);
    CHECK(count(3, 2) == 3);
    CHECK(count(3, 3) == 8);
    CHECK(count(5, 2) == 10);
}

TEST_CASE("factorization on the worked examples") {
    // theta^2 + theta = theta (theta+1)
    auto f1 = factor_poly(poly(2, {0, 1, 1}));
    CHECK(f1.unit == 1);
    REQUIRE(f1.factors.size() == 2);
    CHECK(f1.factors.at(poly(2, {0, 1})) == 1);
    CHECK(f1.factors.at(poly(2, {1, 1})) == 1);

    // theta^2 + theta + 1 is irreducible
    auto f2 = factor_poly(poly(2, {1, 1, 1}));
    REQUIRE(f2.factors.size() == 1);
    CHECK(f2.factors.begin()->second == 1);

    // t^3 + t = t (t+1)^2
    auto f3 = factor_poly(poly(2, {0, 1, 0, 1}));
    CHECK(f3.factors.at(poly(2, {0, 1})) == 1);
    CHECK(f3.factors.at(poly(2, {1, 1})) == 2);
}

TEST_CASE("factorization round-trips on random polynomials") {
    std::mt19937_64 rng(41);
    for (std::uint64_t p : {2, 3, 5}) {
        for (int t = 0; t < 60; ++t) {
            FpPoly f = random_poly(p, 9, rng);
            if (f.is_zero()) continue;
            auto fac = factor_poly(f);
            FpPoly prod = FpPoly::constant(p, fac.unit);
            for (const auto& [q, e] : fac.factors) {
                CHECK(is_irreducible(q));
                CHECK(q.is_monic());
                for (std::uint64_t k = 0; k < e; ++k) prod = prod * q;
            }
            CHECK(prod == f);
        }
    }
}

TEST_CASE("factorization is seed independent") {
    auto f = poly(3, {1, 0, 2, 0, 1, 2}) * poly(3, {2, 1, 1});
    auto a = factor_poly(f, 1);
    auto b = factor_poly(f, 999);
    CHECK(a.unit == b.unit);
    CHECK(a.factors == b.factors);
}

TEST_CASE("compose and eval") {
    auto f = poly(2, {1, 1, 0, 1});   // x^3 + x + 1
    auto shift = f.compose(poly(2, {1, 1}));
    CHECK(shift == poly(2, {1, 0, 1, 1}));  // (x+1)^3+(x+1)+1 = x^3+x^2+1
    CHECK(f.eval(0) == 1);
    CHECK(f.eval(1) == 1);
    CHECK(poly(5, {3, 2}).eval(4) == (3 + 2 * 4) % 5);
}

TEST_CASE("monic enumeration is complete and ordered") {
    auto deg2 = monic_polys_of_degree(2, 2);
    REQUIRE(deg2.size() == 4);
    CHECK(deg2[0] == poly(2, {0, 0, 1}));
    CHECK(deg2[3] == poly(2, {1, 1, 1}));
    auto irr = monic_irreducibles_up_to(2, 3);
    CHECK(irr.size() == 2 + 1 + 2);
}
