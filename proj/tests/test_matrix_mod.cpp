#include <doctest.h>

#include <random>
#include <utility>
#include <vector>
#include <algorithm>

#include "kmilnor/matrix_mod.hpp"

using namespace kmilnor;

using PS = std::pair<std::uint64_t, std::uint32_t>;

namespace {

MatrixMod mat(std::uint64_t p, std::uint32_t s, std::size_t r, std::size_t c,
              std::vector<std::uint64_t> e) {
    return MatrixMod(p, s, r, c, std::move(e));
}

bool is_p_power_diagonal(const MatrixMod& D, const std::vector<std::uint32_t>& divisors) {
    std::size_t nd = std::min(D.rows(), D.cols());
    if (divisors.size() != nd) return false;
    for (std::size_t i = 0; i < D.rows(); ++i)
        for (std::size_t j = 0; j < D.cols(); ++j) {
            std::uint64_t want = 0;
            if (i == j && i < nd) want = pow_u64(D.p(), divisors[i]) % D.modulus();
            if (D.at(i, j) != want) return false;
        }
    return true;
}

// brute force: all solutions of A x = b by enumeration (small sizes only)
std::vector<std::vector<std::uint64_t>> brute_solutions(const MatrixMod& A,
                                                        const std::vector<std::uint64_t>& b) {
    std::vector<std::vector<std::uint64_t>> out;
    std::uint64_t m = A.modulus();
    std::vector<std::uint64_t> x(A.cols(), 0);
    for (;;) {
        if (A.apply(x) == b) out.push_back(x);
        std::size_t k = 0;
        while (k < x.size() && ++x[k] == m) x[k++] = 0;
        if (k == x.size()) break;
    }
    return out;
}

std::vector<std::vector<std::uint64_t>> span_solutions(const MatrixMod& A,
                                                       const LinearSolution& sol) {
    std::vector<std::vector<std::uint64_t>> out;
    std::uint64_t m = A.modulus();
    std::vector<std::uint64_t> coeff(sol.kernel.size(), 0);
    for (;;) {
        std::vector<std::uint64_t> x = sol.particular;
        for (std::size_t g = 0; g < sol.kernel.size(); ++g)
            for (std::size_t i = 0; i < x.size(); ++i)
                x[i] = add_mod(x[i], mul_mod(coeff[g], sol.kernel[g][i], m), m);
        out.push_back(x);
        std::size_t k = 0;
        while (k < coeff.size() && ++coeff[k] == m) coeff[k++] = 0;
        if (k == coeff.size()) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

TEST_CASE("smith form on the worked examples") {
    auto id = MatrixMod::identity(2, 2, 2);
    auto sf = smith_form(id);
    CHECK(sf.divisors == std::vector<std::uint32_t>{0, 0});
    CHECK(sf.U * id * sf.V == sf.D);
    CHECK(is_p_power_diagonal(sf.D, sf.divisors));

    auto a = mat(2, 2, 2, 2, {2, 0, 0, 1});
    sf = smith_form(a);
    CHECK(sf.divisors == std::vector<std::uint32_t>{0, 1});
    CHECK(sf.U * a * sf.V == sf.D);
    CHECK(is_p_power_diagonal(sf.D, sf.divisors));
    CHECK(is_invertible(sf.U));
    CHECK(is_invertible(sf.V));

    auto z = mat(2, 2, 1, 1, {0});
    sf = smith_form(z);
    CHECK(sf.divisors == std::vector<std::uint32_t>{2});
}

TEST_CASE("smith form properties on random matrices") {
    std::mt19937_64 rng(3);
    const std::vector<PS> cases = {{2, 2}, {2, 3}, {3, 2}};
    for (auto [p, s] : cases) {
        std::uint64_t m = pow_u64(p, s);
        std::uniform_int_distribution<std::uint64_t> dist(0, m - 1);
        std::uniform_int_distribution<std::size_t> dim(1, 5);
        for (int t = 0; t < 40; ++t) {
            std::size_t rows = dim(rng), cols = dim(rng);
            std::vector<std::uint64_t> e(rows * cols);
            for (auto& x : e) x = dist(rng);
            MatrixMod A(p, s, rows, cols, e);
            auto sf = smith_form(A);
            CHECK(sf.U * A * sf.V == sf.D);
            CHECK(is_p_power_diagonal(sf.D, sf.divisors));
            CHECK(is_invertible(sf.U));
            CHECK(is_invertible(sf.V));
            CHECK(std::is_sorted(sf.divisors.begin(), sf.divisors.end()));
        }
    }
}

TEST_CASE("solve on the worked examples") {
    auto s1 = solve(mat(2, 2, 1, 1, {1}), {3});
    REQUIRE(s1.has_value());
    CHECK(s1->particular == std::vector<std::uint64_t>{3});
    CHECK(s1->kernel.empty());

    CHECK_FALSE(solve(mat(2, 2, 1, 1, {2}), {1}).has_value());

    auto s3 = solve(mat(2, 2, 1, 1, {2}), {2});
    REQUIRE(s3.has_value());
    // all solutions of 2x = 2 mod 4: x in {1, 3} = 1 + {0, 2}
    REQUIRE(s3->kernel.size() == 1);
    CHECK(s3->kernel[0] == std::vector<std::uint64_t>{2});
    CHECK(s3->particular[0] % 2 == 1);
}

TEST_CASE("solution sets match brute force on small systems") {
    std::mt19937_64 rng(5);
    const std::vector<PS> cases = {{2, 2}, {3, 2}, {2, 3}};
    for (auto [p, s] : cases) {
        std::uint64_t m = pow_u64(p, s);
        std::uniform_int_distribution<std::uint64_t> dist(0, m - 1);
        std::uniform_int_distribution<std::size_t> dim(1, 3);
        for (int t = 0; t < 30; ++t) {
            std::size_t rows = dim(rng), cols = dim(rng);
            std::vector<std::uint64_t> e(rows * cols);
            for (auto& x : e) x = dist(rng);
            std::vector<std::uint64_t> b(rows);
            for (auto& x : b) x = dist(rng);
            MatrixMod A(p, s, rows, cols, e);

            auto brute = brute_solutions(A, b);
            auto sol = solve(A, b);
            if (!sol.has_value()) {
                CHECK(brute.empty());
                continue;
            }
            REQUIRE_FALSE(brute.empty());
            auto spanned = span_solutions(A, *sol);
            std::sort(brute.begin(), brute.end());
            CHECK(spanned == brute);
        }
    }
}

TEST_CASE("rank mod p") {
    CHECK(rank_mod_p(MatrixMod::identity(3, 2, 4)) == 4);
    CHECK(rank_mod_p(mat(2, 2, 2, 2, {2, 2, 2, 2})) == 0);  // even entries vanish mod 2
    CHECK(rank_mod_p(mat(3, 1, 2, 3, {1, 2, 0, 2, 4, 0})) == 1);
}
