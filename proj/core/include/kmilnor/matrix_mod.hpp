#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kmilnor/prime_params.hpp"

namespace kmilnor {

// Dense matrix over Z/p^s, row-major, entries reduced to [0, p^s).
class MatrixMod {
public:
    MatrixMod(std::uint64_t p, std::uint32_t s, std::size_t rows, std::size_t cols);
    MatrixMod(std::uint64_t p, std::uint32_t s, std::size_t rows, std::size_t cols,
              std::vector<std::uint64_t> entries);

    static MatrixMod identity(std::uint64_t p, std::uint32_t s, std::size_t dim);

    std::uint64_t p() const { return p_; }
    std::uint32_t s() const { return s_; }
    std::uint64_t modulus() const { return modulus_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<std::uint64_t>& entries() const { return a_; }

    std::uint64_t& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    std::uint64_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    friend MatrixMod operator*(const MatrixMod&, const MatrixMod&);
    friend MatrixMod operator+(const MatrixMod&, const MatrixMod&);
    friend MatrixMod operator-(const MatrixMod&, const MatrixMod&);
    bool operator==(const MatrixMod&) const = default;

    MatrixMod pow(std::uint64_t e) const;
    /// Entrywise reduction to modulus p^{s'}, 1 <= s' <= s.
    MatrixMod reduce_mod(std::uint32_t s_prime) const;
    std::vector<std::uint64_t> apply(const std::vector<std::uint64_t>& x) const;

private:
    std::uint64_t p_;
    std::uint32_t s_;
    std::uint64_t modulus_;
    std::size_t rows_, cols_;
    std::vector<std::uint64_t> a_;
};

// U*A*V diagonal with entries p^{e_k}; exponent s encodes a zero entry.
// divisors holds the exponents sorted ascending.
struct SmithForm {
    std::vector<std::uint32_t> divisors;
    MatrixMod U;
    MatrixMod V;
    MatrixMod D;
};

/// Smith form over the local ring Z/p^s. Pivots take the entry of minimal
/// p-adic valuation, ties broken by lowest (row, col).
SmithForm smith_form(const MatrixMod& A);

struct LinearSolution {
    std::vector<std::uint64_t> particular;
    std::vector<std::vector<std::uint64_t>> kernel;
};

/// Solve A x = b over Z/p^s. nullopt means no solution; the kernel basis
/// generates the full solution set of A x = 0.
std::optional<LinearSolution> solve(const MatrixMod& A,
                                    const std::vector<std::uint64_t>& b);

std::vector<std::vector<std::uint64_t>> kernel_basis(const MatrixMod& A);

/// Rank of A mod p (Gaussian elimination over F_p).
std::size_t rank_mod_p(const MatrixMod& A);

/// Invertible over Z/p^s iff invertible mod p.
bool is_invertible(const MatrixMod& A);

}  // namespace kmilnor
