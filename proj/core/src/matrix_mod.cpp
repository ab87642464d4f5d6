#include "kmilnor/matrix_mod.hpp"

#include <algorithm>
#include <cassert>

namespace kmilnor {

MatrixMod::MatrixMod(std::uint64_t p, std::uint32_t s, std::size_t rows, std::size_t cols)
    : p_(p), s_(s), modulus_(pow_u64(p, s)), rows_(rows), cols_(cols),
      a_(rows * cols, 0) {
    if (modulus_ > PrimeParams::kMaxModulus)
        throw std::invalid_argument("MatrixMod: modulus exceeds the desk-scale cap");
}

MatrixMod::MatrixMod(std::uint64_t p, std::uint32_t s, std::size_t rows, std::size_t cols,
                     std::vector<std::uint64_t> entries)
    : MatrixMod(p, s, rows, cols) {
    if (entries.size() != rows * cols)
        throw std::invalid_argument("MatrixMod: entry count != rows*cols");
    for (auto& e : entries) e %= modulus_;
    a_ = std::move(entries);
}

MatrixMod MatrixMod::identity(std::uint64_t p, std::uint32_t s, std::size_t dim) {
    MatrixMod m(p, s, dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
}

static void require_same_ring(const MatrixMod& a, const MatrixMod& b) {
    if (a.p() != b.p() || a.s() != b.s())
        throw std::invalid_argument("matrix op: mismatched moduli");
}

MatrixMod operator*(const MatrixMod& a, const MatrixMod& b) {
    require_same_ring(a, b);
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix mul: shape mismatch");
    MatrixMod r(a.p(), a.s(), a.rows(), b.cols());
    std::uint64_t m = a.modulus();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            std::uint64_t aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                r.at(i, j) = add_mod(r.at(i, j), mul_mod(aik, b.at(k, j), m), m);
        }
    return r;
}

MatrixMod operator+(const MatrixMod& a, const MatrixMod& b) {
    require_same_ring(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix add: shape mismatch");
    MatrixMod r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i)
        r.a_[i] = add_mod(r.a_[i], b.a_[i], a.modulus());
    return r;
}

MatrixMod operator-(const MatrixMod& a, const MatrixMod& b) {
    require_same_ring(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix sub: shape mismatch");
    MatrixMod r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i)
        r.a_[i] = sub_mod(r.a_[i], b.a_[i], a.modulus());
    return r;
}

MatrixMod MatrixMod::pow(std::uint64_t e) const {
    if (rows_ != cols_) throw std::invalid_argument("matrix pow: not square");
    MatrixMod r = identity(p_, s_, rows_);
    MatrixMod base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

MatrixMod MatrixMod::reduce_mod(std::uint32_t s_prime) const {
    if (s_prime < 1 || s_prime > s_)
        throw std::invalid_argument("reduce_mod: target exponent out of range");
    MatrixMod r(p_, s_prime, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] % r.modulus_;
    return r;
}

std::vector<std::uint64_t> MatrixMod::apply(const std::vector<std::uint64_t>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix apply: shape mismatch");
    std::vector<std::uint64_t> y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            y[i] = add_mod(y[i], mul_mod(at(i, j), x[j] % modulus_, modulus_), modulus_);
    return y;
}

SmithForm smith_form(const MatrixMod& A) {
    std::uint64_t p = A.p();
    std::uint32_t s = A.s();
    std::uint64_t m = A.modulus();
    std::size_t rows = A.rows(), cols = A.cols();

    MatrixMod D = A;
    MatrixMod U = MatrixMod::identity(p, s, rows);
    MatrixMod V = MatrixMod::identity(p, s, cols);

    std::size_t ndiag = std::min(rows, cols);
    std::vector<std::uint32_t> divisors;
    divisors.reserve(ndiag);

    for (std::size_t t = 0; t < ndiag; ++t) {
        // pivot of minimal valuation in the trailing block, lowest (row, col)
        std::uint32_t best_v = s + 1;
        std::size_t pr = t, pc = t;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                std::uint32_t v = padic_valuation(D.at(i, j), p, s);
                if (v < best_v) {
                    best_v = v;
                    pr = i;
                    pc = j;
                }
            }
        if (best_v >= s) {
            for (std::size_t k = t; k < ndiag; ++k) divisors.push_back(s);
            break;
        }
        // move pivot to (t, t)
        if (pr != t)
            for (std::size_t j = 0; j < cols; ++j) std::swap(D.at(t, j), D.at(pr, j));
        if (pr != t)
            for (std::size_t j = 0; j < rows; ++j) std::swap(U.at(t, j), U.at(pr, j));
        if (pc != t)
            for (std::size_t i = 0; i < rows; ++i) std::swap(D.at(i, t), D.at(i, pc));
        if (pc != t)
            for (std::size_t i = 0; i < cols; ++i) std::swap(V.at(i, t), V.at(i, pc));

        // scale the pivot row so the pivot becomes exactly p^v
        std::uint64_t pv = pow_u64(p, best_v);
        std::uint64_t unit = D.at(t, t) / pv;
        std::uint64_t unit_inv = inv_mod_prime_power(unit, p, s);
        for (std::size_t j = 0; j < cols; ++j)
            D.at(t, j) = mul_mod(D.at(t, j), unit_inv, m);
        for (std::size_t j = 0; j < rows; ++j)
            U.at(t, j) = mul_mod(U.at(t, j), unit_inv, m);
        assert(D.at(t, t) == pv % m);

        // clear the pivot column; quotients are exact since the pivot has
        // minimal valuation in the block
        for (std::size_t i = t + 1; i < rows; ++i) {
            std::uint64_t e = D.at(i, t);
            if (e == 0) continue;
            std::uint64_t q = e / pv;
            for (std::size_t j = 0; j < cols; ++j)
                D.at(i, j) = sub_mod(D.at(i, j), mul_mod(q, D.at(t, j), m), m);
            for (std::size_t j = 0; j < rows; ++j)
                U.at(i, j) = sub_mod(U.at(i, j), mul_mod(q, U.at(t, j), m), m);
        }
        // clear the pivot row
        for (std::size_t j = t + 1; j < cols; ++j) {
            std::uint64_t e = D.at(t, j);
            if (e == 0) continue;
            std::uint64_t q = e / pv;
            for (std::size_t i = 0; i < rows; ++i)
                D.at(i, j) = sub_mod(D.at(i, j), mul_mod(q, D.at(i, t), m), m);
            for (std::size_t i = 0; i < cols; ++i)
                V.at(i, j) = sub_mod(V.at(i, j), mul_mod(q, V.at(i, t), m), m);
        }
        divisors.push_back(best_v);
    }
    // each pivot has minimal valuation in its trailing block, so the diagonal
    // exponents come out ascending already
    assert(std::is_sorted(divisors.begin(), divisors.end()));
    return SmithForm{std::move(divisors), std::move(U), std::move(V), std::move(D)};
}

std::optional<LinearSolution> solve(const MatrixMod& A,
                                    const std::vector<std::uint64_t>& b) {
    if (b.size() != A.rows()) throw std::invalid_argument("solve: shape mismatch");
    std::uint64_t p = A.p();
    std::uint32_t s = A.s();
    std::uint64_t m = A.modulus();

    SmithForm sf = smith_form(A);
    std::vector<std::uint64_t> c = sf.U.apply(b);
    std::size_t ndiag = std::min(A.rows(), A.cols());

    std::vector<std::uint64_t> y(A.cols(), 0);
    std::vector<std::vector<std::uint64_t>> kernel_y;
    for (std::size_t k = 0; k < ndiag; ++k) {
        std::uint32_t e = padic_valuation(sf.D.at(k, k), p, s);
        std::uint64_t pe = pow_u64(p, std::min(e, s));
        if (e >= s) {
            // zero pivot: equation 0 = c_k, coordinate fully free
            if (c[k] % m != 0) return std::nullopt;
            std::vector<std::uint64_t> g(A.cols(), 0);
            g[k] = 1;
            kernel_y.push_back(std::move(g));
            continue;
        }
        if (c[k] % pe != 0) return std::nullopt;
        y[k] = (c[k] / pe) % m;
        if (e > 0) {
            std::vector<std::uint64_t> g(A.cols(), 0);
            g[k] = pow_u64(p, s - e);
            kernel_y.push_back(std::move(g));
        }
    }
    for (std::size_t k = ndiag; k < A.rows(); ++k)
        if (c[k] % m != 0) return std::nullopt;
    for (std::size_t k = ndiag; k < A.cols(); ++k) {
        std::vector<std::uint64_t> g(A.cols(), 0);
        g[k] = 1;
        kernel_y.push_back(std::move(g));
    }

    LinearSolution sol;
    sol.particular = sf.V.apply(y);
    for (auto& g : kernel_y) sol.kernel.push_back(sf.V.apply(g));
    return sol;
}

std::vector<std::vector<std::uint64_t>> kernel_basis(const MatrixMod& A) {
    auto sol = solve(A, std::vector<std::uint64_t>(A.rows(), 0));
    assert(sol.has_value());
    return sol->kernel;
}

std::size_t rank_mod_p(const MatrixMod& A) {
    std::uint64_t p = A.p();
    std::size_t rows = A.rows(), cols = A.cols();
    std::vector<std::uint64_t> w(A.entries());
    for (auto& e : w) e %= p;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && w[piv * cols + col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap_ranges(w.begin() + piv * cols, w.begin() + (piv + 1) * cols,
                         w.begin() + rank * cols);
        std::uint64_t inv = pow_mod(w[rank * cols + col], p - 2, p);
        for (std::size_t j = col; j < cols; ++j)
            w[rank * cols + j] = mul_mod(w[rank * cols + j], inv, p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank) continue;
            std::uint64_t f = w[i * cols + col];
            if (f == 0) continue;
            for (std::size_t j = col; j < cols; ++j)
                w[i * cols + j] =
                    sub_mod(w[i * cols + j], mul_mod(f, w[rank * cols + j], p), p);
        }
        ++rank;
    }
    return rank;
}

bool is_invertible(const MatrixMod& A) {
    return A.rows() == A.cols() && rank_mod_p(A) == A.rows();
}

}  // namespace kmilnor
