#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "kmilnor/finite_field.hpp"
#include "kmilnor/prime_params.hpp"

namespace kmilnor {

// A = D(x_0, ..., x_n) over B = C(x_0, ..., x_n) with C = F_ell and
// D = F_{ell^{p^n}}; sigma_D is the Frobenius x -> x^ell, of exact order p^n.
struct CoeffTower {
    std::uint64_t p = 2;
    std::uint32_t n = 1;
    std::uint64_t ell = 3;
    FiniteField D;

    CoeffTower(std::uint64_t p_, std::uint32_t n_, std::uint64_t ell_);
    std::uint32_t num_vars() const { return n + 1; }  // x_0 .. x_n
};

// Sparse multivariate polynomial over D in x_0..x_n.
class MultiPoly {
public:
    MultiPoly(const FiniteField* D, std::uint32_t nvars)
        : D_(D), nvars_(nvars) {}

    static MultiPoly constant(const FiniteField* D, std::uint32_t nvars,
                              FiniteField::Elem c);
    static MultiPoly variable(const FiniteField* D, std::uint32_t nvars,
                              std::uint32_t j);

    std::uint32_t nvars() const { return nvars_; }
    const std::map<std::vector<std::uint32_t>, FiniteField::Elem>& terms() const {
        return terms_;
    }
    bool is_zero() const { return terms_.empty(); }

    void add_term(std::vector<std::uint32_t> exps, const FiniteField::Elem& c);
    MultiPoly operator+(const MultiPoly&) const;
    MultiPoly operator*(const MultiPoly&) const;
    bool operator==(const MultiPoly&) const;

    /// Coefficientwise sigma_D^times; variables are fixed.
    MultiPoly galois(std::uint64_t times) const;
    /// Largest power of x_j dividing the polynomial; throws on zero input.
    std::int64_t vj(std::uint32_t j) const;

    std::string to_string() const;

private:
    const FiniteField* D_;
    std::uint32_t nvars_;
    std::map<std::vector<std::uint32_t>, FiniteField::Elem> terms_;
};

// gamma = u * (p_1 ... p_t) / (q_1 ... q_w) in user-supplied factored form;
// multiplicities are positive, primality of factors is not certified.
struct FactoredMultivar {
    FiniteField::Elem unit;
    std::vector<std::pair<MultiPoly, std::int64_t>> numerator;
    std::vector<std::pair<MultiPoly, std::int64_t>> denominator;

    static FactoredMultivar one(const CoeffTower& tower);
};

/// x_j-adic valuation, numerator minus denominator.
std::int64_t vj(const FactoredMultivar& f, std::uint32_t j);

/// prod_{h in H_j} h(f) with H_j generated by sigma_D^{p^j}, |H_j| = p^{n-j};
/// the result stays in factored form.
FactoredMultivar galois_norm(const CoeffTower& tower, const FactoredMultivar& f,
                             std::uint32_t j);

struct ImpossibilityReport {
    std::uint32_t j = 0;
    std::int64_t lhs_vj = 0;   // valuation of the denominator-cleared left side
    std::int64_t rhs_vj = 0;   // valuation of the right side
    std::uint64_t modulus = 0; // p^{n-j}
    bool denominator_divisible = false;  // x_j divides some q_l
    bool lhs_incongruent = false;        // lhs != 0 mod p^{n-j}
    bool rhs_congruent = false;          // rhs == 0 mod p^{n-j}
    bool mismatch = false;
};

/// Valuation analysis of x_j^{p^{n-j-1}} = x_1^{c_1 p^{n-1}} ... x_n^{c_n}
/// N_{A/A_j}(gamma) after clearing denominators. c holds c_1..c_n; for j = 0
/// no c_0 exists and none is read.
ImpossibilityReport check_equation_impossible(const CoeffTower& tower, std::uint32_t j,
                                              const std::vector<std::int64_t>& c,
                                              const FactoredMultivar& gamma);

struct StarFuzzBounds {
    std::uint32_t max_terms = 3;
    std::uint32_t max_degree = 3;
    std::uint32_t max_factors = 2;
    std::int64_t max_mult = 2;
    std::int64_t max_c = 2;
};

struct StarFuzzReport {
    std::uint64_t p = 0;
    std::uint32_t n = 0;
    std::uint64_t ell = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t mismatches = 0;
    std::map<std::string, std::uint64_t> case_counts;
    std::vector<std::uint64_t> counterexamples;  // trial indices; empty on success
    bool norm_valuation_ok = true;  // v_j(N gamma) == p^{n-j} v_j(gamma) each trial
};

/// Seeded randomized confirmation: every sampled (j, c, gamma) must produce a
/// valuation mismatch. A matching trial is recorded as a reproducer and stops
/// the run (it would indicate an implementation bug).
StarFuzzReport fuzz_condition_star(const CoeffTower& tower, std::uint64_t trials,
                                   const StarFuzzBounds& bounds, std::uint64_t seed);

/// Per-trial rng stream: deterministic given (seed, trial index).
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Random sparse gamma within the bounds (shared by the fuzzer and the CLI).
FactoredMultivar random_gamma(const CoeffTower& tower, const StarFuzzBounds& bounds,
                              std::mt19937_64& rng);

}  // namespace kmilnor
