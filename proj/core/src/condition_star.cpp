#include "kmilnor/condition_star.hpp"

#include <algorithm>
#include <cassert>

namespace kmilnor {

CoeffTower::CoeffTower(std::uint64_t p_, std::uint32_t n_, std::uint64_t ell_)
    : p(p_), n(n_), ell(ell_), D(ell_, static_cast<std::uint32_t>(pow_u64(p_, n_))) {
    if (!is_prime_u64(p)) throw std::invalid_argument("CoeffTower: p must be prime");
    if (n < 1) throw std::invalid_argument("CoeffTower: n must be >= 1");
    // sigma_D = Frobenius has exact order p^n = [D : C]
    FiniteField::Elem z = D.generator();
    if (D.frobenius(z, pow_u64(p, n - 1)) == z)
        throw std::logic_error("CoeffTower: Frobenius order defect");
}

MultiPoly MultiPoly::constant(const FiniteField* D, std::uint32_t nvars,
                              FiniteField::Elem c) {
    MultiPoly r(D, nvars);
    r.add_term(std::vector<std::uint32_t>(nvars, 0), c);
    return r;
}

MultiPoly MultiPoly::variable(const FiniteField* D, std::uint32_t nvars,
                              std::uint32_t j) {
    if (j >= nvars) throw std::invalid_argument("MultiPoly::variable: index out of range");
    MultiPoly r(D, nvars);
    std::vector<std::uint32_t> e(nvars, 0);
    e[j] = 1;
    r.add_term(std::move(e), D->one());
    return r;
}

void MultiPoly::add_term(std::vector<std::uint32_t> exps, const FiniteField::Elem& c) {
    if (exps.size() != nvars_) throw std::invalid_argument("MultiPoly: bad exponent tuple");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(std::move(exps), c);
    if (!inserted) {
        it->second = D_->add(it->second, c);
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly r(D_, nvars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            std::vector<std::uint32_t> e(nvars_);
            for (std::uint32_t k = 0; k < nvars_; ++k) e[k] = ea[k] + eb[k];
            r.add_term(std::move(e), D_->mul(ca, cb));
        }
    return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
}

MultiPoly MultiPoly::galois(std::uint64_t times) const {
    MultiPoly r(D_, nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, D_->frobenius(c, times));
    return r;
}

std::int64_t MultiPoly::vj(std::uint32_t j) const {
    if (terms_.empty()) throw std::domain_error("MultiPoly::vj: zero polynomial");
    if (j >= nvars_) throw std::invalid_argument("MultiPoly::vj: index out of range");
    std::uint32_t v = UINT32_MAX;
    for (const auto& [e, c] : terms_) v = std::min(v, e[j]);
    return static_cast<std::int64_t>(v);
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string('z') + ")";
        for (std::uint32_t k = 0; k < nvars_; ++k) {
            if (e[k] == 0) continue;
            out += "*x" + std::to_string(k);
            if (e[k] > 1) out += "^" + std::to_string(e[k]);
        }
    }
    return out;
}

FactoredMultivar FactoredMultivar::one(const CoeffTower& tower) {
    return FactoredMultivar{tower.D.one(), {}, {}};
}

std::int64_t vj(const FactoredMultivar& f, std::uint32_t j) {
    if (f.unit.is_zero()) throw std::domain_error("vj: zero element");
    std::int64_t v = 0;
    for (const auto& [g, m] : f.numerator) v += m * g.vj(j);
    for (const auto& [g, m] : f.denominator) v -= m * g.vj(j);
    return v;
}

FactoredMultivar galois_norm(const CoeffTower& tower, const FactoredMultivar& f,
                             std::uint32_t j) {
    if (j >= tower.n) throw std::invalid_argument("galois_norm: j out of range");
    std::uint64_t order = pow_u64(tower.p, tower.n - j);  // |H_j|
    std::uint64_t step = pow_u64(tower.p, j);             // H_j = <sigma_D^{p^j}>

    FactoredMultivar out;
    out.unit = tower.D.one();
    for (std::uint64_t k = 0; k < order; ++k) {
        std::uint64_t times = step * k;
        out.unit = tower.D.mul(out.unit, tower.D.frobenius(f.unit, times));
        for (const auto& [g, m] : f.numerator)
            out.numerator.emplace_back(g.galois(times), m);
        for (const auto& [g, m] : f.denominator)
            out.denominator.emplace_back(g.galois(times), m);
    }
    return out;
}

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace

ImpossibilityReport check_equation_impossible(const CoeffTower& tower, std::uint32_t j,
                                              const std::vector<std::int64_t>& c,
                                              const FactoredMultivar& gamma) {
    if (j >= tower.n)
        throw std::invalid_argument("check_equation_impossible: need 0 <= j < n");
    if (c.size() != tower.n)
        throw std::invalid_argument("check_equation_impossible: expected c_1..c_n");
    if (gamma.unit.is_zero())
        throw std::invalid_argument("check_equation_impossible: gamma must be nonzero");

    std::int64_t pnj = static_cast<std::int64_t>(pow_u64(tower.p, tower.n - j));
    std::int64_t pnj1 = static_cast<std::int64_t>(pow_u64(tower.p, tower.n - j - 1));

    std::int64_t den_v = 0;
    for (const auto& [g, m] : gamma.denominator) den_v += m * g.vj(j);
    std::int64_t num_v = 0;
    for (const auto& [g, m] : gamma.numerator) num_v += m * g.vj(j);

    ImpossibilityReport rep;
    rep.j = j;
    rep.modulus = static_cast<std::uint64_t>(pnj);
    // clearing denominators: lhs picks up the H_j-orbit of every q_l
    rep.lhs_vj = pnj1 + pnj * den_v;
    // x_k^{c_k p^{n-k}} contributes only for k = j (and j = 0 has no c_0);
    // N(u) is a constant and the p_l orbits contribute |H_j| each
    rep.rhs_vj = (j >= 1 ? c[j - 1] * pnj : 0) + pnj * num_v;
    rep.denominator_divisible = den_v > 0;
    rep.lhs_incongruent = floor_mod(rep.lhs_vj, pnj) != 0;
    rep.rhs_congruent = floor_mod(rep.rhs_vj, pnj) == 0;
    rep.mismatch = rep.lhs_vj != rep.rhs_vj;

    assert(floor_mod(rep.lhs_vj, pnj) == pnj1);
    assert(rep.rhs_congruent);
    return rep;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return std::mt19937_64(seed ^ (0x9e3779b97f4a7c15ULL * (trial + 1)));
}

namespace {

MultiPoly random_multipoly(const CoeffTower& tower, const StarFuzzBounds& bounds,
                           std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> nterms_dist(1, bounds.max_terms);
    std::uniform_int_distribution<std::uint32_t> exp_dist(0, bounds.max_degree);
    for (;;) {
        MultiPoly g(&tower.D, tower.num_vars());
        std::uint32_t nterms = nterms_dist(rng);
        for (std::uint32_t t = 0; t < nterms; ++t) {
            std::vector<std::uint32_t> e(tower.num_vars());
            for (auto& x : e) x = exp_dist(rng);
            g.add_term(std::move(e), tower.D.random_elem(rng));
        }
        if (!g.is_zero()) return g;
    }
}

MultiPoly expand_norm_side(const CoeffTower& tower,
                           const std::vector<std::pair<MultiPoly, std::int64_t>>& factors,
                           std::uint32_t j) {
    std::uint64_t order = pow_u64(tower.p, tower.n - j);
    std::uint64_t step = pow_u64(tower.p, j);
    MultiPoly prod = MultiPoly::constant(&tower.D, tower.num_vars(), tower.D.one());
    for (std::uint64_t k = 0; k < order; ++k)
        for (const auto& [g, m] : factors) {
            MultiPoly conj = g.galois(step * k);
            for (std::int64_t i = 0; i < m; ++i) prod = prod * conj;
        }
    return prod;
}

}  // namespace

FactoredMultivar random_gamma(const CoeffTower& tower, const StarFuzzBounds& bounds,
                              std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> nfac_dist(0, bounds.max_factors);
    std::uniform_int_distribution<std::int64_t> mult_dist(1, bounds.max_mult);
    FactoredMultivar gamma;
    gamma.unit = tower.D.random_nonzero(rng);
    std::uint32_t nnum = nfac_dist(rng), nden = nfac_dist(rng);
    for (std::uint32_t k = 0; k < nnum; ++k)
        gamma.numerator.emplace_back(random_multipoly(tower, bounds, rng), mult_dist(rng));
    for (std::uint32_t k = 0; k < nden; ++k)
        gamma.denominator.emplace_back(random_multipoly(tower, bounds, rng), mult_dist(rng));
    return gamma;
}

StarFuzzReport fuzz_condition_star(const CoeffTower& tower, std::uint64_t trials,
                                   const StarFuzzBounds& bounds, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("fuzz_condition_star: trials must be >= 1");
    StarFuzzReport rep;
    rep.p = tower.p;
    rep.n = tower.n;
    rep.ell = tower.ell;
    rep.trials = trials;
    rep.seed = seed;
    rep.case_counts["denominator_divisible"] = 0;
    rep.case_counts["denominator_coprime"] = 0;

    for (std::uint64_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng = trial_rng(seed, t);
        std::uniform_int_distribution<std::uint32_t> j_dist(0, tower.n - 1);
        std::uint32_t j = j_dist(rng);
        std::uniform_int_distribution<std::int64_t> c_dist(-bounds.max_c, bounds.max_c);
        std::vector<std::int64_t> c(tower.n, 0);
        for (auto& x : c) x = c_dist(rng);
        FactoredMultivar gamma = random_gamma(tower, bounds, rng);

        ImpossibilityReport check = check_equation_impossible(tower, j, c, gamma);
        rep.case_counts[check.denominator_divisible ? "denominator_divisible"
                                                    : "denominator_coprime"] += 1;

        // v_j(N_{A/A_j} gamma) = p^{n-j} v_j(gamma), confirmed on the expanded
        // conjugate products rather than the factored bookkeeping
        FactoredMultivar ng = galois_norm(tower, gamma, j);
        std::int64_t factored_v = vj(ng, j);
        MultiPoly num = expand_norm_side(tower, gamma.numerator, j);
        MultiPoly den = expand_norm_side(tower, gamma.denominator, j);
        std::int64_t expanded_v = num.vj(j) - den.vj(j);
        std::int64_t expected =
            static_cast<std::int64_t>(pow_u64(tower.p, tower.n - j)) * vj(gamma, j);
        if (factored_v != expected || expanded_v != expected)
            rep.norm_valuation_ok = false;

        if (check.mismatch && check.lhs_incongruent && check.rhs_congruent) {
            rep.mismatches += 1;
        } else {
            rep.counterexamples.push_back(t);
            break;  // reproducer recorded; this would be an implementation bug
        }
    }
    return rep;
}

}  // namespace kmilnor
