#include "kmilnor/gal_module.hpp"

#include <algorithm>
#include <cassert>

namespace kmilnor {

GModulePresentation::GModulePresentation(PrimeParams params_, MatrixMod action_)
    : params(params_), rank(action_.rows()), action(std::move(action_)) {
    if (action.rows() != action.cols())
        throw std::invalid_argument("GModulePresentation: action must be square");
    if (action.p() != params.p || action.s() != params.s)
        throw std::invalid_argument("GModulePresentation: action modulus mismatch");
    if (!is_invertible(action))
        throw std::invalid_argument("GModulePresentation: action not invertible");
    if (!(action.pow(params.group_order(params.n)) ==
          MatrixMod::identity(params.p, params.s, rank)))
        throw std::invalid_argument("GModulePresentation: action order does not divide p^n");
}

GModulePresentation GModulePresentation::reduce_mod(std::uint32_t s_prime) const {
    PrimeParams q(params.p, s_prime, params.n);
    return GModulePresentation(q, action.reduce_mod(s_prime));
}

std::vector<std::uint64_t> act_group_ring(const GroupRingElement& gamma,
                                          const GModulePresentation& M,
                                          const std::vector<std::uint64_t>& b) {
    if (gamma.params().p != M.params.p || gamma.params().s != M.params.s)
        throw std::invalid_argument("act_group_ring: parameter mismatch");
    std::uint64_t m = M.action.modulus();
    std::vector<std::uint64_t> acc(M.rank, 0);
    std::vector<std::uint64_t> power = b;
    for (std::size_t j = 0; j < gamma.coeffs().size(); ++j) {
        std::uint64_t c = gamma.coeffs()[j];
        if (c != 0)
            for (std::size_t r = 0; r < M.rank; ++r)
                acc[r] = add_mod(acc[r], mul_mod(c, power[r] % m, m), m);
        if (j + 1 < gamma.coeffs().size()) power = M.action.apply(power);
    }
    return acc;
}

std::vector<std::uint32_t> jordan_block_sizes_mod_p(const GModulePresentation& M) {
    if (M.params.s != 1)
        throw std::invalid_argument("jordan_block_sizes_mod_p: requires s = 1");
    std::uint64_t p = M.params.p;
    std::size_t r = M.rank;
    MatrixMod N = M.action - MatrixMod::identity(p, 1, r);
    std::uint64_t max_size = M.params.group_order(M.params.n);

    // d_k = rank(N^k); number of blocks of size >= k is d_{k-1} - d_k
    std::vector<std::size_t> d;
    MatrixMod Nk = MatrixMod::identity(p, 1, r);
    d.push_back(r);
    for (std::uint64_t k = 1; k <= max_size + 1; ++k) {
        Nk = Nk * N;
        d.push_back(rank_mod_p(Nk));
        if (d.back() == 0) break;
    }
    if (d.back() != 0)
        throw std::invalid_argument("jordan_block_sizes_mod_p: sigma-1 not nilpotent");
    while (d.size() < max_size + 2) d.push_back(0);

    std::vector<std::uint32_t> sizes;
    for (std::uint64_t k = max_size; k >= 1; --k) {
        std::size_t ge_k = d[k - 1] - d[k];
        std::size_t ge_k1 = d[k] - d[k + 1];
        for (std::size_t c = ge_k - ge_k1; c > 0; --c)
            sizes.push_back(static_cast<std::uint32_t>(k));
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

namespace {

// incremental F_p row span for independence tests
struct FpSpan {
    std::uint64_t p;
    std::vector<std::vector<std::uint64_t>> rows;  // reduced, leading 1

    bool try_add(std::vector<std::uint64_t> v) {
        for (const auto& row : rows) {
            std::size_t lead = 0;
            while (lead < row.size() && row[lead] == 0) ++lead;
            if (lead < v.size() && v[lead] != 0) {
                std::uint64_t f = v[lead];
                for (std::size_t j = 0; j < v.size(); ++j)
                    v[j] = sub_mod(v[j], mul_mod(f, row[j], p), p);
            }
        }
        std::size_t lead = 0;
        while (lead < v.size() && v[lead] == 0) ++lead;
        if (lead == v.size()) return false;
        std::uint64_t inv = pow_mod(v[lead], p - 2, p);
        for (auto& x : v) x = mul_mod(x, inv, p);
        rows.push_back(std::move(v));
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            auto la = std::find_if(a.begin(), a.end(), [](std::uint64_t x) { return x != 0; });
            auto lb = std::find_if(b.begin(), b.end(), [](std::uint64_t x) { return x != 0; });
            return la - a.begin() < lb - b.begin();
        });
        return true;
    }
};

MatrixMod columns_matrix(const GModulePresentation& M,
                         const std::vector<std::vector<std::uint64_t>>& cols) {
    MatrixMod C(M.params.p, M.params.s, M.rank, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < M.rank; ++i) C.at(i, j) = cols[j][i];
    return C;
}

}  // namespace

std::vector<JordanHead> jordan_basis_mod_p(const GModulePresentation& M) {
    std::vector<std::uint32_t> sizes = jordan_block_sizes_mod_p(M);
    std::uint64_t p = M.params.p;
    std::size_t r = M.rank;
    MatrixMod N = M.action - MatrixMod::identity(p, 1, r);

    std::vector<MatrixMod> Npow;  // N^0 .. N^{max}
    Npow.push_back(MatrixMod::identity(p, 1, r));
    std::uint32_t max_size = sizes.empty() ? 0 : sizes.back();
    for (std::uint32_t k = 1; k <= max_size; ++k) Npow.push_back(Npow.back() * N);

    std::vector<JordanHead> heads;
    FpSpan feet{p, {}};
    for (std::uint32_t m = max_size; m >= 1; --m) {
        std::size_t needed =
            std::count(sizes.begin(), sizes.end(), static_cast<std::uint32_t>(m));
        if (needed == 0) continue;
        auto kernel = kernel_basis(Npow[m]);
        for (const auto& v : kernel) {
            if (needed == 0) break;
            std::vector<std::uint64_t> foot = Npow[m - 1].apply(v);
            if (std::all_of(foot.begin(), foot.end(),
                            [](std::uint64_t x) { return x == 0; }))
                continue;
            if (feet.try_add(foot)) {
                heads.push_back(JordanHead{v, m});
                --needed;
            }
        }
        if (needed != 0)
            throw std::logic_error("jordan_basis_mod_p: greedy head selection failed");
    }
    return heads;
}

DecompositionReport verify_free_decomposition(const GModulePresentation& M,
                                              const DecompositionCertificate& cert) {
    DecompositionReport rep;
    rep.ranks.assign(M.params.n + 1, 0);

    for (const auto& g : cert.generators) {
        if (g.coords.size() != M.rank || g.level > M.params.n) {
            rep.failure_reason = kFailCertificateShape;
            return rep;
        }
        rep.ranks[g.level] += 1;
    }

    std::uint64_t mod = M.action.modulus();
    std::vector<std::vector<std::uint64_t>> all_cols;
    bool all_fixed = true;

    for (const auto& g : cert.generators) {
        std::uint64_t pi = M.params.group_order(g.level);
        std::vector<std::uint64_t> b = g.coords;
        for (auto& x : b) x %= mod;

        std::vector<std::vector<std::uint64_t>> orbit_cols;
        std::vector<std::uint64_t> cur = b;
        for (std::uint64_t j = 0; j < pi; ++j) {
            orbit_cols.push_back(cur);
            cur = M.action.apply(cur);
        }
        // tau acts through sigma, so sigma^{p^i} must fix b for the claimed
        // R_s G_i structure to exist; reported after (a)-(c)
        if (cur != b) all_fixed = false;
        // (a) trivial annihilator in R_s G_i
        MatrixMod C = columns_matrix(M, orbit_cols);
        if (!kernel_basis(C).empty()) {
            rep.failure_reason = kFailAnnihilator;
            return rep;
        }
        for (auto& col : orbit_cols) all_cols.push_back(std::move(col));
    }

    // (b) joint independence of the assembled map
    MatrixMod B = columns_matrix(M, all_cols);
    if (!kernel_basis(B).empty()) {
        rep.failure_reason = kFailJointKernel;
        return rep;
    }
    // (c) spanning mod p (Nakayama)
    if (rank_mod_p(B) != M.rank) {
        rep.failure_reason = kFailSpanning;
        return rep;
    }
    if (!all_fixed) {
        rep.failure_reason = kFailGeneratorNotFixed;
        return rep;
    }

    std::uint64_t total = 0;
    for (std::uint32_t i = 0; i <= M.params.n; ++i)
        total += rep.ranks[i] * M.params.group_order(i);
    if (total != M.rank)
        throw std::logic_error("verify_free_decomposition: counting identity broke");

    rep.verified = true;
    return rep;
}

DecompositionCertificate lift_basis(const GModulePresentation& M,
                                    const DecompositionCertificate& prev) {
    if (M.params.s < 2)
        throw std::invalid_argument("lift_basis: module must have s >= 2");
    GModulePresentation below = M.reduce_mod(M.params.s - 1);
    DecompositionReport rep = verify_free_decomposition(below, prev);
    if (!rep.verified)
        throw std::invalid_argument("lift_basis: certificate fails at s-1 (" +
                                    rep.failure_reason.value_or("unknown") + ")");
    // any coordinate lift works; reuse the representatives unchanged
    return prev;
}

TowerDecomposition decompose_tower(const std::vector<GModulePresentation>& tower) {
    if (tower.empty()) throw std::invalid_argument("decompose_tower: empty tower");
    for (std::size_t k = 0; k < tower.size(); ++k) {
        if (tower[k].params.s != k + 1)
            throw std::invalid_argument("decompose_tower: stage moduli must be p^1..p^S");
        if (tower[k].params.p != tower[0].params.p ||
            tower[k].params.n != tower[0].params.n ||
            tower[k].rank != tower[0].rank)
            throw std::invalid_argument("decompose_tower: inconsistent stages");
        if (k > 0 && !(tower[k].reduce_mod(k) == tower[k - 1]))
            throw std::invalid_argument("decompose_tower: stages incompatible under reduction");
    }

    TowerDecomposition out;
    const GModulePresentation& M1 = tower.front();
    std::uint64_t p = M1.params.p;

    std::vector<std::uint32_t> sizes = jordan_block_sizes_mod_p(M1);
    for (std::uint32_t size : sizes) {
        std::uint64_t w = size;
        while (w % p == 0) w /= p;
        if (w != 1) {
            out.report.ranks.assign(M1.params.n + 1, 0);
            out.report.verified = false;
            out.report.failure_reason = kFailNotTheoremShape;
            return out;
        }
    }

    DecompositionCertificate cert;
    for (const auto& head : jordan_basis_mod_p(M1)) {
        std::uint32_t level = 0;
        for (std::uint64_t w = head.block_size; w > 1; w /= p) ++level;
        cert.generators.push_back(CertGenerator{head.vector, level});
    }

    for (std::size_t k = 0; k < tower.size(); ++k) {
        if (k > 0) cert = lift_basis(tower[k], out.certificates.back());
        DecompositionReport rep = verify_free_decomposition(tower[k], cert);
        if (!rep.verified) {
            out.report = rep;
            out.report.failure_reason = "Stage" + std::to_string(k + 1) + ":" +
                                        rep.failure_reason.value_or("unknown");
            return out;
        }
        out.certificates.push_back(cert);
        out.stage_reports.push_back(std::move(rep));
    }

    // the theorem's ranks are s-independent; levels are copied by lifting, so
    // any divergence indicates a bug
    for (const auto& rep : out.stage_reports)
        if (rep.ranks != out.stage_reports.front().ranks)
            throw std::logic_error("decompose_tower: stage ranks diverged");

    out.report = out.stage_reports.back();
    return out;
}

bool tower_compatibility_check(const std::vector<DecompositionCertificate>& certs,
                               std::uint64_t p) {
    for (std::size_t k = 1; k < certs.size(); ++k) {
        const auto& prev = certs[k - 1].generators;
        const auto& cur = certs[k].generators;
        if (prev.size() != cur.size()) return false;
        std::uint64_t m = pow_u64(p, static_cast<std::uint32_t>(k));  // p^{s-1} at stage s=k+1
        for (std::size_t g = 0; g < cur.size(); ++g) {
            if (prev[g].level != cur[g].level) return false;
            if (prev[g].coords.size() != cur[g].coords.size()) return false;
            for (std::size_t i = 0; i < cur[g].coords.size(); ++i)
                if (cur[g].coords[i] % m != prev[g].coords[i] % m) return false;
        }
    }
    return true;
}

}  // namespace kmilnor
