#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmilnor/group_ring.hpp"
#include "kmilnor/matrix_mod.hpp"
#include "kmilnor/prime_params.hpp"

namespace kmilnor {

// A finitely generated module over R_s[G], G cyclic of order p^n, presented on
// a free Z/p^s carrier by the action matrix of the fixed generator sigma.
struct GModulePresentation {
    PrimeParams params;
    std::size_t rank = 0;
    MatrixMod action;

    GModulePresentation(PrimeParams params_, MatrixMod action_);

    GModulePresentation reduce_mod(std::uint32_t s_prime) const;
    bool operator==(const GModulePresentation&) const = default;
};

// Claimed generator of a free R_s G_i summand: tau acts through sigma, so a
// level-i generator must be fixed by sigma^{p^i}.
struct CertGenerator {
    std::vector<std::uint64_t> coords;
    std::uint32_t level = 0;
    bool operator==(const CertGenerator&) const = default;
};

struct DecompositionCertificate {
    std::vector<CertGenerator> generators;
    bool operator==(const DecompositionCertificate&) const = default;
};

struct DecompositionReport {
    std::vector<std::uint64_t> ranks;  // r_0..r_n, tallied by level
    bool verified = false;
    std::optional<std::string> failure_reason;
};

inline constexpr const char* kFailCertificateShape = "CertificateShape";
inline constexpr const char* kFailGeneratorNotFixed = "GeneratorNotFixedAtLevel";
inline constexpr const char* kFailAnnihilator = "AnnihilatorNonzero";
inline constexpr const char* kFailJointKernel = "JointKernelNonzero";
inline constexpr const char* kFailSpanning = "SpanningFails";
inline constexpr const char* kFailNotTheoremShape = "NotTheoremShape";

/// gamma (level-i group ring element) applied to a coordinate vector through
/// the module action: sum gamma_j sigma^j b.
std::vector<std::uint64_t> act_group_ring(const GroupRingElement& gamma,
                                          const GModulePresentation& M,
                                          const std::vector<std::uint64_t>& b);

/// Jordan block sizes of the nilpotent operator sigma-1 on an s=1 module,
/// recovered from the rank sequence of its powers.
std::vector<std::uint32_t> jordan_block_sizes_mod_p(const GModulePresentation& M);

struct JordanHead {
    std::vector<std::uint64_t> vector;
    std::uint32_t block_size = 0;
};

/// Cyclic generators for the Jordan blocks of sigma-1, picked greedily from
/// the largest block size down; deterministic by kernel basis order.
std::vector<JordanHead> jordan_basis_mod_p(const GModulePresentation& M);

/// Checks a claimed decomposition into free R_s G_i summands: generator
/// fixedness at its level, per-generator annihilator freeness, joint
/// independence, and spanning mod p (Nakayama).
DecompositionReport verify_free_decomposition(const GModulePresentation& M,
                                              const DecompositionCertificate& cert);

/// Coordinate-wise lift of a certificate valid for reduce_mod(M, s-1).
/// Throws if prev fails verification there.
DecompositionCertificate lift_basis(const GModulePresentation& M,
                                    const DecompositionCertificate& prev);

struct TowerDecomposition {
    DecompositionReport report;                       // for the top stage
    std::vector<DecompositionCertificate> certificates;  // one per stage
    std::vector<DecompositionReport> stage_reports;
};

/// Runs the induction over a tower M_1, ..., M_S compatible under reduce_mod:
/// Jordan seed at s=1, then lift-and-verify at each stage. Block sizes that
/// are not p-powers yield failure tag NotTheoremShape.
TowerDecomposition decompose_tower(const std::vector<GModulePresentation>& tower);

/// True iff each stage-s certificate reduces generator-by-generator, with
/// matching levels, to the stage-(s-1) certificate.
bool tower_compatibility_check(const std::vector<DecompositionCertificate>& certs,
                               std::uint64_t p);

}  // namespace kmilnor
