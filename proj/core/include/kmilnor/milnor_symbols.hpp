#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "kmilnor/artin_schreier.hpp"
#include "kmilnor/fp_poly.hpp"

namespace kmilnor {

// Iterated Laurent tower over one of the two rational function fields:
// base((y_1))...((y_num_vars)). Symbol entries are restricted to monomial
// form, so classes never need general Laurent arithmetic.
struct TowerField {
    Side base_side = Side::F;
    std::uint64_t p = 2;
    std::uint32_t s = 1;
    std::uint32_t num_vars = 1;  // tower variables y_1..y_num_vars

    std::uint64_t modulus() const { return pow_u64(p, s); }
    bool operator==(const TowerField&) const = default;
};

// Normal-form symbol entry: a tower variable (1-based index) or a monic
// irreducible of the base field. Constants die mod p^s and are never stored.
using SymbolEntry = std::variant<std::uint32_t, FpPoly>;
using NormalSymbol = std::vector<SymbolEntry>;

std::string symbol_entry_to_string(const SymbolEntry& e, Side side);

// A Z/p^s-linear combination of normal-form symbols of a fixed length.
class MilnorClass {
public:
    MilnorClass(TowerField field, std::uint32_t symbol_len)
        : field_(field), symbol_len_(symbol_len) {}

    const TowerField& field() const { return field_; }
    std::uint32_t symbol_len() const { return symbol_len_; }
    const std::map<NormalSymbol, std::uint64_t>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Accumulate coeff * sym, pruning zero coefficients.
    void add_term(const NormalSymbol& sym, std::uint64_t coeff);

    MilnorClass operator+(const MilnorClass&) const;
    MilnorClass scaled(std::uint64_t c) const;
    bool operator==(const MilnorClass&) const = default;

    std::string to_string() const;

private:
    TowerField field_;
    std::uint32_t symbol_len_;
    std::map<NormalSymbol, std::uint64_t> terms_;
};

// One entry of a symbol before normalization: coefficient * prod y_i^{a_i}.
struct MonomialEntry {
    FactoredElement coefficient;
    std::vector<std::int64_t> exponents;  // one per tower variable

    static MonomialEntry unit_monomial(const TowerField& f);
    static MonomialEntry from_coefficient(const TowerField& f, FactoredElement c);
    static MonomialEntry variable(const TowerField& f, std::uint32_t var);
};

/// Multilinear expansion into normal form: each entry splits into its
/// irreducible and variable atoms, constants vanish (they are p^s-th powers),
/// and symbols repeating a tower variable vanish via {y,y} = {y,-1}.
MilnorClass symbol(const TowerField& field, const std::vector<MonomialEntry>& entries);

/// Residue with respect to the top tower variable: drops symbols not
/// containing it, removes the variable entry from the rest with sign +1
/// (residue signs are p^s-th powers in characteristic p).
MilnorClass residue(const MilnorClass& c, std::uint32_t var);

struct NormOutcome {
    std::optional<MilnorClass> value;              // empty means NotComputable
    std::optional<NormalSymbol> offending_symbol;  // witness when not computable
    bool computable() const { return value.has_value(); }
};

/// Norm along E/F via the projection formula. Computable exactly when each
/// symbol carries at most one entry outside the image of F; symbols entirely
/// from F go to p times themselves.
NormOutcome norm_symbols(const MilnorClass& c);

/// (residue of norm) == (norm of residue); nullopt when the norm is not
/// computable on the given class.
std::optional<bool> check_norm_residue_diagram(const MilnorClass& c);

enum class Membership { Member, NonMember, Unknown };
std::string membership_to_string(Membership m);

struct K1Membership {
    Membership verdict = Membership::Unknown;
    std::optional<FactoredElement> certificate;  // E-side preimage when Member
};

/// Is the class of x a Z/p^s-combination of norms, within the degree-dF
/// truncation? Decided by exact linear algebra on exponent vectors. Unknown
/// only when x involves primes beyond the bound.
K1Membership norm_membership_k1(const FactoredElement& x, std::uint32_t dF,
                                std::uint32_t s);

struct KmMembership {
    Membership verdict = Membership::Unknown;
    std::optional<MilnorClass> certificate;  // E-tower class with norm == input
    std::vector<MilnorClass> residue_chain;  // input down to the k_1 endpoint
    FactoredElement base_element;            // x recovered from the class
    K1Membership k1;
};

/// Norm membership for classes of the monomial shape {x, y_1, ..., y_{m-1}}:
/// Member lifts a k_1 certificate by the projection formula, NonMember follows
/// the residue chain to a certified k_1 NonMember.
KmMembership norm_membership_km(const MilnorClass& c, std::uint32_t dF);

/// Seeded random monomial symbol over an E-side tower, kept inside the
/// computable fragment (at most one entry outside the image of F).
MilnorClass random_monomial_symbol(const TowerField& tower, std::mt19937_64& rng);

}  // namespace kmilnor
