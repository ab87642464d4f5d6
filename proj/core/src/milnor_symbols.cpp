#include "kmilnor/milnor_symbols.hpp"

#include <algorithm>
#include <cassert>

namespace kmilnor {

std::string symbol_entry_to_string(const SymbolEntry& e, Side side) {
    if (std::holds_alternative<std::uint32_t>(e))
        return "y" + std::to_string(std::get<std::uint32_t>(e));
    return std::get<FpPoly>(e).to_string(side_var(side));
}

void MilnorClass::add_term(const NormalSymbol& sym, std::uint64_t coeff) {
    std::uint64_t m = field_.modulus();
    coeff %= m;
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(sym, coeff);
    if (!inserted) {
        it->second = add_mod(it->second, coeff, m);
        if (it->second == 0) terms_.erase(it);
    }
}

MilnorClass MilnorClass::operator+(const MilnorClass& o) const {
    if (!(field_ == o.field_) || symbol_len_ != o.symbol_len_)
        throw std::invalid_argument("MilnorClass add: mismatched classes");
    MilnorClass r = *this;
    for (const auto& [sym, c] : o.terms_) r.add_term(sym, c);
    return r;
}

MilnorClass MilnorClass::scaled(std::uint64_t c) const {
    MilnorClass r(field_, symbol_len_);
    for (const auto& [sym, k] : terms_) r.add_term(sym, mul_mod(k, c % field_.modulus(), field_.modulus()));
    return r;
}

std::string MilnorClass::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [sym, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += std::to_string(c) + "*{";
        for (std::size_t i = 0; i < sym.size(); ++i) {
            if (i) out += ", ";
            out += symbol_entry_to_string(sym[i], field_.base_side);
        }
        out += "}";
    }
    return out;
}

MonomialEntry MonomialEntry::unit_monomial(const TowerField& f) {
    return MonomialEntry{FactoredElement::one(f.base_side, f.p),
                         std::vector<std::int64_t>(f.num_vars, 0)};
}

MonomialEntry MonomialEntry::from_coefficient(const TowerField& f, FactoredElement c) {
    if (c.side != f.base_side || c.p != f.p)
        throw std::invalid_argument("MonomialEntry: coefficient field mismatch");
    return MonomialEntry{std::move(c), std::vector<std::int64_t>(f.num_vars, 0)};
}

MonomialEntry MonomialEntry::variable(const TowerField& f, std::uint32_t var) {
    if (var < 1 || var > f.num_vars)
        throw std::invalid_argument("MonomialEntry: variable index out of range");
    MonomialEntry e = unit_monomial(f);
    e.exponents[var - 1] = 1;
    return e;
}

namespace {

struct Atom {
    SymbolEntry entry;
    std::uint64_t coeff;  // multiplicity reduced mod p^s
};

std::uint64_t signed_mod(std::int64_t v, std::uint64_t m) {
    std::int64_t r = v % static_cast<std::int64_t>(m);
    if (r < 0) r += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r);
}

}  // namespace

MilnorClass symbol(const TowerField& field, const std::vector<MonomialEntry>& entries) {
    std::uint64_t m = field.modulus();
    MilnorClass out(field, static_cast<std::uint32_t>(entries.size()));

    // atoms per slot; the unit part contributes nothing (it is a p^s-th power)
    std::vector<std::vector<Atom>> atoms(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const MonomialEntry& e = entries[i];
        if (e.coefficient.side != field.base_side || e.coefficient.p != field.p)
            throw std::invalid_argument("symbol: entry field mismatch");
        if (e.exponents.size() != field.num_vars)
            throw std::invalid_argument("symbol: entry exponent count mismatch");
        for (const auto& [q, exp] : e.coefficient.factors) {
            std::uint64_t c = signed_mod(exp, m);
            if (c != 0) atoms[i].push_back(Atom{SymbolEntry{q}, c});
        }
        for (std::uint32_t v = 0; v < field.num_vars; ++v) {
            std::uint64_t c = signed_mod(e.exponents[v], m);
            if (c != 0) atoms[i].push_back(Atom{SymbolEntry{v + 1}, c});
        }
    }

    // multilinear expansion; a slot with no atoms is the entry 1 and kills
    // every term through it
    NormalSymbol sym(entries.size(), SymbolEntry{std::uint32_t{0}});
    auto expand = [&](auto&& self, std::size_t slot, std::uint64_t coeff) -> void {
        if (slot == entries.size()) {
            // a repeated tower variable reduces through {y,y} = {y,-1} to a
            // symbol with constant entry, which vanishes mod p^s
            for (std::size_t i = 0; i < sym.size(); ++i)
                if (std::holds_alternative<std::uint32_t>(sym[i]))
                    for (std::size_t j = i + 1; j < sym.size(); ++j)
                        if (sym[i] == sym[j]) return;
            out.add_term(sym, coeff);
            return;
        }
        for (const Atom& a : atoms[slot]) {
            sym[slot] = a.entry;
            self(self, slot + 1, mul_mod(coeff, a.coeff, m));
        }
    };
    expand(expand, 0, 1);
    return out;
}

MilnorClass residue(const MilnorClass& c, std::uint32_t var) {
    const TowerField& f = c.field();
    if (f.num_vars < 1 || var != f.num_vars)
        throw std::invalid_argument("residue: only the top tower variable is allowed");
    if (c.symbol_len() < 1)
        throw std::invalid_argument("residue: symbols are already of length 0");
    TowerField down = f;
    down.num_vars -= 1;
    MilnorClass out(down, c.symbol_len() - 1);
    for (const auto& [sym, coeff] : c.terms()) {
        std::size_t hits = 0, pos = 0;
        for (std::size_t i = 0; i < sym.size(); ++i) {
            if (std::holds_alternative<std::uint32_t>(sym[i]) &&
                std::get<std::uint32_t>(sym[i]) == var) {
                ++hits;
                pos = i;
            }
        }
        assert(hits <= 1);  // normal form bars repeated variables
        if (hits == 0) continue;
        NormalSymbol rest;
        rest.reserve(sym.size() - 1);
        for (std::size_t i = 0; i < sym.size(); ++i)
            if (i != pos) rest.push_back(sym[i]);
        out.add_term(rest, coeff);
    }
    return out;
}

NormOutcome norm_symbols(const MilnorClass& c) {
    const TowerField& ef = c.field();
    if (ef.base_side != Side::E)
        throw std::invalid_argument("norm_symbols: class must live over the E tower");
    TowerField ff = ef;
    ff.base_side = Side::F;
    MilnorClass out(ff, c.symbol_len());

    for (const auto& [sym, coeff] : c.terms()) {
        NormalSymbol image(sym.size(), SymbolEntry{std::uint32_t{0}});
        std::size_t genuine = 0;
        std::size_t genuine_pos = 0;
        for (std::size_t i = 0; i < sym.size(); ++i) {
            if (std::holds_alternative<std::uint32_t>(sym[i])) {
                image[i] = sym[i];
                continue;
            }
            const FpPoly& q = std::get<FpPoly>(sym[i]);
            if (is_sigma_invariant(q)) {
                image[i] = SymbolEntry{rewrite_invariant_to_t(q)};
            } else {
                ++genuine;
                genuine_pos = i;
            }
        }
        if (genuine >= 2) {
            NormOutcome bad;
            bad.offending_symbol = sym;
            return bad;
        }
        if (genuine == 0) {
            // entirely from F: norm of an inclusion is multiplication by the
            // degree p
            out.add_term(image, mul_mod(coeff, ef.p % ef.modulus(), ef.modulus()));
            continue;
        }
        const FpPoly& q = std::get<FpPoly>(sym[genuine_pos]);
        FactoredElement nq = norm_E_to_F(FactoredElement{Side::E, ef.p, 1, {{q, 1}}});
        // a non-invariant irreducible lies in a full sigma-orbit, so its norm
        // is the single prime below it
        if (nq.factors.size() != 1 || nq.factors.begin()->second != 1)
            throw std::logic_error("norm_symbols: norm of a moving prime is not prime");
        image[genuine_pos] = SymbolEntry{nq.factors.begin()->first};
        out.add_term(image, coeff);
    }
    NormOutcome ok;
    ok.value = std::move(out);
    return ok;
}

std::optional<bool> check_norm_residue_diagram(const MilnorClass& c) {
    const TowerField& f = c.field();
    if (f.num_vars < 1)
        throw std::invalid_argument("check_norm_residue_diagram: needs a tower variable");
    NormOutcome n = norm_symbols(c);
    if (!n.computable()) return std::nullopt;
    MilnorClass lhs = residue(*n.value, f.num_vars);
    NormOutcome n2 = norm_symbols(residue(c, f.num_vars));
    if (!n2.computable())  // residue only removes variable entries
        throw std::logic_error("check_norm_residue_diagram: residue broke computability");
    return lhs == *n2.value;
}

std::string membership_to_string(Membership m) {
    switch (m) {
        case Membership::Member: return "Member";
        case Membership::NonMember: return "NonMember";
        default: return "Unknown";
    }
}

K1Membership norm_membership_k1(const FactoredElement& x, std::uint32_t dF,
                                std::uint32_t s) {
    if (x.side != Side::F)
        throw std::invalid_argument("norm_membership_k1: F-side element required");
    for (const auto& [r, e] : x.factors)
        if (r.degree() > static_cast<int>(dF)) return K1Membership{Membership::Unknown, {}};

    PrimeParams params(x.p, s, 1);
    TruncatedInstance inst = enumerate_orbits(params, dF);

    std::vector<FpPoly> egens;
    for (const auto& orbit : inst.split_orbits)
        for (const auto& q : orbit.members) egens.push_back(q);
    for (const auto& r : inst.inert_primes) {
        FactoredElement img = include_F_to_E(FactoredElement::from_poly(Side::F, r));
        egens.push_back(img.factors.begin()->first);
    }

    std::vector<FpPoly> fbasis = monic_irreducibles_up_to(x.p, dF);
    std::map<FpPoly, std::size_t> findex;
    for (std::size_t i = 0; i < fbasis.size(); ++i) findex.emplace(fbasis[i], i);

    std::uint64_t mod = params.modulus();
    MatrixMod A(x.p, s, fbasis.size(), egens.size());
    for (std::size_t j = 0; j < egens.size(); ++j) {
        FactoredElement nq = norm_E_to_F(FactoredElement{Side::E, x.p, 1, {{egens[j], 1}}});
        for (const auto& [r, e] : nq.factors)
            A.at(findex.at(r), j) = signed_mod(e, mod);
    }
    std::vector<std::uint64_t> b(fbasis.size(), 0);
    for (const auto& [r, e] : x.factors) b[findex.at(r)] = signed_mod(e, mod);

    auto sol = solve(A, b);
    if (!sol) return K1Membership{Membership::NonMember, {}};

    FactoredElement cert = FactoredElement::one(Side::E, x.p);
    for (std::size_t j = 0; j < egens.size(); ++j) {
        std::uint64_t a = sol->particular[j] % mod;
        if (a != 0) cert.mul_pow(egens[j], static_cast<std::int64_t>(a));
    }
    return K1Membership{Membership::Member, std::move(cert)};
}

KmMembership norm_membership_km(const MilnorClass& c, std::uint32_t dF) {
    const TowerField& f = c.field();
    if (f.base_side != Side::F)
        throw std::invalid_argument("norm_membership_km: class must live over the F tower");
    if (c.symbol_len() != f.num_vars + 1)
        throw std::invalid_argument("norm_membership_km: class is not of the monomial shape");
    for (const auto& [sym, coeff] : c.terms()) {
        if (!std::holds_alternative<FpPoly>(sym[0]))
            throw std::invalid_argument("norm_membership_km: first entry must be a base element");
        for (std::uint32_t v = 1; v <= f.num_vars; ++v)
            if (!(sym[v] == SymbolEntry{v}))
                throw std::invalid_argument("norm_membership_km: class is not of the monomial shape");
    }

    KmMembership out;
    out.base_element = FactoredElement::one(Side::F, f.p);

    MilnorClass cur = c;
    out.residue_chain.push_back(cur);
    for (std::uint32_t v = f.num_vars; v >= 1; --v) {
        cur = residue(cur, v);
        out.residue_chain.push_back(cur);
    }
    for (const auto& [sym, coeff] : cur.terms())
        out.base_element.mul_pow(std::get<FpPoly>(sym[0]),
                                 static_cast<std::int64_t>(coeff));

    out.k1 = norm_membership_k1(out.base_element, dF, f.s);
    out.verdict = out.k1.verdict;
    if (out.verdict == Membership::Member) {
        TowerField etower = f;
        etower.base_side = Side::E;
        std::vector<MonomialEntry> entries;
        entries.push_back(MonomialEntry::from_coefficient(etower, *out.k1.certificate));
        for (std::uint32_t v = 1; v <= f.num_vars; ++v)
            entries.push_back(MonomialEntry::variable(etower, v));
        out.certificate = symbol(etower, entries);
    }
    return out;
}

MilnorClass random_monomial_symbol(const TowerField& tower, std::mt19937_64& rng) {
    if (tower.base_side != Side::E)
        throw std::invalid_argument("random_monomial_symbol: E tower required");
    std::uint64_t p = tower.p;

    static constexpr std::uint32_t kPoolDegree = 2;
    TruncatedInstance inst = enumerate_orbits(PrimeParams(p, 1, 1), kPoolDegree);
    std::vector<FpPoly> invariant_pool;  // inert images: entries inside iota(F)
    for (const auto& r : inst.inert_primes) {
        FactoredElement img = include_F_to_E(FactoredElement::from_poly(Side::F, r));
        invariant_pool.push_back(img.factors.begin()->first);
    }
    std::vector<FpPoly> full_pool = invariant_pool;  // plus genuinely E-side primes
    for (const auto& orbit : inst.split_orbits)
        for (const auto& q : orbit.members) full_pool.push_back(q);

    std::uniform_int_distribution<std::int64_t> exp_dist(-2, 2);
    std::uniform_int_distribution<std::uint64_t> unit_dist(1, p - 1);
    std::uint32_t m = tower.num_vars + 1;
    std::uniform_int_distribution<std::uint32_t> slot_dist(0, m - 1);
    std::uint32_t free_slot = slot_dist(rng);

    std::vector<MonomialEntry> entries;
    for (std::uint32_t i = 0; i < m; ++i) {
        const auto& pool = (i == free_slot) ? full_pool : invariant_pool;
        FactoredElement coeff = FactoredElement::one(Side::E, p);
        coeff.unit = unit_dist(rng);
        for (const auto& q : pool) {
            std::int64_t e = exp_dist(rng);
            if (e != 0 && rng() % 2 == 0) coeff.mul_pow(q, e);
        }
        MonomialEntry entry = MonomialEntry::from_coefficient(tower, std::move(coeff));
        for (std::uint32_t v = 0; v < tower.num_vars; ++v)
            entry.exponents[v] = exp_dist(rng);
        entries.push_back(std::move(entry));
    }
    return symbol(tower, entries);
}

}  // namespace kmilnor
