#include "kmilnor/artin_schreier.hpp"

#include <algorithm>
#include <cassert>

namespace kmilnor {

FactoredElement FactoredElement::one(Side side, std::uint64_t p) {
    FactoredElement e;
    e.side = side;
    e.p = p;
    return e;
}

FactoredElement FactoredElement::from_poly(Side side, const FpPoly& f, std::uint64_t seed) {
    if (f.is_zero()) throw std::domain_error("FactoredElement: zero polynomial");
    FpFactorization fac = factor_poly(f, seed);
    FactoredElement e;
    e.side = side;
    e.p = f.p();
    e.unit = fac.unit;
    for (const auto& [q, m] : fac.factors) e.factors[q] = static_cast<std::int64_t>(m);
    return e;
}

FactoredElement& FactoredElement::mul(const FactoredElement& other) {
    if (side != other.side || p != other.p)
        throw std::invalid_argument("FactoredElement::mul: mismatched fields");
    unit = mul_mod(unit, other.unit, p);
    for (const auto& [q, e] : other.factors) mul_pow(q, e);
    return *this;
}

FactoredElement& FactoredElement::mul_pow(const FpPoly& irreducible, std::int64_t exp) {
    if (exp == 0) return *this;
    auto it = factors.find(irreducible);
    if (it == factors.end()) {
        factors.emplace(irreducible, exp);
    } else {
        it->second += exp;
        if (it->second == 0) factors.erase(it);
    }
    return *this;
}

FactoredElement FactoredElement::inverse() const {
    FactoredElement r = *this;
    r.unit = pow_mod(unit, p - 2, p);
    for (auto& [q, e] : r.factors) e = -e;
    return r;
}

FactoredElement FactoredElement::pow(std::int64_t e) const {
    FactoredElement r = one(side, p);
    // unit^e in F_p^x, exponent taken mod p-1
    std::int64_t um = e % static_cast<std::int64_t>(p - 1);
    if (um < 0) um += p - 1;
    r.unit = pow_mod(unit, static_cast<std::uint64_t>(um), p);
    if (e != 0)
        for (const auto& [q, k] : factors) r.factors[q] = k * e;
    return r;
}

FpPoly FactoredElement::expand() const {
    FpPoly r = FpPoly::constant(p, unit);
    for (const auto& [q, e] : factors) {
        if (e < 0) throw std::domain_error("FactoredElement::expand: negative exponent");
        for (std::int64_t k = 0; k < e; ++k) r = r * q;
    }
    return r;
}

std::string FactoredElement::to_string() const {
    std::string out = std::to_string(unit);
    char var = side_var(side);
    for (const auto& [q, e] : factors) {
        out += " * (" + q.to_string(var) + ")";
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

FpPoly sigma_act_poly(const FpPoly& f) {
    return f.compose(FpPoly(f.p(), {1, 1}));  // theta -> theta + 1
}

FactoredElement sigma_act(const FactoredElement& a) {
    if (a.side != Side::E) throw std::invalid_argument("sigma_act: E-side input required");
    FactoredElement r = FactoredElement::one(Side::E, a.p);
    r.unit = a.unit;
    for (const auto& [q, e] : a.factors) {
        FpPoly img = sigma_act_poly(q);
        // composition with a monic linear polynomial keeps factors monic; any
        // unit would be absorbed here
        if (!img.is_monic()) {
            r.unit = mul_mod(r.unit, img.leading(), a.p);
            img = img.monic();
        }
        r.mul_pow(img, e);
    }
    return r;
}

bool is_sigma_invariant(const FpPoly& f) { return sigma_act_poly(f) == f; }

FpPoly rewrite_invariant_to_t(const FpPoly& g) {
    std::uint64_t p = g.p();
    FpPoly tpoly(p, [&] {
        std::vector<std::uint64_t> c(p + 1, 0);
        c[1] = p - 1;  // -theta
        c[p] = 1;      // theta^p
        return c;
    }());
    std::vector<std::uint64_t> tcoeffs;
    FpPoly work = g;
    while (!work.is_zero()) {
        int d = work.degree();
        if (d == 0) {
            if (tcoeffs.empty()) tcoeffs.resize(1, 0);
            tcoeffs[0] = work.coeff(0);
            break;
        }
        if (d % static_cast<int>(p) != 0)
            throw std::logic_error("rewrite_invariant_to_t: input is not sigma-invariant");
        std::size_t k = static_cast<std::size_t>(d) / p;
        std::uint64_t c = work.leading();
        if (tcoeffs.size() < k + 1) tcoeffs.resize(k + 1, 0);
        tcoeffs[k] = c;
        FpPoly tk = FpPoly::constant(p, 1);
        for (std::size_t j = 0; j < k; ++j) tk = tk * tpoly;
        work = work - tk.scaled(c);
        if (!work.is_zero() && work.degree() >= d)
            throw std::logic_error("rewrite_invariant_to_t: degree failed to drop");
    }
    return FpPoly(p, std::move(tcoeffs));
}

FactoredElement norm_E_to_F(const FactoredElement& a) {
    if (a.side != Side::E) throw std::invalid_argument("norm_E_to_F: E-side input required");
    std::uint64_t p = a.p;
    FactoredElement r = FactoredElement::one(Side::F, p);
    r.unit = a.unit;  // N(u) = u^p = u in F_p
    for (const auto& [q, e] : a.factors) {
        FpPoly g = q;
        FpPoly conj = q;
        for (std::uint64_t j = 1; j < p; ++j) {
            conj = sigma_act_poly(conj);
            g = g * conj;
        }
        FpPoly h = rewrite_invariant_to_t(g);
        if (!h.is_monic())
            throw std::logic_error("norm_E_to_F: rewritten norm is not monic");
        FpFactorization fac = factor_poly(h);
        if (fac.unit != 1)
            throw std::logic_error("norm_E_to_F: rewritten norm grew a unit");
        for (const auto& [rq, m] : fac.factors)
            r.mul_pow(rq, e * static_cast<std::int64_t>(m));
    }
    return r;
}

FactoredElement include_F_to_E(const FactoredElement& f) {
    if (f.side != Side::F)
        throw std::invalid_argument("include_F_to_E: F-side input required");
    std::uint64_t p = f.p;
    FpPoly tpoly(p, [&] {
        std::vector<std::uint64_t> c(p + 1, 0);
        c[1] = p - 1;
        c[p] = 1;
        return c;
    }());
    FactoredElement r = FactoredElement::one(Side::E, p);
    r.unit = f.unit;
    for (const auto& [q, e] : f.factors) {
        FpPoly img = q.compose(tpoly);
        FpFactorization fac = factor_poly(img);
        if (fac.unit != 1)
            throw std::logic_error("include_F_to_E: composition grew a unit");
        for (const auto& [eq, m] : fac.factors)
            r.mul_pow(eq, e * static_cast<std::int64_t>(m));
    }
    return r;
}

TruncatedInstance enumerate_orbits(const PrimeParams& params, std::uint32_t dF) {
    if (params.n != 1)
        throw std::invalid_argument("enumerate_orbits: instance requires n = 1");
    if (dF < 1) throw std::invalid_argument("enumerate_orbits: dF must be >= 1");
    std::uint64_t p = params.p;

    TruncatedInstance inst;
    inst.params = params;
    inst.dF = dF;

    for (const FpPoly& r : monic_irreducibles_up_to(p, dF)) {
        FactoredElement image =
            include_F_to_E(FactoredElement::from_poly(Side::F, r));
        std::size_t nfac = image.factors.size();
        bool all_mult_one = std::all_of(image.factors.begin(), image.factors.end(),
                                        [](const auto& kv) { return kv.second == 1; });
        if (nfac == 1 && all_mult_one &&
            image.factors.begin()->first.degree() == r.degree() * static_cast<int>(p)) {
            inst.inert_primes.push_back(r);
        } else if (nfac == p && all_mult_one) {
            SigmaOrbit orbit;
            orbit.below = r;
            FpPoly rep = image.factors.begin()->first;  // smallest in key order
            FpPoly cur = rep;
            for (std::uint64_t k = 0; k < p; ++k) {
                if (cur.degree() != r.degree() || image.factors.count(cur) == 0)
                    throw std::logic_error("enumerate_orbits: image is not a full sigma-orbit");
                orbit.members.push_back(cur);
                cur = sigma_act_poly(cur);
            }
            if (!(cur == rep))
                throw std::logic_error("enumerate_orbits: orbit does not close after p steps");
            inst.split_orbits.push_back(std::move(orbit));
        } else {
            // finite primes are unramified here; a third pattern is a bug
            throw std::logic_error("enumerate_orbits: unexpected factorization pattern for " +
                                   r.to_string('t'));
        }
    }
    return inst;
}

K1ModuleBuild build_k1_module(const TruncatedInstance& inst, std::uint32_t s) {
    std::uint64_t p = inst.params.p;

    K1ModuleBuild out;
    out.factor_seed = kDefaultFactorSeed;

    // carrier: one coordinate per split-orbit member, then one per inert image
    std::map<FpPoly, std::size_t> index;
    for (const auto& orbit : inst.split_orbits)
        for (const auto& q : orbit.members) {
            index.emplace(q, out.coordinate_basis.size());
            out.coordinate_basis.push_back(q);
        }
    std::vector<std::size_t> inert_coords;
    for (const auto& r : inst.inert_primes) {
        FactoredElement img = include_F_to_E(FactoredElement::from_poly(Side::F, r));
        if (img.factors.size() != 1)
            throw std::logic_error("build_k1_module: inert image is not a single prime");
        const FpPoly& q = img.factors.begin()->first;
        index.emplace(q, out.coordinate_basis.size());
        inert_coords.push_back(out.coordinate_basis.size());
        out.coordinate_basis.push_back(q);
    }
    std::size_t dim = out.coordinate_basis.size();

    // sigma permutes orbit coordinates cyclically and fixes inert images
    MatrixMod action(p, s, dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const FpPoly& q = out.coordinate_basis[j];
        FpPoly img = sigma_act_poly(q);
        auto it = index.find(img);
        if (it == index.end())
            throw std::logic_error("build_k1_module: sigma left the coordinate basis");
        action.at(it->second, j) = 1;
    }

    for (std::uint32_t sp = 1; sp <= s; ++sp)
        out.tower.emplace_back(PrimeParams(p, sp, 1), action.reduce_mod(sp));

    for (const auto& orbit : inst.split_orbits) {
        std::vector<std::uint64_t> coords(dim, 0);
        coords[index.at(orbit.members.front())] = 1;
        out.certificate.generators.push_back(CertGenerator{std::move(coords), 1});
    }
    for (std::size_t ci : inert_coords) {
        std::vector<std::uint64_t> coords(dim, 0);
        coords[ci] = 1;
        out.certificate.generators.push_back(CertGenerator{std::move(coords), 0});
    }
    out.ranks = {inst.inert_primes.size(), inst.split_orbits.size()};

    // cross-check: dim of the truncated norm span over F_p equals the number
    // of split orbits, and the quotient dimension the number of inert primes
    std::vector<FpPoly> f_basis;
    for (const auto& orbit : inst.split_orbits) f_basis.push_back(orbit.below);
    for (const auto& r : inst.inert_primes) f_basis.push_back(r);
    std::sort(f_basis.begin(), f_basis.end());
    std::map<FpPoly, std::size_t> f_index;
    for (std::size_t i = 0; i < f_basis.size(); ++i) f_index.emplace(f_basis[i], i);

    MatrixMod norms(p, 1, f_basis.size(), dim);
    for (std::size_t j = 0; j < dim; ++j) {
        FactoredElement nq = norm_E_to_F(FactoredElement{
            Side::E, p, 1, {{out.coordinate_basis[j], 1}}});
        for (const auto& [rq, e] : nq.factors) {
            auto it = f_index.find(rq);
            if (it == f_index.end())
                throw std::logic_error("build_k1_module: norm left the truncation");
            std::int64_t em = e % static_cast<std::int64_t>(p);
            if (em < 0) em += p;
            norms.at(it->second, j) = static_cast<std::uint64_t>(em);
        }
    }
    out.dim_norm_image = rank_mod_p(norms);
    out.dim_quotient = f_basis.size() - out.dim_norm_image;
    out.cross_check_passed = out.dim_norm_image == inst.split_orbits.size() &&
                             out.dim_quotient == inst.inert_primes.size();
    return out;
}

}  // namespace kmilnor
