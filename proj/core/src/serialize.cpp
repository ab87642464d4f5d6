#include "kmilnor/serialize.hpp"

namespace kmilnor {

json group_ring_to_json(const GroupRingElement& a) {
    return json{{"p", a.params().p},
                {"s", a.params().s},
                {"level", a.level()},
                {"coeffs", a.coeffs()}};
}

GroupRingElement group_ring_from_json(const json& j, std::uint32_t n_hint) {
    std::uint32_t level = j.at("level").get<std::uint32_t>();
    PrimeParams params(j.at("p").get<std::uint64_t>(), j.at("s").get<std::uint32_t>(),
                       std::max(level, n_hint));
    return GroupRingElement(params, level,
                            j.at("coeffs").get<std::vector<std::uint64_t>>());
}

json matrix_to_json(const MatrixMod& m) {
    return json{{"p", m.p()},
                {"s", m.s()},
                {"rows", m.rows()},
                {"cols", m.cols()},
                {"entries", m.entries()}};
}

MatrixMod matrix_from_json(const json& j) {
    return MatrixMod(j.at("p").get<std::uint64_t>(), j.at("s").get<std::uint32_t>(),
                     j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                     j.at("entries").get<std::vector<std::uint64_t>>());
}

json module_to_json(const GModulePresentation& m) {
    return json{{"p", m.params.p},
                {"s", m.params.s},
                {"n", m.params.n},
                {"rank", m.rank},
                {"action", m.action.entries()}};
}

GModulePresentation module_from_json(const json& j) {
    PrimeParams params(j.at("p").get<std::uint64_t>(), j.at("s").get<std::uint32_t>(),
                       j.at("n").get<std::uint32_t>());
    std::size_t rank = j.at("rank").get<std::size_t>();
    MatrixMod action(params.p, params.s, rank, rank,
                     j.at("action").get<std::vector<std::uint64_t>>());
    return GModulePresentation(params, std::move(action));
}

json certificate_to_json(const DecompositionCertificate& c) {
    json gens = json::array();
    for (const auto& g : c.generators)
        gens.push_back(json{{"coords", g.coords}, {"level", g.level}});
    return json{{"generators", std::move(gens)}};
}

DecompositionCertificate certificate_from_json(const json& j) {
    DecompositionCertificate c;
    for (const auto& g : j.at("generators"))
        c.generators.push_back(CertGenerator{
            g.at("coords").get<std::vector<std::uint64_t>>(),
            g.at("level").get<std::uint32_t>()});
    return c;
}

json report_to_json(const DecompositionReport& r) {
    json j{{"ranks", r.ranks}, {"verified", r.verified}};
    j["failure_reason"] = r.failure_reason ? json(*r.failure_reason) : json(nullptr);
    return j;
}

json poly_to_json(const FpPoly& f) {
    return json{{"p", f.p()}, {"coeffs", f.coeffs()}};
}

FpPoly poly_from_json(const json& j) {
    return FpPoly(j.at("p").get<std::uint64_t>(),
                  j.at("coeffs").get<std::vector<std::uint64_t>>());
}

json factored_to_json(const FactoredElement& e) {
    json factors = json::array();
    for (const auto& [q, exp] : e.factors)
        factors.push_back(json::array({poly_to_json(q), exp}));
    return json{{"side", e.side == Side::F ? "F" : "E"},
                {"p", e.p},
                {"unit", e.unit},
                {"factors", std::move(factors)}};
}

json milnor_class_to_json(const MilnorClass& c) {
    json terms = json::array();
    for (const auto& [sym, coeff] : c.terms()) {
        json entries = json::array();
        for (const auto& entry : sym) {
            json exps = json::array();
            for (std::uint32_t v = 0; v < c.field().num_vars; ++v) {
                bool is_var = std::holds_alternative<std::uint32_t>(entry) &&
                              std::get<std::uint32_t>(entry) == v + 1;
                exps.push_back(is_var ? 1 : 0);
            }
            json coeffj;
            if (std::holds_alternative<FpPoly>(entry)) {
                FactoredElement fe = FactoredElement::one(c.field().base_side, c.field().p);
                fe.factors.emplace(std::get<FpPoly>(entry), 1);
                coeffj = factored_to_json(fe);
            } else {
                coeffj = factored_to_json(
                    FactoredElement::one(c.field().base_side, c.field().p));
            }
            entries.push_back(json{{"coefficient", std::move(coeffj)},
                                   {"exponents", std::move(exps)}});
        }
        terms.push_back(json{{"entries", std::move(entries)}, {"coeff", coeff}});
    }
    return json{{"modulus", c.field().modulus()},
                {"base_side", c.field().base_side == Side::F ? "F" : "E"},
                {"num_vars", c.field().num_vars},
                {"symbol_len", c.symbol_len()},
                {"terms", std::move(terms)}};
}

json star_fuzz_report_to_json(const StarFuzzReport& r) {
    return json{{"p", r.p},
                {"n", r.n},
                {"ell", r.ell},
                {"trials", r.trials},
                {"seed", r.seed},
                {"mismatches", r.mismatches},
                {"case_counts", r.case_counts},
                {"counterexamples", r.counterexamples},
                {"norm_valuation_ok", r.norm_valuation_ok}};
}

}  // namespace kmilnor
