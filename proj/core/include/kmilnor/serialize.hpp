#pragma once

#include <json.hpp>

#include "kmilnor/artin_schreier.hpp"
#include "kmilnor/condition_star.hpp"
#include "kmilnor/gal_module.hpp"
#include "kmilnor/group_ring.hpp"
#include "kmilnor/matrix_mod.hpp"
#include "kmilnor/milnor_symbols.hpp"

namespace kmilnor {

using nlohmann::json;

// {p, s, level, coeffs ascending by power of tau}
json group_ring_to_json(const GroupRingElement& a);
GroupRingElement group_ring_from_json(const json& j, std::uint32_t n_hint);

// {p, s, rows, cols, entries row-major}
json matrix_to_json(const MatrixMod& m);
MatrixMod matrix_from_json(const json& j);

// {p, s, n, rank, action row-major}
json module_to_json(const GModulePresentation& m);
GModulePresentation module_from_json(const json& j);

// {generators: [{coords, level}]}
json certificate_to_json(const DecompositionCertificate& c);
DecompositionCertificate certificate_from_json(const json& j);

// {ranks, verified, failure_reason}
json report_to_json(const DecompositionReport& r);

// {p, coeffs ascending}
json poly_to_json(const FpPoly& f);
FpPoly poly_from_json(const json& j);

// {side, p, unit, factors: [[poly, exponent]]}
json factored_to_json(const FactoredElement& e);

// terms: [{entries: [{coefficient, exponents}], coeff}]
json milnor_class_to_json(const MilnorClass& c);

json star_fuzz_report_to_json(const StarFuzzReport& r);

}  // namespace kmilnor
