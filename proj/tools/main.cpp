// Batch verification driver. Every subcommand writes a machine-readable JSON
// report and exits 0 iff its top-level "verified" flag is true; usage and
// input errors exit 2, failed checks exit 1.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "kmilnor/serialize.hpp"

namespace {

using namespace kmilnor;
using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20259001;

void emit_report(const json& report, const std::string& out_path) {
    std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open output path: " + out_path);
        f << text;
    }
}

int finish(const json& report, const std::string& out_path) {
    emit_report(report, out_path);
    return report.at("verified").get<bool>() ? 0 : 1;
}

// enumerate all ring elements of R_s G_i as coefficient vectors
bool next_vector(std::vector<std::uint64_t>& v, std::uint64_t modulus) {
    for (auto& c : v) {
        if (++c < modulus) return true;
        c = 0;
    }
    return false;
}

int cmd_ideal_lemma(std::uint64_t p, std::uint32_t s, std::uint32_t i, bool exhaustive,
                    std::uint64_t fuzz, double cap, std::uint64_t seed,
                    const std::string& out) {
    PrimeParams params(p, s, i);
    std::uint64_t modulus = params.modulus();
    std::uint64_t ord = params.group_order(i);

    json report{{"command", "ideal-lemma"}, {"p", p}, {"s", s}, {"i", i}, {"seed", seed}};

    // nilpotency fact by repeated ring multiplication
    GroupRingElement tau_minus_1 =
        GroupRingElement::tau(params, i) - GroupRingElement::one(params, i);
    GroupRingElement power = GroupRingElement::one(params, i);
    for (std::uint64_t k = 0; k < ord; ++k) power = power * tau_minus_1;
    bool nilpotency_ok = power.scaled(pow_u64(p, s - 1)).is_zero();
    report["nilpotency_ok"] = nilpotency_ok;

    GroupRingElement target = socle(params, i);
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    json failure_samples = json::array();

    auto check_one = [&](const std::vector<std::uint64_t>& coeffs) {
        GroupRingElement b(params, i, coeffs);
        if (b.is_zero()) return;
        ++checked;
        GroupRingElement gamma = socle_multiplier(b);
        if (!(gamma * b == target)) {
            ++failures;
            if (failure_samples.size() < 5)
                failure_samples.push_back(group_ring_to_json(b));
        }
    };

    double ring_size = 1;
    for (std::uint64_t k = 0; k < ord; ++k) ring_size *= static_cast<double>(modulus);

    std::string mode;
    if (exhaustive && ring_size <= cap) {
        mode = "exhaustive";
        std::vector<std::uint64_t> v(ord, 0);
        do {
            check_one(v);
        } while (next_vector(v, modulus));
    } else {
        // beyond the cap (or on request) fall back to seeded sampling
        mode = "sampled";
        std::uint64_t trials = fuzz == 0 ? 1000 : fuzz;
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::uint64_t> dist(0, modulus - 1);
        for (std::uint64_t t = 0; t < trials; ++t) {
            std::vector<std::uint64_t> v(ord);
            for (auto& c : v) c = dist(rng);
            check_one(v);
        }
    }
    report["mode"] = mode;
    report["checked_nonzero_elements"] = checked;
    report["failures"] = failures;
    report["failure_samples"] = failure_samples;
    report["socle"] = group_ring_to_json(target);
    report["verified"] = nilpotency_ok && failures == 0 && checked > 0;
    return finish(report, out);
}

int cmd_decompose(const std::string& module_file, std::uint32_t tower_depth,
                  const std::string& out) {
    std::ifstream f(module_file);
    if (!f) throw std::invalid_argument("cannot open module file: " + module_file);
    json mj = json::parse(f);
    GModulePresentation M = module_from_json(mj);

    std::uint32_t depth = tower_depth == 0 ? M.params.s : tower_depth;
    if (depth > M.params.s)
        throw std::invalid_argument("tower depth exceeds the module's s");

    std::vector<GModulePresentation> tower;
    for (std::uint32_t sp = 1; sp <= depth; ++sp) tower.push_back(M.reduce_mod(sp));

    TowerDecomposition dec = decompose_tower(tower);
    bool compat = tower_compatibility_check(dec.certificates, M.params.p);

    json report{{"command", "decompose"},
                {"module_file", module_file},
                {"tower_depth", depth},
                {"report", report_to_json(dec.report)},
                {"tower_compatible", compat}};
    json certs = json::array();
    for (const auto& c : dec.certificates) certs.push_back(certificate_to_json(c));
    report["certificates"] = certs;
    report["verified"] = dec.report.verified && compat;
    return finish(report, out);
}

json orbit_to_json(const SigmaOrbit& orbit) {
    json members = json::array();
    for (const auto& q : orbit.members) members.push_back(poly_to_json(q));
    return json{{"below", poly_to_json(orbit.below)}, {"members", members}};
}

int cmd_as_instance(std::uint64_t p, std::uint32_t s, std::uint32_t dF,
                    const std::string& out) {
    PrimeParams params(p, 1, 1);
    TruncatedInstance inst = enumerate_orbits(params, dF);
    K1ModuleBuild build = build_k1_module(inst, s);

    // independent confirmation through the module machinery: the certificate
    // verifies at every stage, stages cohere, and the tower decomposition
    // reproduces the same ranks
    bool stages_ok = true;
    std::vector<DecompositionCertificate> stage_certs;
    for (const auto& M : build.tower) {
        DecompositionReport rep = verify_free_decomposition(M, build.certificate);
        stages_ok = stages_ok && rep.verified;
        stage_certs.push_back(build.certificate);
    }
    bool compat = tower_compatibility_check(stage_certs, p);
    TowerDecomposition dec = decompose_tower(build.tower);
    bool ranks_match = dec.report.verified && dec.report.ranks.size() == 2 &&
                       dec.report.ranks[0] == build.ranks[0] &&
                       dec.report.ranks[1] == build.ranks[1];

    json split = json::array();
    for (const auto& orbit : inst.split_orbits) split.push_back(orbit_to_json(orbit));
    json inert = json::array();
    for (const auto& r : inst.inert_primes) inert.push_back(poly_to_json(r));

    json report{{"command", "as-instance"},
                {"p", p},
                {"s", s},
                {"dF", dF},
                {"split_orbits", split},
                {"inert_primes", inert},
                {"ranks", build.ranks},
                {"dim_norm_image", build.dim_norm_image},
                {"dim_quotient", build.dim_quotient},
                {"factor_seed", build.factor_seed},
                {"cross_check_passed", build.cross_check_passed},
                {"certificate_verified_at_all_stages", stages_ok},
                {"tower_compatible", compat},
                {"decompose_tower_ranks_match", ranks_match}};
    report["verified"] = build.cross_check_passed && stages_ok && compat && ranks_match;
    return finish(report, out);
}

int cmd_symbols_diagram(std::uint64_t p, std::uint32_t s, std::uint32_t m,
                        std::uint64_t trials, std::uint64_t seed, const std::string& out) {
    if (m < 2) throw std::invalid_argument("symbols: diagram check needs m >= 2");
    TowerField tower{Side::E, p, s, m - 1};
    std::mt19937_64 rng(seed);
    std::uint64_t checked = 0, holds = 0, skipped = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        MilnorClass c = random_monomial_symbol(tower, rng);
        std::optional<bool> ok = check_norm_residue_diagram(c);
        if (!ok.has_value()) {
            ++skipped;  // generator stays in the computable fragment; defensive
            continue;
        }
        ++checked;
        if (*ok) ++holds;
    }
    json report{{"command", "symbols"}, {"check", "diagram"},
                {"p", p},           {"s", s},
                {"m", m},           {"trials", trials},
                {"seed", seed},     {"checked", checked},
                {"holds", holds},   {"not_computable", skipped}};
    report["verified"] = checked == trials && holds == checked;
    return finish(report, out);
}

int cmd_symbols_membership(std::uint64_t p, std::uint32_t s, std::uint32_t m,
                           const std::vector<std::uint64_t>& xcoeffs, std::uint32_t dF,
                           const std::string& out) {
    FpPoly x(p, xcoeffs);
    if (x.is_zero()) throw std::invalid_argument("symbols: --x must be nonzero");
    std::uint32_t bound = dF == 0 ? static_cast<std::uint32_t>(std::max(1, x.degree())) : dF;

    TowerField ftower{Side::F, p, s, m - 1};
    std::vector<MonomialEntry> entries;
    entries.push_back(MonomialEntry::from_coefficient(
        ftower, FactoredElement::from_poly(Side::F, x)));
    for (std::uint32_t v = 1; v < m; ++v)
        entries.push_back(MonomialEntry::variable(ftower, v));
    MilnorClass cls = symbol(ftower, entries);

    KmMembership mem = norm_membership_km(cls, bound);

    json report{{"command", "symbols"},
                {"check", "membership"},
                {"p", p},
                {"s", s},
                {"m", m},
                {"dF", bound},
                {"x", poly_to_json(x)},
                {"class", milnor_class_to_json(cls)},
                {"verdict", membership_to_string(mem.verdict)}};

    bool verified = true;
    if (mem.verdict == Membership::Member) {
        report["certificate"] = milnor_class_to_json(*mem.certificate);
        report["k1_certificate"] = factored_to_json(*mem.k1.certificate);
        // replay: the certificate's norm must recompute to the input class
        NormOutcome replay = norm_symbols(*mem.certificate);
        verified = replay.computable() && *replay.value == cls;
        report["certificate_replay_ok"] = verified;
    } else if (mem.verdict == Membership::NonMember) {
        json chain = json::array();
        for (const auto& link : mem.residue_chain)
            chain.push_back(milnor_class_to_json(link));
        report["residue_chain"] = chain;
        report["k1_endpoint"] = factored_to_json(mem.base_element);
    } else {
        verified = false;  // Unknown is honest but not a verification
    }
    report["verified"] = verified;
    return finish(report, out);
}

int cmd_condition_star(std::uint64_t p, std::uint32_t n, std::uint64_t ell,
                       std::uint64_t trials, std::uint64_t seed, const std::string& out) {
    CoeffTower tower(p, n, ell);
    StarFuzzBounds bounds;
    StarFuzzReport rep = fuzz_condition_star(tower, trials, bounds, seed);
    json report{{"command", "condition-star"}, {"report", star_fuzz_report_to_json(rep)}};
    report["verified"] = rep.counterexamples.empty() && rep.norm_valuation_ok &&
                         rep.mismatches == rep.trials;
    return finish(report, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification toolkit for Galois modules of Milnor K-theory mod p^s"};
    app.require_subcommand(1);
    app.fallthrough();  // --out/--seed may follow the subcommand name

    std::string out_path;
    std::uint64_t seed = kDefaultSeed;
    app.add_option("--out", out_path, "write the JSON report here (default: stdout)");
    app.add_option("--seed", seed, "seed for all randomized checks");

    // ideal-lemma
    auto* lemma = app.add_subcommand("ideal-lemma", "socle lemma and nilpotency checks");
    std::uint64_t lp = 2;
    std::uint32_t ls = 2, li = 1;
    bool exhaustive = false;
    std::uint64_t fuzz_n = 0;
    lemma->add_option("--p", lp, "prime")->required();
    lemma->add_option("--s", ls, "modulus exponent")->required();
    lemma->add_option("--i", li, "group level")->required();
    auto* exh_flag =
        lemma->add_flag("--exhaustive", exhaustive, "check every nonzero ring element");
    lemma->add_option("--fuzz", fuzz_n, "sampled checks instead of exhaustion")
        ->excludes(exh_flag);
    double lemma_cap = 1e6;
    lemma->add_option("--cap", lemma_cap, "ring-size cap for exhaustion (default 1e6)");

    // decompose
    auto* dec = app.add_subcommand("decompose", "decompose a module file over its tower");
    std::string module_file;
    std::uint32_t tower_depth = 0;
    dec->add_option("--module-file", module_file, "module JSON file")->required();
    dec->add_option("--tower-depth", tower_depth, "stages to run (default: the file's s)");

    // as-instance
    auto* asi = app.add_subcommand("as-instance", "Artin-Schreier K_1 instance");
    std::uint64_t ap = 2;
    std::uint32_t as = 1, adF = 1;
    asi->add_option("--p", ap, "prime")->required();
    asi->add_option("--s", as, "modulus exponent")->required();
    asi->add_option("--dF", adF, "degree bound for F-side primes")->required();

    // symbols
    auto* sym = app.add_subcommand("symbols", "symbol calculus checks");
    std::uint64_t sp = 2;
    std::uint32_t ss = 1, sm = 2, sdF = 0;
    std::string check;
    std::uint64_t strials = 100;
    std::vector<std::uint64_t> xcoeffs;
    sym->add_option("--p", sp, "prime")->required();
    sym->add_option("--s", ss, "modulus exponent")->required();
    sym->add_option("--m", sm, "symbol length")->required();
    sym->add_option("--check", check, "diagram | membership")->required();
    sym->add_option("--x", xcoeffs, "F-side polynomial, ascending coefficients");
    sym->add_option("--dF", sdF, "membership truncation bound (default: deg x)");
    sym->add_option("--trials", strials, "diagram fuzz trials");

    // condition-star
    auto* star = app.add_subcommand("condition-star", "valuation impossibility fuzzing");
    std::uint64_t cp = 2, cell = 5, ctrials = 500;
    std::uint32_t cn = 2;
    star->add_option("--p", cp, "prime")->required();
    star->add_option("--n", cn, "tower height")->required();
    star->add_option("--ell", cell, "constant-field prime")->required();
    star->add_option("--trials", ctrials, "fuzz trials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (lemma->parsed())
            return cmd_ideal_lemma(lp, ls, li, exhaustive, fuzz_n, lemma_cap, seed, out_path);
        if (dec->parsed()) return cmd_decompose(module_file, tower_depth, out_path);
        if (asi->parsed()) return cmd_as_instance(ap, as, adF, out_path);
        if (sym->parsed()) {
            if (check == "diagram")
                return cmd_symbols_diagram(sp, ss, sm, strials, seed, out_path);
            if (check == "membership") {
                if (xcoeffs.empty())
                    throw std::invalid_argument("symbols --check membership needs --x");
                return cmd_symbols_membership(sp, ss, sm, xcoeffs, sdF, out_path);
            }
            throw std::invalid_argument("symbols: --check must be diagram or membership");
        }
        if (star->parsed())
            return cmd_condition_star(cp, cn, cell, ctrials, seed, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "usage error: bad input file: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
