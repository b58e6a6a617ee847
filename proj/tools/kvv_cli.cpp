// Command-line front end: verify / audit a scenario, scan the cubic pencil,
// dump the Picard lattice, and run the exploratory searches.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kvv/embedded_scenario.hpp"
#include "kvv/report.hpp"
#include "kvv/search.hpp"

namespace {

struct Output {
    std::string out_path;
    std::string format = "json";

    int emit(const kvv::json& j) const {
        const std::string text = format == "text" ? kvv::render_text(j) : kvv::render_json(j);
        if (out_path.empty()) {
            std::cout << text;
            return 0;
        }
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "kvv: cannot write " << out_path << "\n";
            return kvv::kExitScenarioError;
        }
        f << text;
        return 0;
    }
};

kvv::Scenario scenario_from(const std::string& path) {
    if (path.empty()) return kvv::parse_scenario(std::string(kvv::kEmbeddedScenario), "<embedded>");
    return kvv::load_scenario(path);
}

void add_output_flags(CLI::App* cmd, Output& out) {
    cmd->add_option("--out", out.out_path, "write the report to this file instead of stdout");
    cmd->add_option("--format", out.format, "json or text")->check(CLI::IsMember({"json", "text"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact lattice and finite-field checks for a characteristic-5 klt del Pezzo surface"};
    app.require_subcommand(1);

    Output out;
    std::string scenario_path;
    std::string mode = "report";

    auto* verify = app.add_subcommand("verify", "run every check on a scenario");
    verify->add_option("--scenario", scenario_path, "scenario file (default: the embedded reference scenario)");
    verify->add_option("--mode", mode, "report or audit")->check(CLI::IsMember({"report", "audit"}));
    add_output_flags(verify, out);

    auto* audit = app.add_subcommand("audit", "verify and compare against the scenario's expectations");
    audit->add_option("--scenario", scenario_path, "scenario file (default: the embedded reference scenario)");
    add_output_flags(audit, out);

    long prime = 5;
    int ext_degree = 2;
    auto* pencil = app.add_subcommand("pencil", "scan the cubic pencil and its base locus over F_p");
    pencil->add_option("--prime,-p", prime, "characteristic");
    pencil->add_option("--ext-degree", ext_degree, "enumerate points over F_{p^N}")->check(CLI::Range(1, 6));
    add_output_flags(pencil, out);

    auto* dump = app.add_subcommand("dump-lattice", "print basis, Gram matrix and classes of the final surface");
    dump->add_option("--scenario", scenario_path, "scenario file (default: the embedded reference scenario)");
    add_output_flags(dump, out);

    int range = 1, max_den = 2;
    std::size_t max_support = 1;
    auto* search = app.add_subcommand("search", "exploratory search for boundaries and witness divisors");
    search->add_option("--scenario", scenario_path, "scenario file (default: the embedded reference scenario)");
    search->add_option("--range", range, "coefficient range for candidate divisors")->check(CLI::Range(1, 3));
    search->add_option("--max-denominator", max_den, "largest boundary denominator")->check(CLI::Range(2, 6));
    search->add_option("--max-support", max_support, "largest boundary support")->check(CLI::Range(1, 3));
    add_output_flags(search, out);

    auto* show = app.add_subcommand("scenario", "print the embedded reference scenario");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kvv::kExitScenarioError;
    }

    try {
        if (*show) {
            std::cout << kvv::kEmbeddedScenario;
            return 0;
        }
        if (*verify || *audit) {
            const kvv::Mode m = (*audit || mode == "audit") ? kvv::Mode::Audit : kvv::Mode::Report;
            const auto outcome = kvv::cmd_verify(scenario_from(scenario_path), m);
            if (const int rc = out.emit(outcome.report); rc != 0) return rc;
            if (outcome.exit_code == kvv::kExitAuditMismatch) {
                for (const auto& mm : outcome.report["audit"]["mismatches"])
                    std::cerr << "mismatch " << mm["path"].get<std::string>() << ": expected "
                              << mm["expected"].dump() << ", computed " << mm["computed"].dump() << "\n";
            }
            return outcome.exit_code;
        }
        if (*pencil) return out.emit(kvv::pencil_report(prime, ext_degree));
        if (*dump) return out.emit(kvv::dump_lattice(scenario_from(scenario_path)));
        if (*search) {
            const kvv::Scenario sc = scenario_from(scenario_path);
            const auto c = kvv::plan_contraction(sc.build_surface(), sc.contraction);
            kvv::json j;
            j["label"] = "exploratory";
            std::vector<std::string> gens;
            for (const auto& curve : c.source().curves())
                if (curve.is_prime && !c.contracts(curve.name)) gens.push_back(curve.name);
            j["generators"] = gens;
            const std::string wname = sc.witness ? sc.witness->ample_witness : gens.front();
            j["ample_witness"] = wname;
            j["candidates"] = kvv::json::array();
            for (const auto& cand : kvv::search_witness_divisors(c, gens, kvv::Divisor::single(wname), range, max_den,
                                                                 max_support))
                j["candidates"].push_back({{"divisor", kvv::detail::divisor_to_json(cand.ample_candidate)},
                                           {"boundary", kvv::detail::divisor_to_json(cand.boundary)},
                                           {"chi", cand.chi.to_string()},
                                           {"verdict", kvv::to_string(cand.verdict)}});
            if (sc.witness) {
                const auto in = kvv::witness_input(sc);
                const auto& s = c.source();
                const auto fl = s.floor_divisor(kvv::pullback(c, -in.ample_candidate).total);
                j["boundaries_for_scenario_divisor"] = kvv::json::array();
                for (const auto& b : kvv::search_relative_boundaries(c, s.divisor_class(fl), max_den, max_support))
                    j["boundaries_for_scenario_divisor"].push_back(kvv::detail::divisor_to_json(b));
            }
            return out.emit(j);
        }
    } catch (const kvv::InternalError& e) {
        std::cerr << "kvv: internal invariant violated: " << e.what() << "\n";
        return kvv::kExitInternal;
    } catch (const kvv::NotContractible& e) {
        std::cerr << "kvv: NotContractible: " << e.what() << "\n";
        return kvv::kExitScenarioError;
    } catch (const kvv::Error& e) {
        std::cerr << "kvv: " << e.what() << "\n";
        return kvv::kExitScenarioError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "kvv: " << e.what() << "\n";
        return kvv::kExitScenarioError;
    } catch (const std::exception& e) {
        std::cerr << "kvv: internal error: " << e.what() << "\n";
        return kvv::kExitInternal;
    }
    return 0;
}
