#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "reference.hpp"

using namespace kvv;

namespace {

namespace fs = std::filesystem;

json reference_json() { return json::parse(std::string(kEmbeddedScenario)); }

fs::path write_temp(const std::string& name, const std::string& text) {
    const fs::path p = fs::path(::testing::TempDir()) / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Exit status of the CLI with stdout and stderr discarded.
int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + KVV_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json flipped_a() {
    json j = reference_json();
    for (auto& [_, v] : j["divisors"]["A"].items()) v = (-Rational::from_string(v.get<std::string>())).to_string();
    return j;
}

} // namespace

TEST(Scenario, EmbeddedMatchesTheShippedFile) {
    EXPECT_EQ(load_scenario(KVV_SCENARIO_PATH), kvv::testing::reference_scenario());
}

TEST(Scenario, EmbeddedShape) {
    const auto& sc = kvv::testing::reference_scenario();
    EXPECT_EQ(sc.blowups.size(), 11u);
    EXPECT_EQ(sc.contraction.size(), 11u);
    EXPECT_EQ(sc.plane_curves.size(), 7u);
    ASSERT_TRUE(sc.witness);
    ASSERT_TRUE(sc.pencil);
    EXPECT_EQ(sc.pencil->prime, 5);
    EXPECT_FALSE(sc.expectations.empty());
}

TEST(Scenario, RoundTripIsExact) {
    const auto& sc = kvv::testing::reference_scenario();
    const json once = to_json(sc);
    const Scenario again = scenario_from_json(once);
    EXPECT_EQ(again, sc);
    EXPECT_EQ(to_json(again).dump(2), once.dump(2));
}

TEST(Scenario, EmptyAndMalformedInput) {
    EXPECT_THROW(parse_scenario(""), ParseError);
    EXPECT_THROW(parse_scenario("  \n"), ParseError);
    EXPECT_THROW(parse_scenario("{\"name\": "), ParseError);
    EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), ParseError);
    try {
        parse_scenario("{\n  \"name\": 3,,\n}", "x.json");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("x.json:2:"), std::string::npos) << e.what();
    }
}

TEST(Scenario, SchemaErrors) {
    {
        json j = reference_json();
        j["contraction"].push_back("nope");
        EXPECT_THROW(scenario_from_json(j), SchemaError);
    }
    {
        json j = reference_json();
        j["surface"]["blowups"][0]["centers"]["missing"] = 1;
        try {
            scenario_from_json(j);
            FAIL();
        } catch (const SchemaError& e) {
            EXPECT_NE(std::string(e.what()).find("/surface/blowups/0"), std::string::npos) << e.what();
        }
    }
    {
        json j = reference_json();
        j["unexpected"] = true;
        EXPECT_THROW(scenario_from_json(j), SchemaError);
    }
    {
        json j = reference_json();
        j["divisors"]["A"]["G_3"] = "1/0";
        EXPECT_THROW(scenario_from_json(j), SchemaError);
    }
    {
        json j = reference_json();
        j["witness"]["divisor"] = "Z";
        EXPECT_THROW(scenario_from_json(j), SchemaError);
    }
}

TEST(Report, DeterministicAndAuditClean) {
    const auto& sc = kvv::testing::reference_scenario();
    const auto a = cmd_verify(sc, Mode::Audit);
    const auto b = cmd_verify(sc, Mode::Audit);
    EXPECT_EQ(render_json(a.report), render_json(b.report));
    EXPECT_EQ(a.exit_code, kExitOk);
    EXPECT_TRUE(a.report["audit"]["passed"].get<bool>());
    EXPECT_EQ(a.report["audit"]["checked"].get<std::size_t>(), sc.expectations.size());
}

TEST(Report, FlippedSignOfAChangesVerdictAndFailsAudit) {
    const Scenario sc = scenario_from_json(flipped_a());
    const auto o = cmd_verify(sc, Mode::Audit);
    EXPECT_EQ(o.exit_code, kExitAuditMismatch);
    EXPECT_EQ(o.report["witness"]["verdict"], "INCONCLUSIVE");
    EXPECT_FALSE(o.report["audit"]["mismatches"].empty());
}

TEST(Report, NonContractibleScenarioIsAnError) {
    json j = reference_json();
    j["contraction"].push_back("F_a");
    const Scenario sc = scenario_from_json(j);
    EXPECT_THROW(cmd_verify(sc, Mode::Report), NotContractible);
}

TEST(Report, PencilRejectsNonPrime) {
    EXPECT_THROW(pencil_report(4, 1), BadCharacteristic);
    EXPECT_THROW(pencil_report(2, 1), BadCharacteristic);
}

TEST(Report, TextRenderingFlattensPointers) {
    const json j = {{"a", {{"b", 1}}}, {"c", json::array({"x", "y"})}};
    const std::string t = render_text(j);
    EXPECT_NE(t.find("/a/b = 1"), std::string::npos) << t;
    EXPECT_NE(t.find("/c/1 = y"), std::string::npos) << t;
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("audit"), kExitOk);
    EXPECT_EQ(run_cli("verify --mode audit --format text"), kExitOk);
    EXPECT_EQ(run_cli("pencil --prime 5"), kExitOk);
    EXPECT_EQ(run_cli("dump-lattice"), kExitOk);
    EXPECT_EQ(run_cli("scenario"), kExitOk);

    const auto flipped = write_temp("flipped.json", flipped_a().dump(2));
    EXPECT_EQ(run_cli("audit --scenario \"" + flipped.string() + "\""), kExitAuditMismatch);
    EXPECT_EQ(run_cli("verify --scenario \"" + flipped.string() + "\""), kExitOk);

    json nc = reference_json();
    nc["contraction"].push_back("F_a");
    const auto bad = write_temp("noncontractible.json", nc.dump());
    EXPECT_EQ(run_cli("verify --scenario \"" + bad.string() + "\""), kExitScenarioError);
    const auto empty = write_temp("empty.json", "");
    EXPECT_EQ(run_cli("verify --scenario \"" + empty.string() + "\""), kExitScenarioError);
    EXPECT_EQ(run_cli("verify --scenario /nonexistent.json"), kExitScenarioError);
    EXPECT_EQ(run_cli("pencil --prime 4"), kExitScenarioError);
    EXPECT_EQ(run_cli("--no-such-flag"), kExitScenarioError);
    EXPECT_EQ(run_cli(""), kExitScenarioError);
}

TEST(Cli, ReportFileIsByteStable) {
    const fs::path a = fs::path(::testing::TempDir()) / "r1.json", b = fs::path(::testing::TempDir()) / "r2.json";
    ASSERT_EQ(run_cli("verify --out \"" + a.string() + "\""), kExitOk);
    ASSERT_EQ(run_cli("verify --out \"" + b.string() + "\""), kExitOk);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(json::parse(slurp(a)), cmd_verify(kvv::testing::reference_scenario(), Mode::Report).report);
}
