// Copyright 2026 The qauth Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qauth/scenario.hpp"

using namespace qauth;
using namespace qauth::cli;
namespace fs = std::filesystem;

namespace {

json run_json(const json &doc) { return execute(parse_config(doc)).document; }

struct Captured {
    int status;
    std::string out;
    std::string err;
};

Captured invoke(const RunOptions &opts) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = run(opts, out, err);
    return {status, out.str(), err.str()};
}

fs::path scratch_dir() {
    const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
    auto dir = fs::temp_directory_path() / (std::string("qauth_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path &path, const std::string &text) {
    std::ofstream(path, std::ios::binary) << text;
}

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json identity_operator(std::size_t d) {
    json rows = json::array();
    for (std::size_t i = 0; i < d; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < d; ++j) {
            row.push_back(json::array({i == j ? 1.0 : 0.0, 0.0}));
        }
        rows.push_back(row);
    }
    return {{"dims", {d}}, {"matrix", rows}};
}

json pauli_x_operator() {
    return {{"dims", {2}}, {"matrix", {{{0, 0}, {1, 0}}, {{1, 0}, {0, 0}}}}};
}

json ket0() { return {{"dims", {2}}, {"amplitudes", {{1, 0}, {0, 0}}}}; }

} // namespace

TEST(Config, ParsesAllFields) {
    const auto cfg = parse_config(json::parse(R"({"scenario": "curty_santos", "seed": 9,
        "parameters": {"unitary": "identity"}, "output": {"format": "csv", "path": "out.csv"}})"));
    EXPECT_EQ(cfg.kind, ScenarioKind::CurtySantos);
    EXPECT_EQ(cfg.seed, 9u);
    EXPECT_EQ(cfg.format, OutputFormat::Csv);
    EXPECT_EQ(cfg.output_path, "out.csv");
}

TEST(Config, SeedDefaultsToZero) {
    EXPECT_EQ(parse_config(json{{"scenario", "classical_mac"}}).seed, 0u);
}

TEST(Config, Errors) {
    EXPECT_THROW(parse_config(json::array()), ParameterError);
    EXPECT_THROW(parse_config(json{{"scenario", "quantum_money"}}), ParameterError);
    EXPECT_THROW(parse_config(json{{"scenario", "classical_mac"}, {"output", {{"format", "xml"}}}}), ParameterError);
}

TEST(Config, HashDependsOnSeedAndParameters) {
    auto a = parse_config(json{{"scenario", "classical_mac"}, {"parameters", {{"p", 5}}}});
    auto b = a;
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash(a).size(), 16u);
    b.seed = 1;
    EXPECT_NE(config_hash(a), config_hash(b));
    b = a;
    b.parameters["p"] = 7;
    EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(ClassicalScenario, AffineReportsExactRationals) {
    const auto doc = run_json({{"scenario", "classical_mac"}, {"parameters", {{"family", "affine"}, {"p", 5}}}});
    EXPECT_EQ(doc["results"]["p0"], "1/5");
    EXPECT_EQ(doc["results"]["p1"], "1/5");
    EXPECT_EQ(doc["results"]["strongly_universal_counts"], "verified");
    EXPECT_EQ(doc["scenario"], "classical_mac");
    EXPECT_EQ(doc["seed"], 0);
    EXPECT_TRUE(doc.contains("config_hash"));
}

TEST(ClassicalScenario, PolynomialAndTableFamilies) {
    const auto poly = run_json({{"scenario", "classical_mac"}, {"parameters", {{"family", "poly"}, {"p", 5}, {"blocks", 2}}}});
    EXPECT_EQ(poly["results"]["p0"], "1/5");
    EXPECT_EQ(poly["results"]["p1"], "2/5");
    const auto table = run_json({{"scenario", "classical_mac"},
                                 {"parameters", {{"family", "table"}, {"tags", {{0, 1}, {1, 0}}}, {"tag_count", 2}}}});
    EXPECT_EQ(table["results"]["p0"], "1/2");
    EXPECT_EQ(table["results"]["p1"], "1/1");
    EXPECT_THROW(run_json({{"scenario", "classical_mac"}, {"parameters", {{"family", "sha"}}}}), ParameterError);
}

TEST(CurtySantosScenario, SwaplessFields) {
    const auto r = run_json({{"scenario", "curty_santos"}, {"parameters", {{"unitary", "x_identity"}}}})["results"];
    EXPECT_EQ(r["optimal_impersonation"].get<double>(), 0.5);
    EXPECT_EQ(r["substitution_conclusive"], json::array({1.0, 1.0}));
    EXPECT_EQ(r["condition13"], true);
    EXPECT_EQ(r["both_achieved"], false);
}

TEST(CurtySantosScenario, ExplicitOperatorAndBasis) {
    json basis = json::array();
    for (int i = 0; i < 4; ++i) {
        json amps = json::array();
        for (int j = 0; j < 4; ++j) {
            amps.push_back(json::array({i == j ? 1 : 0, 0}));
        }
        basis.push_back({{"dims", {4}}, {"amplitudes", amps}});
    }
    const auto r = run_json({{"scenario", "curty_santos"},
                             {"parameters", {{"unitary", identity_operator(4)}, {"basis", basis}}}})["results"];
    EXPECT_EQ(r["optimal_impersonation"].get<double>(), 1.0);
    EXPECT_EQ(r["condition13"], false);
}

TEST(CurtySantosScenario, RandomSweepCounts) {
    const auto r = run_json({{"scenario", "curty_santos"}, {"parameters", {{"sweep", {{"instances", 20}}}}}})["results"];
    EXPECT_EQ(r["instances"], 20);
    EXPECT_EQ(r["both_achieved_count"], 0);
}

TEST(GenericScenario, InlineSchemeReport) {
    const json scheme{{"labels", {{0, 2}, {1, 3}}},
                      {"tag_unitaries", {identity_operator(2), pauli_x_operator(), identity_operator(2), pauli_x_operator()}},
                      {"initial_state", ket0()}};
    const auto r = run_json({{"scenario", "generic_qmac"}, {"parameters", {{"scheme", scheme}}}})["results"];
    EXPECT_EQ(r["tag_count"], 2);
    EXPECT_EQ(r["impersonation"]["deception_probability"].get<double>(), 0.5);
    EXPECT_EQ(r["theorem2"]["classical_equivalent"], true);
}

TEST(GenericScenario, SymmetryTestRule) {
    const json scheme{{"labels", {{0, 2}, {1, 3}}},
                      {"tag_unitaries", {identity_operator(2), pauli_x_operator(), identity_operator(2), pauli_x_operator()}},
                      {"initial_state", ket0()}};
    const auto r = run_json({{"scenario", "generic_qmac"},
                             {"parameters", {{"scheme", scheme}, {"rule", {{"kind", "symmetry_test"}, {"copies", 4}}}}}})["results"];
    EXPECT_NEAR(r["impersonation"]["deception_probability"].get<double>(), 0.5 + 0.5 / 4.0, 1e-12);
}

TEST(GenericScenario, SchemeRoundTrip) {
    quantum::Rng rng(3);
    const auto scheme = qmac::make_random_scheme({4, 2, 2, 3}, rng);
    const auto back = io::scheme_from_json(io::to_json(scheme));
    EXPECT_EQ(back.label_table(), scheme.label_table());
    for (std::size_t m = 0; m < 2; ++m) {
        EXPECT_LE((qmac::overlap_matrix(back, m).values - qmac::overlap_matrix(scheme, m).values).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(SweepScenario, RowsSatisfyCopyBound) {
    const auto report = execute(parse_config({{"scenario", "symmetry_test_sweep"}, {"parameters", {{"T_range", {2, 8}}}}}));
    const auto &rows = report.document["results"]["rows"];
    ASSERT_EQ(rows.size(), 7u);
    for (const auto &row : rows) {
        EXPECT_GT(row["n_real"].get<double>(), row["T_size"].get<double>() - 2.0);
    }
    ASSERT_TRUE(report.table_csv.has_value());
    const auto csv = render(report, OutputFormat::Csv);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "T_size,delta,lambda_max,n_real,n_ceil,P0,key_bits_quantum,key_bits_classical_ref,config_hash,seed");
    int data = 0;
    while (std::getline(in, line)) {
        ++data;
        EXPECT_NE(line.find(report.document["config_hash"].get<std::string>()), std::string::npos);
    }
    EXPECT_EQ(data, 7);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    EXPECT_THROW(execute(parse_config({{"scenario", "symmetry_test_sweep"}, {"parameters", {{"T_range", {8, 2}}}}})),
                 ParameterError);
}

TEST(Render, FlatCsvForNonTabularReports) {
    const auto report = execute(parse_config({{"scenario", "classical_mac"}, {"parameters", {{"p", 3}}}}));
    const auto csv = render(report, OutputFormat::Csv);
    EXPECT_EQ(csv.rfind("field,value\n", 0), 0u);
    EXPECT_NE(csv.find("/results/p0,1/3\n"), std::string::npos) << csv;
    EXPECT_NE(csv.find("/seed,0\n"), std::string::npos);
}

TEST(Builtins, CatalogCoversRequiredScenarios) {
    const auto all = list_scenarios();
    EXPECT_GE(all.size(), 6u);
    for (const char *name : {"affine-p5", "poly-p5-l2", "cs-swapless", "cs-hadamard", "theorem2-random", "symtest-grid"}) {
        EXPECT_TRUE(find_builtin(name).has_value()) << name;
    }
}

TEST(Builtins, EachRunsToSuccess) {
    for (const auto &s : list_scenarios()) {
        const auto r = invoke({s.name, std::nullopt, std::nullopt, std::nullopt});
        EXPECT_EQ(r.status, kExitOk) << s.name << ": " << r.err;
        EXPECT_FALSE(r.out.empty());
    }
}

TEST(Builtins, HadamardReportValue) {
    const auto r = invoke({"cs-hadamard", std::nullopt, OutputFormat::Json, std::nullopt});
    ASSERT_EQ(r.status, kExitOk);
    const auto doc = json::parse(r.out);
    EXPECT_NEAR(doc["results"]["optimal_impersonation"].get<double>(), 0.853553, 1e-6);
}

TEST(Builtins, RandomSchemeSweepAllPositive) {
    const auto doc = execute(parse_config(find_builtin("theorem2-random")->document)).document;
    EXPECT_EQ(doc["results"]["positive_margin_count"], 100);
}

TEST(Run, DeterministicAndSeedOverride) {
    const RunOptions base{"cs-random-sweep", std::nullopt, OutputFormat::Json, std::nullopt};
    const auto a = invoke(base);
    const auto b = invoke(base);
    EXPECT_EQ(a.out, b.out);
    auto seeded = base;
    seeded.seed = 7;
    const auto c = invoke(seeded);
    EXPECT_NE(a.out, c.out);
    EXPECT_EQ(json::parse(c.out)["seed"], 7);
}

TEST(Run, ConfigFileWithSchemePathAndOutput) {
    const auto dir = scratch_dir();
    const json scheme{{"labels", {{0, 2}, {1, 3}}},
                      {"tag_unitaries", {identity_operator(2), pauli_x_operator(), identity_operator(2), pauli_x_operator()}},
                      {"initial_state", ket0()}};
    write_file(dir / "scheme.json", scheme.dump());
    write_file(dir / "config.json", json{{"scenario", "generic_qmac"}, {"parameters", {{"scheme_path", "scheme.json"}}}}.dump());
    const auto out_path = (dir / "report.json").string();
    const auto r = invoke({(dir / "config.json").string(), out_path, std::nullopt, std::nullopt});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    EXPECT_EQ(r.out, "wrote " + out_path + "\n");
    const auto doc = json::parse(read_file(out_path));
    EXPECT_EQ(doc["results"]["tag_count"], 2);
    fs::remove_all(dir);
}

TEST(Run, UsageErrorsExitOne) {
    EXPECT_EQ(invoke({"no-such-scenario", std::nullopt, std::nullopt, std::nullopt}).status, kExitUsage);
    const auto dir = scratch_dir();
    write_file(dir / "bad.json", "{not json");
    const auto r = invoke({(dir / "bad.json").string(), std::nullopt, std::nullopt, std::nullopt});
    EXPECT_EQ(r.status, kExitUsage);
    EXPECT_NE(r.err.find("not valid JSON"), std::string::npos);
    write_file(dir / "missing.json", json{{"scenario", "generic_qmac"}, {"parameters", {{"scheme_path", "absent.json"}}}}.dump());
    EXPECT_EQ(invoke({(dir / "missing.json").string(), std::nullopt, std::nullopt, std::nullopt}).status, kExitUsage);
    write_file(dir / "infeasible.json",
               json{{"scenario", "symmetry_test_sweep"}, {"parameters", {{"T_values", {4}}, {"lambda_fractions", {1.0}}}}}.dump());
    EXPECT_EQ(invoke({(dir / "infeasible.json").string(), std::nullopt, std::nullopt, std::nullopt}).status, kExitUsage);
    fs::remove_all(dir);
}

TEST(Run, SymmetryViolationExitsTwo) {
    const auto dir = scratch_dir();
    const json scheme{{"labels", {{0, 0}, {1, 1}}},
                      {"tag_unitaries", {identity_operator(2), pauli_x_operator()}},
                      {"initial_state", ket0()}};
    write_file(dir / "asym.json", json{{"scenario", "generic_qmac"}, {"parameters", {{"scheme", scheme}}}}.dump());
    const auto r = invoke({(dir / "asym.json").string(), std::nullopt, std::nullopt, std::nullopt});
    EXPECT_EQ(r.status, kExitInvariant);
    EXPECT_NE(r.err.find("invariant failure"), std::string::npos);
    EXPECT_NE(r.err.find("key 0"), std::string::npos) << r.err;
    fs::remove_all(dir);
}
