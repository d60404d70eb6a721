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
/**
 * @file
 * Scenario documents and the deterministic runner behind the `qauth` CLI.
 *
 * A scenario is one JSON document:
 *
 *   {"scenario": "classical_mac" | "generic_qmac" | "curty_santos" | "symmetry_test_sweep",
 *    "seed": 0,
 *    "parameters": {...},
 *    "output": {"format": "json" | "csv", "path": "report.json"}}
 *
 * Reports embed the scenario kind, the seed and a hash of the effective
 * configuration.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "classical_mac.hpp"
#include "curty_santos.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "qmac_framework.hpp"
#include "random.hpp"
#include "serialization.hpp"
#include "symmetry_test.hpp"

namespace qauth::cli {

using nlohmann::json;

enum class ScenarioKind { ClassicalMac, GenericQmac, CurtySantos, SymmetryTestSweep };
enum class OutputFormat { Csv, Json };

inline std::string to_string(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::ClassicalMac:
        return "classical_mac";
    case ScenarioKind::GenericQmac:
        return "generic_qmac";
    case ScenarioKind::CurtySantos:
        return "curty_santos";
    case ScenarioKind::SymmetryTestSweep:
        return "symmetry_test_sweep";
    }
    return "unknown";
}

inline ScenarioKind scenario_kind_from(const std::string &name) {
    if (name == "classical_mac") {
        return ScenarioKind::ClassicalMac;
    }
    if (name == "generic_qmac") {
        return ScenarioKind::GenericQmac;
    }
    if (name == "curty_santos") {
        return ScenarioKind::CurtySantos;
    }
    if (name == "symmetry_test_sweep") {
        return ScenarioKind::SymmetryTestSweep;
    }
    throw ParameterError("unknown scenario kind '" + name + "'");
}

inline OutputFormat output_format_from(const std::string &name) {
    if (name == "json") {
        return OutputFormat::Json;
    }
    if (name == "csv") {
        return OutputFormat::Csv;
    }
    throw ParameterError("output format must be csv or json, got '" + name + "'");
}

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::ClassicalMac;
    json parameters = json::object();
    std::uint64_t seed = 0;
    std::optional<OutputFormat> format;
    std::optional<std::string> output_path;
    /// relative file references in `parameters` resolve against this directory
    std::filesystem::path base_dir = ".";
};

inline ScenarioConfig parse_config(const json &doc, std::filesystem::path base_dir = ".") {
    if (!doc.is_object()) {
        throw ParameterError("scenario document must be a JSON object");
    }
    ScenarioConfig cfg;
    cfg.kind = scenario_kind_from(doc.at("scenario").get<std::string>());
    if (doc.contains("parameters")) {
        cfg.parameters = doc.at("parameters");
    }
    if (doc.contains("seed")) {
        cfg.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("output")) {
        const auto &out = doc.at("output");
        if (out.contains("format")) {
            cfg.format = output_format_from(out.at("format").get<std::string>());
        }
        if (out.contains("path")) {
            cfg.output_path = out.at("path").get<std::string>();
        }
    }
    cfg.base_dir = std::move(base_dir);
    return cfg;
}

inline json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParameterError("cannot open '" + path.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ParameterError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

inline ScenarioConfig load_config(const std::filesystem::path &path) {
    return parse_config(read_json_file(path), path.parent_path().empty() ? "." : path.parent_path());
}

/// FNV-1a over the canonical dump of the effective configuration.
inline std::string config_hash(const ScenarioConfig &cfg) {
    const json canonical{{"scenario", to_string(cfg.kind)}, {"seed", cfg.seed}, {"parameters", cfg.parameters}};
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

struct Report {
    json document;
    /// tabular CSV body, for scenarios that produce a table
    std::optional<std::string> table_csv;
};

namespace detail {

using io::real;

inline classical::HashFamily family_from(const json &p) {
    const auto kind = p.value("family", std::string("affine"));
    if (kind == "affine") {
        return classical::make_affine_family(p.at("p").get<std::uint64_t>());
    }
    if (kind == "poly") {
        return classical::make_poly_family(p.at("p").get<std::uint64_t>(), p.value("blocks", std::size_t{1}));
    }
    if (kind == "table") {
        return classical::make_table_family(p.value("name", std::string("table")),
                                            p.at("tags").get<std::vector<std::vector<std::uint64_t>>>(),
                                            p.at("tag_count").get<std::uint64_t>());
    }
    throw ParameterError("unknown hash family '" + kind + "'");
}

inline json run_classical(const ScenarioConfig &cfg) {
    const auto family = family_from(cfg.parameters);
    auto results = io::to_json(classical::deception_probabilities(family));
    results["family"] = {{"name", family.name()},
                         {"kind", classical::to_string(family.kind())},
                         {"key_count", family.key_count()},
                         {"message_count", family.message_count()},
                         {"tag_count", family.tag_count()},
                         {"epsilon", classical::to_string(family.epsilon())}};
    if (family.kind() == classical::FamilyKind::StronglyUniversal) {
        const auto violation = classical::find_strongly_universal_violation(family);
        if (violation) {
            throw InvariantError("family '" + family.name() + "' is not strongly universal: " + *violation);
        }
        results["strongly_universal_counts"] = "verified";
    }
    const auto tags = static_cast<std::int64_t>(family.tag_count());
    results["key_bits"] = real(classical::key_bits(family));
    results["one_time_key_bound_bits"] = real(classical::key_length_lower_bound(1, classical::Rational(1, tags)));
    return results;
}

inline qmac::DecisionRule rule_from(const json &p) {
    if (!p.contains("rule")) {
        return qmac::DecisionRule::projective();
    }
    const auto &r = p.at("rule");
    const auto kind = r.value("kind", std::string("projective"));
    if (kind == "projective") {
        return qmac::DecisionRule::projective();
    }
    if (kind == "symmetry_test") {
        return qmac::DecisionRule::symmetry_test(r.at("copies").get<std::size_t>());
    }
    throw ParameterError("unknown decision rule '" + kind + "'");
}

inline json analyze_scheme(const qmac::QmacScheme &scheme, const qmac::DecisionRule &rule) {
    scheme.require_symmetric();
    json partitions = json::array();
    json overlaps = json::array();
    for (std::size_t m = 0; m < scheme.message_count(); ++m) {
        json blocks = json::object();
        for (const auto &[tau, keys] : qmac::partition_keys(scheme, m)) {
            blocks[std::to_string(tau)] = keys;
        }
        partitions.push_back(blocks);
        overlaps.push_back(io::to_json(qmac::overlap_matrix(scheme, m)));
    }
    return {{"key_count", scheme.key_count()},
            {"message_count", scheme.message_count()},
            {"tag_count", scheme.tag_count()},
            {"multiplicity", scheme.multiplicity()},
            {"rule", rule.describe()},
            {"partitions", partitions},
            {"overlap_matrices", overlaps},
            {"impersonation", io::to_json(qmac::impersonation_deception(scheme, rule))},
            {"theorem2", io::to_json(qmac::verify_theorem2(scheme))}};
}

inline json run_generic(const ScenarioConfig &cfg) {
    const auto &p = cfg.parameters;
    const auto rule = rule_from(p);
    if (p.contains("random")) {
        const auto &r = p.at("random");
        qmac::SchemeShape shape;
        shape.keys = r.value("keys", std::size_t{2});
        shape.messages = r.value("messages", std::size_t{2});
        shape.multiplicity = r.value("multiplicity", std::size_t{1});
        shape.dimension = r.value("dimension", std::size_t{2});
        const auto count = r.value("count", std::size_t{100});
        quantum::Rng rng(cfg.seed);
        json runs = json::array();
        std::size_t positive = 0;
        double min_margin = 1.0;
        for (std::size_t i = 0; i < count; ++i) {
            const auto scheme = qmac::make_random_scheme(shape, rng);
            const auto t2 = qmac::verify_theorem2(scheme);
            const auto attack = qmac::impersonation_deception(scheme, rule);
            positive += t2.margin > 0.0;
            min_margin = std::min(min_margin, t2.margin);
            runs.push_back({{"index", i},
                            {"p0", real(attack.deception_probability)},
                            {"classical_floor", real(t2.classical_floor)},
                            {"projective_margin", real(t2.margin)},
                            {"max_overlap", real(t2.max_overlap)}});
        }
        return {{"rule", rule.describe()},
                {"schemes", count},
                {"positive_margin_count", positive},
                {"min_projective_margin", real(min_margin)},
                {"runs", runs}};
    }
    if (p.contains("scheme")) {
        return analyze_scheme(io::scheme_from_json(p.at("scheme")), rule);
    }
    if (p.contains("scheme_path")) {
        const std::filesystem::path path = p.at("scheme_path").get<std::string>();
        return analyze_scheme(io::scheme_from_json(read_json_file(path.is_absolute() ? path : cfg.base_dir / path)), rule);
    }
    throw ParameterError("generic_qmac scenario needs one of: scheme, scheme_path, random");
}

inline curty_santos::Instance instance_from(const json &p, quantum::Rng &rng) {
    const json u = p.value("unitary", json("x_identity"));
    auto unitary = [&]() -> quantum::UnitaryOperator {
        if (u.is_string()) {
            if (u.get<std::string>() == "haar") {
                return quantum::haar_unitary(4, rng);
            }
            return curty_santos::preset_unitary(u.get<std::string>());
        }
        return io::unitary_from_json(u);
    }();
    if (p.contains("basis")) {
        std::vector<quantum::PureState> basis;
        for (const auto &b : p.at("basis")) {
            basis.push_back(io::state_from_json(b));
        }
        return curty_santos::Instance(std::move(unitary), std::move(basis));
    }
    return curty_santos::Instance(std::move(unitary));
}

inline json analyze_instance(const curty_santos::Instance &inst) {
    auto results = io::to_json(curty_santos::incompatibility_report(inst));
    results["tag_unitary"] = io::to_json(inst.tag_unitary());
    results["optimal_attack"] = io::to_json(curty_santos::optimal_impersonation(inst));
    json spectrum = json::array();
    for (double v : quantum::eigenvalues(curty_santos::impersonation_operator(inst))) {
        spectrum.push_back(real(v));
    }
    results["impersonation_operator_spectrum"] = spectrum;
    results["basis_state_impersonation"] = {real(curty_santos::impersonation_acceptance(inst, inst.phi(0))),
                                            real(curty_santos::impersonation_acceptance(inst, inst.phi(1)))};
    results["honest_runs"] = {io::to_json(curty_santos::honest_run(inst, 0)),
                              io::to_json(curty_santos::honest_run(inst, 1))};
    const auto scheme = curty_santos::to_qmac_scheme(inst);
    results["embedding"] = {{"overlap_matrices",
                             {io::to_json(qmac::overlap_matrix(scheme, 0)), io::to_json(qmac::overlap_matrix(scheme, 1))}},
                            {"projective_impersonation",
                             io::to_json(qmac::impersonation_deception(scheme, qmac::DecisionRule::projective()))}};
    return results;
}

inline json run_curty_santos(const ScenarioConfig &cfg) {
    const auto &p = cfg.parameters;
    quantum::Rng rng(cfg.seed);
    if (p.contains("sweep")) {
        const auto count = p.at("sweep").value("instances", std::size_t{200});
        std::size_t both = 0;
        std::size_t at_floor = 0;
        std::size_t blocked = 0;
        double min_impersonation = 1.0;
        for (std::size_t i = 0; i < count; ++i) {
            const curty_santos::Instance inst(quantum::haar_unitary(4, rng));
            const auto r = curty_santos::incompatibility_report(inst);
            both += r.both_achieved;
            at_floor += r.impersonation_at_floor;
            blocked += r.substitution_blocked;
            min_impersonation = std::min(min_impersonation, r.optimal_impersonation);
        }
        return {{"instances", count},
                {"both_achieved_count", both},
                {"impersonation_at_floor_count", at_floor},
                {"substitution_blocked_count", blocked},
                {"min_optimal_impersonation", real(min_impersonation)}};
    }
    return analyze_instance(instance_from(p, rng));
}

inline symmetry::SweepGrid grid_from(const json &p) {
    symmetry::SweepGrid grid;
    if (p.contains("T_values")) {
        grid.tag_counts = p.at("T_values").get<std::vector<std::uint64_t>>();
    } else {
        const auto range = p.value("T_range", std::vector<std::uint64_t>{2, 8});
        if (range.size() != 2 || range[0] > range[1]) {
            throw ParameterError("T_range must be [first, last]");
        }
        for (auto t = range[0]; t <= range[1]; ++t) {
            grid.tag_counts.push_back(t);
        }
    }
    grid.delta_fractions = p.value("delta_fractions", grid.delta_fractions);
    grid.lambda_fractions = p.value("lambda_fractions", grid.lambda_fractions);
    grid.d = p.value("d", grid.d);
    grid.message_bits = p.value("message_bits", grid.message_bits);
    return grid;
}

inline Report run_sweep(const ScenarioConfig &cfg) {
    const auto rows = symmetry::sweep(grid_from(cfg.parameters));
    Report report;
    json jrows = json::array();
    for (const auto &r : rows) {
        jrows.push_back(io::to_json(r));
    }
    json cross = json::array();
    for (const auto &c : symmetry::crossovers(rows)) {
        cross.push_back({{"delta_fraction", real(c.delta_fraction)},
                         {"lambda_fraction", real(c.lambda_fraction)},
                         {"first_T_quantum_exceeds_classical",
                          c.first_tag_count ? json(*c.first_tag_count) : json(nullptr)}});
    }
    report.document["results"] = {{"rows", jrows}, {"crossovers", cross}};
    std::ostringstream csv;
    symmetry::write_csv(csv, rows);
    report.table_csv = csv.str();
    return report;
}

/// Leaf values of `j` as "pointer,value" lines.
inline void flatten(const json &j, const std::string &prefix, std::ostream &os) {
    if (j.is_object()) {
        for (const auto &[key, value] : j.items()) {
            flatten(value, prefix + "/" + key, os);
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            flatten(j[i], prefix + "/" + std::to_string(i), os);
        }
    } else {
        std::string value = j.is_string() ? j.get<std::string>() : j.dump();
        if (value.find_first_of(",\"\n") != std::string::npos) {
            std::string quoted = "\"";
            for (char c : value) {
                quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
            }
            value = quoted + "\"";
        }
        os << prefix << ',' << value << '\n';
    }
}

} // namespace detail

/// Runs a scenario. Throws ParameterError / DomainError on bad input and InvariantError on invariant failures.
inline Report execute(const ScenarioConfig &cfg) {
    Report report;
    switch (cfg.kind) {
    case ScenarioKind::ClassicalMac:
        report.document["results"] = detail::run_classical(cfg);
        break;
    case ScenarioKind::GenericQmac:
        report.document["results"] = detail::run_generic(cfg);
        break;
    case ScenarioKind::CurtySantos:
        report.document["results"] = detail::run_curty_santos(cfg);
        break;
    case ScenarioKind::SymmetryTestSweep:
        report = detail::run_sweep(cfg);
        break;
    }
    report.document["scenario"] = to_string(cfg.kind);
    report.document["seed"] = cfg.seed;
    report.document["config_hash"] = config_hash(cfg);
    report.document["parameters"] = cfg.parameters;
    return report;
}

inline OutputFormat default_format(ScenarioKind kind) {
    return kind == ScenarioKind::SymmetryTestSweep ? OutputFormat::Csv : OutputFormat::Json;
}

/**
 * CSV rendering. Tables get two trailing columns, config_hash and seed;
 * other reports become "field,value" rows keyed by JSON pointer.
 */
inline std::string render(const Report &report, OutputFormat format) {
    if (format == OutputFormat::Json) {
        return report.document.dump(2) + "\n";
    }
    const auto hash = report.document.at("config_hash").get<std::string>();
    const auto seed = std::to_string(report.document.at("seed").get<std::uint64_t>());
    std::ostringstream os;
    if (report.table_csv) {
        std::istringstream in(*report.table_csv);
        std::string line;
        bool header = true;
        while (std::getline(in, line)) {
            os << line << (header ? ",config_hash,seed" : "," + hash + "," + seed) << '\n';
            header = false;
        }
        return os.str();
    }
    os << "field,value\n";
    detail::flatten(report.document, "", os);
    return os.str();
}

struct BuiltinScenario {
    std::string name;
    std::string description;
    json document;
};

inline std::vector<BuiltinScenario> list_scenarios() {
    std::vector<std::uint64_t> grid_t;
    for (std::uint64_t t = 2; t <= 16; ++t) {
        grid_t.push_back(t);
    }
    for (std::uint64_t t = 32; t <= 1024; t *= 2) {
        grid_t.push_back(t);
    }
    return {
        {"affine-p5", "affine hash a*m+b over Z_5: exact P0 = P1 = 1/5",
         {{"scenario", "classical_mac"}, {"seed", 0}, {"parameters", {{"family", "affine"}, {"p", 5}}}}},
        {"poly-p5-l2", "polynomial hash over Z_5 with two blocks: P0 = 1/5, P1 <= 2/5",
         {{"scenario", "classical_mac"}, {"seed", 0}, {"parameters", {{"family", "poly"}, {"p", 5}, {"blocks", 2}}}}},
        {"cs-swapless", "entangled-key QMAC with U = X (x) 1: impersonation at 1/2, substitution certain",
         {{"scenario", "curty_santos"}, {"seed", 0}, {"parameters", {{"unitary", "x_identity"}}}}},
        {"cs-hadamard", "entangled-key QMAC with U = H (x) H: substitution blocked, impersonation (2+sqrt2)/4",
         {{"scenario", "curty_santos"}, {"seed", 0}, {"parameters", {{"unitary", "hadamard_hadamard"}}}}},
        {"cs-random-sweep", "200 Haar-random tag unitaries: no instance meets both security goals",
         {{"scenario", "curty_santos"}, {"seed", 0}, {"parameters", {{"sweep", {{"instances", 200}}}}}}},
        {"theorem2-random", "100 Haar-random symmetric qubit schemes: impersonation above 1/|T|",
         {{"scenario", "generic_qmac"},
          {"seed", 0},
          {"parameters", {{"random", {{"count", 100}, {"keys", 2}, {"messages", 2}, {"multiplicity", 1}, {"dimension", 2}}}}}}},
        {"symtest-grid", "copies and key bits for the symmetry test versus the Wegman-Carter reference",
         {{"scenario", "symmetry_test_sweep"},
          {"seed", 0},
          {"parameters",
           {{"T_values", grid_t},
            {"delta_fractions", {1.0, 0.5}},
            {"lambda_fractions", {0.0, 0.5, 0.9}},
            {"d", 2},
            {"message_bits", 64}}}}},
    };
}

inline std::optional<BuiltinScenario> find_builtin(const std::string &name) {
    for (auto &s : list_scenarios()) {
        if (s.name == name) {
            return s;
        }
    }
    return std::nullopt;
}

struct RunOptions {
    /// config file path or built-in scenario name
    std::string target;
    std::optional<std::string> output_path;
    std::optional<OutputFormat> format;
    std::optional<std::uint64_t> seed;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvariant = 2;

/// Loads, runs and writes one scenario; returns the process exit status.
inline int run(const RunOptions &opts, std::ostream &out, std::ostream &err) {
    try {
        ScenarioConfig cfg;
        if (std::filesystem::exists(opts.target)) {
            cfg = load_config(opts.target);
        } else if (auto builtin = find_builtin(opts.target)) {
            cfg = parse_config(builtin->document);
        } else {
            throw ParameterError("'" + opts.target + "' is neither a readable file nor a built-in scenario");
        }
        if (opts.seed) {
            cfg.seed = *opts.seed;
        }
        const auto format = opts.format ? *opts.format : cfg.format ? *cfg.format : default_format(cfg.kind);
        const auto path = opts.output_path ? opts.output_path : cfg.output_path;
        const auto text = render(execute(cfg), format);
        if (path) {
            std::ofstream file(*path, std::ios::binary);
            if (!file) {
                throw ParameterError("cannot write '" + *path + "'");
            }
            file << text;
            out << "wrote " << *path << '\n';
        } else {
            out << text;
        }
        return kExitOk;
    } catch (const InvariantError &e) {
        err << "invariant failure: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace qauth::cli
