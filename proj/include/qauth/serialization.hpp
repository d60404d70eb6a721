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
 * JSON encoding of states, operators, schemes and reports.
 *
 * Complex numbers are [re, im] pairs. States are {"dims": [...],
 * "amplitudes": [[re, im], ...]}; operators are {"dims": [...],
 * "matrix": [[[re, im], ...], ...]} in row-major order. Exact rationals are
 * "num/den" strings and reals are rounded to 12 significant digits.
 */

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "classical_mac.hpp"
#include "curty_santos.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "qmac_framework.hpp"
#include "quantum_core.hpp"
#include "symmetry_test.hpp"

namespace qauth::io {

using nlohmann::json;
using quantum::Complex;
using quantum::Dims;
using quantum::Matrix;
using quantum::Vector;

inline json real(double x) { return round_to_report(x); }

inline json complex_json(Complex z) { return json::array({real(z.real()), real(z.imag())}); }

inline Complex complex_from_json(const json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParameterError("complex number must be [re, im], got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Dims dims_from_json(const json &j, std::size_t d) {
    if (!j.contains("dims")) {
        return Dims{d};
    }
    return j.at("dims").get<Dims>();
}

inline json to_json(const quantum::PureState &psi) {
    json amps = json::array();
    for (std::size_t i = 0; i < psi.dimension(); ++i) {
        amps.push_back(complex_json(psi[i]));
    }
    return {{"dims", psi.dims()}, {"amplitudes", amps}};
}

inline json matrix_json(const Matrix &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(complex_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const quantum::UnitaryOperator &u) { return {{"dims", u.dims()}, {"matrix", matrix_json(u.data())}}; }

inline json to_json(const quantum::HermitianOperator &a) { return {{"dims", a.dims()}, {"matrix", matrix_json(a.data())}}; }

inline quantum::PureState state_from_json(const json &j) {
    const auto &amps = j.at("amplitudes");
    Vector v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = complex_from_json(amps[i]);
    }
    // accept unnormalized input only within tolerance; renormalize away rounding in the file
    if (std::abs(v.norm() - 1.0) > 1e-9) {
        throw InvariantError("state amplitudes are not normalized (norm " + format_real(v.norm()) + ")");
    }
    return quantum::PureState::normalized(v, dims_from_json(j, amps.size()));
}

inline Matrix matrix_from_json(const json &rows) {
    if (!rows.is_array() || rows.empty()) {
        throw ParameterError("matrix must be a nonempty array of rows");
    }
    const auto n = rows.size();
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != rows[0].size()) {
            throw ParameterError("matrix rows have unequal length");
        }
        for (std::size_t c = 0; c < rows[i].size(); ++c) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = complex_from_json(rows[i][c]);
        }
    }
    return m;
}

inline quantum::UnitaryOperator unitary_from_json(const json &j) {
    auto m = matrix_from_json(j.at("matrix"));
    const auto d = static_cast<std::size_t>(m.rows());
    return quantum::UnitaryOperator(std::move(m), dims_from_json(j, d));
}

inline quantum::HermitianOperator hermitian_from_json(const json &j) {
    auto m = matrix_from_json(j.at("matrix"));
    const auto d = static_cast<std::size_t>(m.rows());
    return quantum::HermitianOperator(std::move(m), dims_from_json(j, d));
}

inline json to_json(const classical::DeceptionReport &r) {
    auto pair = [](const classical::MessageTag &mt) { return json{{"message", mt.message}, {"tag", mt.tag}}; };
    return {{"p0", classical::to_string(r.p0)},
            {"p1", classical::to_string(r.p1)},
            {"argmax_impersonation", pair(r.argmax_impersonation)},
            {"argmax_substitution", {{"observed", pair(r.substitution_observed)}, {"forged", pair(r.substitution_forged)}}}};
}

/**
 * Scheme document:
 *   {"labels": [[f(0,0), f(0,1), ...], ...],      one row per key
 *    "tag_unitaries": [operator, ...],            indexed by label
 *    "initial_state": state}
 */
inline qmac::QmacScheme scheme_from_json(const json &j) {
    auto labels = j.at("labels").get<std::vector<std::vector<qmac::Label>>>();
    std::vector<quantum::UnitaryOperator> unitaries;
    for (const auto &u : j.at("tag_unitaries")) {
        unitaries.push_back(unitary_from_json(u));
    }
    return qmac::QmacScheme(std::move(labels), std::move(unitaries), state_from_json(j.at("initial_state")));
}

inline json to_json(const qmac::QmacScheme &scheme) {
    json unitaries = json::array();
    for (const auto &u : scheme.tag_unitaries()) {
        unitaries.push_back(to_json(u));
    }
    return {{"labels", scheme.label_table()}, {"tag_unitaries", unitaries}, {"initial_state", to_json(scheme.initial_state())}};
}

inline json to_json(const qmac::AttackWitness &w) {
    json out{{"message", w.message},
             {"expected_label", w.expected_label},
             {"sent_label", w.sent_label},
             {"adversary_state", w.adversary_state}};
    if (!w.adversary_amplitudes.empty()) {
        json amps = json::array();
        for (auto z : w.adversary_amplitudes) {
            amps.push_back(complex_json(z));
        }
        out["adversary_amplitudes"] = amps;
    }
    return out;
}

inline json to_json(const qmac::AttackReport &r) {
    return {{"attack", qmac::to_string(r.attack)},
            {"deception_probability", real(r.deception_probability)},
            {"classical_floor", real(r.classical_floor)},
            {"margin", real(r.margin())},
            {"average_deception", real(r.average_deception)},
            {"max_acceptance_error", real(r.max_acceptance_error)},
            {"witness", to_json(r.witness)}};
}

inline json to_json(const qmac::Theorem2Report &r) {
    return {{"p0", real(r.p0)},
            {"classical_floor", real(r.classical_floor)},
            {"margin", real(r.margin)},
            {"max_overlap", real(r.max_overlap)},
            {"classical_equivalent", r.classical_equivalent},
            {"witness", to_json(r.witness)}};
}

inline json to_json(const qmac::OverlapMatrix &o) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < o.values.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < o.values.cols(); ++c) {
            row.push_back(real(o.values(i, c)));
        }
        rows.push_back(row);
    }
    return {{"labels", o.labels}, {"values", rows}};
}

inline json to_json(const curty_santos::HonestRunTrace &t) {
    json dist = json::array();
    for (double p : t.bob_outcome_distribution) {
        dist.push_back(real(p));
    }
    return {{"message", t.message},
            {"joint_state_after_encode", to_json(t.joint_state_after_encode)},
            {"transmitted_density", to_json(t.transmitted_density)},
            {"factorization_residual", real(t.factorization_residual)},
            {"bob_outcome_distribution", dist},
            {"accepted_probability", real(t.accepted_probability)}};
}

inline json to_json(const curty_santos::IncompatibilityReport &r) {
    return {{"optimal_impersonation", real(r.optimal_impersonation)},
            {"impersonation_at_floor", r.impersonation_at_floor},
            {"condition13", r.condition13.all},
            {"condition13_per_message", {r.condition13.holds[0], r.condition13.holds[1]}},
            {"diagonal_elements", {complex_json(r.condition13.diagonal[0]), complex_json(r.condition13.diagonal[1])}},
            {"substitution_conclusive", {real(r.substitution_conclusive[0]), real(r.substitution_conclusive[1])}},
            {"substitution_blocked", r.substitution_blocked},
            {"both_achieved", r.both_achieved},
            {"witness_message", r.witness_message},
            {"witness_overlap", real(r.witness_overlap)}};
}

inline json to_json(const symmetry::SweepRow &r) {
    return {{"T_size", r.tag_count},
            {"delta", real(r.delta)},
            {"lambda_max", real(r.lambda_max)},
            {"n_real", real(r.n_real)},
            {"n_ceil", r.n_ceil},
            {"P0", real(r.p0)},
            {"key_bits_quantum", real(r.key_bits_quantum)},
            {"key_bits_classical_ref", real(r.key_bits_classical_ref)}};
}

} // namespace qauth::io
