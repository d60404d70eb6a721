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
 * Generic symmetric prepare-and-measure QMAC: keyed labels tau = f(k, m),
 * tagging unitaries E_tau acting on a public initial state, Bob's one-sided
 * decision rule, and the impersonation deception probability
 *
 *   P0 = 1/|T| + (1 - 1/|T|) max_{m, tau != tau'} Q(acc | tau, tau', m).
 *
 * Keys are uniform. |T| denotes the number of labels realized for each
 * message (= |K| / L for multiplicity L).
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "quantum_core.hpp"
#include "random.hpp"
#include "symmetry_test.hpp"

namespace qauth::qmac {

using quantum::PureState;
using quantum::UnitaryOperator;
using Label = std::size_t;

/// Overlaps below this count as orthogonal.
inline constexpr double kOverlapTol = 1e-9;

struct DecisionRule {
    enum class Kind { ProjectiveOnExpectedTag, SymmetryTest };

    Kind kind = Kind::ProjectiveOnExpectedTag;
    /// Total systems in the symmetry test; unused by the projective rule.
    std::size_t copies = 2;

    static DecisionRule projective() { return {}; }
    static DecisionRule symmetry_test(std::size_t n) {
        if (n < 2) {
            throw ParameterError("symmetry-test rule needs n >= 2");
        }
        return {Kind::SymmetryTest, n};
    }

    /// Q(acc | tau, tau', m) for tag states with overlap lambda.
    [[nodiscard]] double acceptance(double lambda) const {
        if (kind == Kind::ProjectiveOnExpectedTag) {
            return lambda * lambda;
        }
        return symmetry::acceptance_error_formula(copies, lambda);
    }

    [[nodiscard]] std::string describe() const {
        if (kind == Kind::ProjectiveOnExpectedTag) {
            return "projective";
        }
        return "symmetry_test(n=" + std::to_string(copies) + ")";
    }
};

class QmacScheme {
  public:
    /**
     * @param labels  labels[k][m] = f(k, m); every row has |M| entries
     * @param tag_unitaries  E_tau indexed by label
     * @param initial_state  |Psi_in>
     *
     * Structural checks only (ranges, dimensions, |M| >= 2). The symmetry
     * conditions are reported by symmetry_violation().
     */
    QmacScheme(std::vector<std::vector<Label>> labels, std::vector<UnitaryOperator> tag_unitaries,
               PureState initial_state)
        : labels_(std::move(labels)), unitaries_(std::move(tag_unitaries)), initial_(std::move(initial_state)) {
        if (labels_.empty()) {
            throw ParameterError("scheme needs at least one key");
        }
        const auto nm = labels_.front().size();
        if (nm < 2) {
            throw ParameterError("scheme needs |M| >= 2");
        }
        for (std::size_t k = 0; k < labels_.size(); ++k) {
            if (labels_[k].size() != nm) {
                throw ParameterError("label table row for key " + std::to_string(k) + " has " +
                                     std::to_string(labels_[k].size()) + " entries, expected " +
                                     std::to_string(nm));
            }
            for (auto tau : labels_[k]) {
                if (tau >= unitaries_.size()) {
                    throw ParameterError("label " + std::to_string(tau) + " has no tagging unitary");
                }
            }
        }
        for (std::size_t tau = 0; tau < unitaries_.size(); ++tau) {
            if (unitaries_[tau].dimension() != initial_.dimension()) {
                throw DimensionError("tagging unitary for label " + std::to_string(tau) +
                                     " does not act on the tag system");
            }
        }
    }

    [[nodiscard]] std::size_t key_count() const { return labels_.size(); }
    [[nodiscard]] std::size_t message_count() const { return labels_.front().size(); }
    [[nodiscard]] std::size_t dimension() const { return initial_.dimension(); }
    [[nodiscard]] const PureState &initial_state() const { return initial_; }
    [[nodiscard]] const std::vector<UnitaryOperator> &tag_unitaries() const { return unitaries_; }
    [[nodiscard]] const std::vector<std::vector<Label>> &label_table() const { return labels_; }

    [[nodiscard]] Label label(std::size_t k, std::size_t m) const {
        if (k >= key_count() || m >= message_count()) {
            throw ParameterError("key or message index out of range");
        }
        return labels_[k][m];
    }

    /// Distinct labels realized for message m, ascending.
    [[nodiscard]] std::vector<Label> labels_for(std::size_t m) const {
        std::set<Label> seen;
        for (std::size_t k = 0; k < key_count(); ++k) {
            seen.insert(label(k, m));
        }
        return {seen.begin(), seen.end()};
    }

    /// |Psi_tau> = E_tau |Psi_in>
    [[nodiscard]] PureState tag_state(Label tau) const {
        if (tau >= unitaries_.size()) {
            throw ParameterError("unknown label " + std::to_string(tau));
        }
        return unitaries_[tau].apply(initial_);
    }

    /// |T| for message 0; symmetric schemes realize the same count for every message.
    [[nodiscard]] std::size_t tag_count() const { return labels_for(0).size(); }

    /// L = |K| / |T|
    [[nodiscard]] std::size_t multiplicity() const { return key_count() / tag_count(); }

    /**
     * First violated symmetry condition, or nullopt:
     *  - every block K_{m,tau} has the same size L, for every message;
     *  - f(k, m) != f(k, m') for m != m'.
     */
    [[nodiscard]] std::optional<std::string> symmetry_violation() const {
        std::optional<std::size_t> block_size;
        for (std::size_t m = 0; m < message_count(); ++m) {
            std::map<Label, std::size_t> sizes;
            for (std::size_t k = 0; k < key_count(); ++k) {
                ++sizes[label(k, m)];
            }
            for (const auto &[tau, size] : sizes) {
                if (!block_size) {
                    block_size = size;
                } else if (size != *block_size) {
                    std::ostringstream os;
                    os << "non-uniform key partition at (m=" << m << ", tau=" << tau << "): |K_{m,tau}| = " << size
                       << ", expected L = " << *block_size;
                    return os.str();
                }
            }
        }
        for (std::size_t k = 0; k < key_count(); ++k) {
            for (std::size_t m = 0; m < message_count(); ++m) {
                for (std::size_t m2 = m + 1; m2 < message_count(); ++m2) {
                    if (label(k, m) == label(k, m2)) {
                        std::ostringstream os;
                        os << "key " << k << " gives label tau=" << label(k, m) << " to both m=" << m
                           << " and m=" << m2;
                        return os.str();
                    }
                }
            }
        }
        return std::nullopt;
    }

    void require_symmetric() const {
        if (auto why = symmetry_violation()) {
            throw InvariantError("scheme is not symmetric: " + *why);
        }
    }

  private:
    std::vector<std::vector<Label>> labels_;
    std::vector<UnitaryOperator> unitaries_;
    PureState initial_;
};

inline PureState tag_state(const QmacScheme &scheme, std::size_t k, std::size_t m) {
    return scheme.tag_state(scheme.label(k, m));
}

struct OverlapMatrix {
    std::vector<Label> labels;
    /// values(i, j) = |<Psi_labels[j] | Psi_labels[i]>|
    Eigen::MatrixXd values;

    [[nodiscard]] double max_off_diagonal() const {
        double best = 0.0;
        for (Eigen::Index i = 0; i < values.rows(); ++i) {
            for (Eigen::Index j = 0; j < values.cols(); ++j) {
                if (i != j) {
                    best = std::max(best, values(i, j));
                }
            }
        }
        return best;
    }
};

inline OverlapMatrix overlap_matrix(const QmacScheme &scheme, std::size_t m) {
    OverlapMatrix out;
    out.labels = scheme.labels_for(m);
    const auto n = static_cast<Eigen::Index>(out.labels.size());
    std::vector<PureState> states;
    states.reserve(out.labels.size());
    for (auto tau : out.labels) {
        states.push_back(scheme.tag_state(tau));
    }
    out.values = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double lam = std::min(1.0, std::abs(quantum::overlap(states[static_cast<std::size_t>(j)],
                                                                       states[static_cast<std::size_t>(i)])));
            out.values(i, j) = lam;
            out.values(j, i) = lam;
        }
    }
    return out;
}

/// K_{m,tau} for every realized tau. Throws InvariantError on a non-symmetric scheme.
inline std::map<Label, std::vector<std::size_t>> partition_keys(const QmacScheme &scheme, std::size_t m) {
    scheme.require_symmetric();
    std::map<Label, std::vector<std::size_t>> blocks;
    for (std::size_t k = 0; k < scheme.key_count(); ++k) {
        blocks[scheme.label(k, m)].push_back(k);
    }
    return blocks;
}

/// True when every pair of distinct tag states of every message is orthogonal.
inline bool classical_equivalent(const QmacScheme &scheme) {
    for (std::size_t m = 0; m < scheme.message_count(); ++m) {
        if (overlap_matrix(scheme, m).max_off_diagonal() > kOverlapTol) {
            return false;
        }
    }
    return true;
}

/// Bob's acceptance probability for an honestly generated pair.
inline double honest_acceptance(const QmacScheme &scheme, const DecisionRule &rule, std::size_t k, std::size_t m) {
    const auto psi = tag_state(scheme, k, m);
    return rule.acceptance(std::min(1.0, std::abs(quantum::overlap(psi, psi))));
}

enum class AttackKind { Impersonation, Substitution };

inline std::string to_string(AttackKind kind) {
    return kind == AttackKind::Impersonation ? "impersonation" : "substitution";
}

struct AttackWitness {
    std::size_t message = 0;
    /// label Bob expects
    Label expected_label = 0;
    /// label of the state the adversary sends
    Label sent_label = 0;
    std::string adversary_state;
    /// explicit adversary state, when the attack optimizes one
    std::vector<quantum::Complex> adversary_amplitudes;
};

struct AttackReport {
    AttackKind attack = AttackKind::Impersonation;
    double deception_probability = 0.0;
    double classical_floor = 0.0;
    /// Same expression with the mean over (m, tau != tau') in place of the max.
    double average_deception = 0.0;
    /// max Q(acc | tau, tau', m)
    double max_acceptance_error = 0.0;
    AttackWitness witness;

    /// delta = P0 - 1/|T|
    [[nodiscard]] double margin() const { return deception_probability - classical_floor; }
};

/**
 * Impersonation deception probability of a symmetric scheme under `rule`.
 * The max over (m, tau, tau') is an exhaustive scan; ties keep the first
 * maximizer in that lexicographic order.
 */
inline AttackReport impersonation_deception(const QmacScheme &scheme, const DecisionRule &rule) {
    scheme.require_symmetric();
    const auto t = static_cast<double>(scheme.tag_count());

    AttackReport report;
    report.classical_floor = 1.0 / t;
    bool found = false;
    double sum = 0.0;
    std::size_t terms = 0;
    for (std::size_t m = 0; m < scheme.message_count(); ++m) {
        const auto overlaps = overlap_matrix(scheme, m);
        const auto n = static_cast<Eigen::Index>(overlaps.labels.size());
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                if (i == j) {
                    continue;
                }
                const double q = rule.acceptance(overlaps.values(i, j));
                sum += q;
                ++terms;
                if (!found || q > report.max_acceptance_error) {
                    found = true;
                    report.max_acceptance_error = q;
                    report.witness.message = m;
                    report.witness.expected_label = overlaps.labels[static_cast<std::size_t>(i)];
                    report.witness.sent_label = overlaps.labels[static_cast<std::size_t>(j)];
                }
            }
        }
    }
    if (!found) {
        // a single label per message: Eve always guesses it
        report.deception_probability = 1.0;
        report.average_deception = 1.0;
        report.witness.adversary_state = "the unique tag state";
        return report;
    }
    report.deception_probability = 1.0 / t + (1.0 - 1.0 / t) * report.max_acceptance_error;
    report.average_deception = 1.0 / t + (1.0 - 1.0 / t) * (sum / static_cast<double>(terms));
    report.witness.adversary_state = "tag state of label " + std::to_string(report.witness.sent_label) +
                                     " under rule " + rule.describe();
    return report;
}

struct Theorem2Report {
    double p0 = 0.0;
    double classical_floor = 0.0;
    double margin = 0.0;
    double max_overlap = 0.0;
    bool classical_equivalent = false;
    AttackWitness witness;
};

/// Impersonation deception under the projective rule against the classical floor 1/|T|.
inline Theorem2Report verify_theorem2(const QmacScheme &scheme) {
    const auto attack = impersonation_deception(scheme, DecisionRule::projective());
    Theorem2Report out;
    out.p0 = attack.deception_probability;
    out.classical_floor = attack.classical_floor;
    out.margin = attack.margin();
    out.witness = attack.witness;
    for (std::size_t m = 0; m < scheme.message_count(); ++m) {
        out.max_overlap = std::max(out.max_overlap, overlap_matrix(scheme, m).max_off_diagonal());
    }
    out.classical_equivalent = out.max_overlap <= kOverlapTol;
    return out;
}

struct SchemeShape {
    std::size_t keys = 2;
    std::size_t messages = 2;
    std::size_t multiplicity = 1;
    std::size_t dimension = 2;
};

namespace detail {

/// labels[k][m] = m |T| + ((k / L + m) mod |T|): symmetric, with disjoint label sets per message.
inline std::vector<std::vector<Label>> symmetric_labels(const SchemeShape &shape) {
    if (shape.multiplicity == 0 || shape.keys % shape.multiplicity != 0 || shape.keys / shape.multiplicity < 1) {
        throw ParameterError("|K| must be a positive multiple of L");
    }
    const auto tags = shape.keys / shape.multiplicity;
    std::vector<std::vector<Label>> labels(shape.keys, std::vector<Label>(shape.messages));
    for (std::size_t k = 0; k < shape.keys; ++k) {
        for (std::size_t m = 0; m < shape.messages; ++m) {
            labels[k][m] = m * tags + (k / shape.multiplicity + m) % tags;
        }
    }
    return labels;
}

} // namespace detail

/// Symmetric scheme with Haar-random tagging unitaries and |Psi_in> = |0>.
inline QmacScheme make_random_scheme(const SchemeShape &shape, quantum::Rng &rng) {
    auto labels = detail::symmetric_labels(shape);
    const auto count = shape.messages * (shape.keys / shape.multiplicity);
    std::vector<UnitaryOperator> unitaries;
    unitaries.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        unitaries.push_back(quantum::haar_unitary(shape.dimension, rng));
    }
    return QmacScheme(std::move(labels), std::move(unitaries), PureState::basis(shape.dimension, 0));
}

/**
 * Classical-equivalent scheme: the label with block index b maps |0> to the
 * basis state |b>, so distinct tags of a message are orthogonal. Needs d >= |T|.
 */
inline QmacScheme make_orthogonal_scheme(const SchemeShape &shape) {
    auto labels = detail::symmetric_labels(shape);
    const auto tags = shape.keys / shape.multiplicity;
    if (shape.dimension < tags) {
        throw ParameterError("orthogonal scheme needs d >= |T|");
    }
    const auto d = static_cast<Eigen::Index>(shape.dimension);
    std::vector<UnitaryOperator> unitaries;
    for (std::size_t m = 0; m < shape.messages; ++m) {
        for (std::size_t b = 0; b < tags; ++b) {
            quantum::Matrix swap = quantum::Matrix::Identity(d, d);
            const auto bi = static_cast<Eigen::Index>(b);
            if (bi != 0) {
                swap(0, 0) = 0.0;
                swap(bi, bi) = 0.0;
                swap(0, bi) = 1.0;
                swap(bi, 0) = 1.0;
            }
            unitaries.emplace_back(std::move(swap));
        }
    }
    return QmacScheme(std::move(labels), std::move(unitaries), PureState::basis(shape.dimension, 0));
}

} // namespace qauth::qmac
