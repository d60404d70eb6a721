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
 * The entangled-key one-bit QMAC: Alice and Bob share a singlet on A, B;
 * Alice tags |phi_m> on the four-dimensional system C with U controlled by
 * A, Bob undoes it with U^dag controlled by B and accepts outcomes
 * j in {0, 1} of a measurement in the basis {phi_j}.
 *
 * Joint states are ordered A (x) B (x) C with dims {2, 2, 4}.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "qmac_framework.hpp"
#include "quantum_core.hpp"

namespace qauth::curty_santos {

using quantum::Complex;
using quantum::Dims;
using quantum::HermitianOperator;
using quantum::Matrix;
using quantum::PureState;
using quantum::UnitaryOperator;
using quantum::Vector;

inline constexpr std::size_t kTagDimension = 4;
inline const Dims kJointDims{2, 2, 4};

/// (|01> - |10>) / sqrt 2
inline PureState singlet() {
    Vector v = Vector::Zero(4);
    v(1) = 1.0 / std::sqrt(2.0);
    v(2) = -1.0 / std::sqrt(2.0);
    return PureState(v, Dims{2, 2});
}

class Instance {
  public:
    explicit Instance(UnitaryOperator tag_unitary) : Instance(std::move(tag_unitary), quantum::computational_basis(Dims{4})) {}

    Instance(UnitaryOperator tag_unitary, std::vector<PureState> basis)
        : unitary_(std::move(tag_unitary)), basis_(std::move(basis)) {
        if (unitary_.dimension() != kTagDimension) {
            throw DimensionError("tag unitary must be 4 x 4");
        }
        if (basis_.size() != kTagDimension) {
            throw DimensionError("basis must have four elements");
        }
        for (std::size_t i = 0; i < kTagDimension; ++i) {
            if (basis_[i].dimension() != kTagDimension) {
                throw DimensionError("basis vectors must have dimension 4");
            }
            for (std::size_t j = 0; j <= i; ++j) {
                const double target = i == j ? 1.0 : 0.0;
                if (std::abs(quantum::overlap(basis_[j], basis_[i]) - target) > quantum::kIdentityTol) {
                    throw InvariantError("basis is not orthonormal at (" + std::to_string(j) + ", " +
                                         std::to_string(i) + ")");
                }
            }
        }
    }

    [[nodiscard]] const UnitaryOperator &tag_unitary() const { return unitary_; }
    [[nodiscard]] const std::vector<PureState> &basis() const { return basis_; }
    [[nodiscard]] const PureState &phi(std::size_t j) const { return basis_.at(j); }

    /// <phi_i| U |phi_j>
    [[nodiscard]] Complex unitary_element(std::size_t i, std::size_t j) const {
        return phi(i).data().dot(unitary_.data() * phi(j).data());
    }

  private:
    UnitaryOperator unitary_;
    std::vector<PureState> basis_;
};

namespace detail {

inline Matrix projector_bit(int bit) {
    Matrix p = Matrix::Zero(2, 2);
    p(bit, bit) = 1.0;
    return p;
}

inline PureState joint(const PureState &tag) {
    const auto ab = singlet();
    return PureState::normalized(quantum::detail::kron(ab.data(), tag.data()), kJointDims);
}

} // namespace detail

/// E_AC = |0><0|_A (x) 1 + |1><1|_A (x) U_C, identity on B.
inline Matrix encoding_operator(const Instance &inst) {
    using quantum::detail::kron;
    const Matrix id2 = Matrix::Identity(2, 2);
    const Matrix id4 = Matrix::Identity(4, 4);
    return kron(detail::projector_bit(0), kron(id2, id4)) +
           kron(detail::projector_bit(1), kron(id2, inst.tag_unitary().data()));
}

/// D_BC = |0><0|_B (x) U^dag_C + |1><1|_B (x) 1, identity on A.
inline Matrix decoding_operator(const Instance &inst) {
    using quantum::detail::kron;
    const Matrix id2 = Matrix::Identity(2, 2);
    const Matrix id4 = Matrix::Identity(4, 4);
    return kron(id2, Matrix(kron(detail::projector_bit(0), Matrix(inst.tag_unitary().data().adjoint())) +
                            kron(detail::projector_bit(1), id4)));
}

struct HonestRunTrace {
    int message = 0;
    /// state after Alice's controlled tagging
    PureState joint_state_after_encode = PureState::basis(1, 0);
    /// reduced state of C that travels to Bob
    HermitianOperator transmitted_density = HermitianOperator(Matrix::Identity(1, 1));
    PureState joint_state_after_decode = PureState::basis(1, 0);
    /// || decoded - singlet (x) |phi_m> ||
    double factorization_residual = 0.0;
    std::vector<double> bob_outcome_distribution;
    double accepted_probability = 0.0;
};

inline double acceptance_of(const std::vector<double> &distribution) { return distribution[0] + distribution[1]; }

inline HonestRunTrace honest_run(const Instance &inst, int m) {
    if (m != 0 && m != 1) {
        throw ParameterError("message must be a bit");
    }
    HonestRunTrace trace;
    trace.message = m;
    const auto input = detail::joint(inst.phi(static_cast<std::size_t>(m)));
    trace.joint_state_after_encode = PureState::normalized(encoding_operator(inst) * input.data(), kJointDims);
    trace.transmitted_density = quantum::partial_trace(trace.joint_state_after_encode, {2});
    trace.joint_state_after_decode =
        PureState::normalized(decoding_operator(inst) * trace.joint_state_after_encode.data(), kJointDims);
    trace.factorization_residual = (trace.joint_state_after_decode.data() - input.data()).norm();
    const auto received = quantum::partial_trace(trace.joint_state_after_decode, {2});
    trace.bob_outcome_distribution = quantum::measure_projective(received, inst.basis());
    trace.accepted_probability = acceptance_of(trace.bob_outcome_distribution);
    return trace;
}

/// Reduced state 1/2(|psi><psi| + U^dag|psi><psi|U) that Bob measures when Eve sends |psi>.
inline HermitianOperator impersonation_received_density(const Instance &inst, const PureState &psi) {
    if (psi.dimension() != kTagDimension) {
        throw DimensionError("adversary state must have dimension 4");
    }
    const auto decoded = PureState::normalized(decoding_operator(inst) * detail::joint(psi).data(), kJointDims);
    return quantum::partial_trace(decoded, {2});
}

/// Acceptance probability of Eve's |psi> obtained by running the full protocol.
inline double simulate_impersonation(const Instance &inst, const PureState &psi) {
    return acceptance_of(quantum::measure_projective(impersonation_received_density(inst, psi), inst.basis()));
}

/// 1/2 sum_{j=0,1} |<phi_j|psi>|^2 + 1/2 sum_{j=0,1} |<psi|U|phi_j>|^2
inline double impersonation_acceptance(const Instance &inst, const PureState &psi) {
    if (psi.dimension() != kTagDimension) {
        throw DimensionError("adversary state must have dimension 4");
    }
    double direct = 0.0;
    double rotated = 0.0;
    for (std::size_t j = 0; j < 2; ++j) {
        direct += std::norm(quantum::overlap(inst.phi(j), psi));
        rotated += std::norm(psi.data().dot(inst.tag_unitary().data() * inst.phi(j).data()));
    }
    return 0.5 * direct + 0.5 * rotated;
}

/// M with <psi|M|psi> = impersonation_acceptance(psi).
inline HermitianOperator impersonation_operator(const Instance &inst) {
    Matrix m = Matrix::Zero(4, 4);
    for (std::size_t j = 0; j < 2; ++j) {
        const Vector &phi = inst.phi(j).data();
        const Vector u_phi = inst.tag_unitary().data() * phi;
        m += 0.5 * (phi * phi.adjoint() + u_phi * u_phi.adjoint());
    }
    m = 0.5 * (m + m.adjoint()).eval();
    return HermitianOperator(std::move(m));
}

namespace detail {

inline std::string describe_state(const PureState &psi) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < psi.dimension(); ++i) {
        os << (i ? ", " : "") << format_real(psi[i].real()) << (psi[i].imag() < 0 ? "-" : "+")
           << format_real(std::abs(psi[i].imag())) << 'i';
    }
    os << ']';
    return os.str();
}

} // namespace detail

/// Eve's best pure-state impersonation: the dominant eigenpair of M.
inline qmac::AttackReport optimal_impersonation(const Instance &inst) {
    const auto top = quantum::max_eigenpair(impersonation_operator(inst));
    qmac::AttackReport report;
    report.attack = qmac::AttackKind::Impersonation;
    report.deception_probability = top.value;
    report.classical_floor = 0.5;
    report.max_acceptance_error = top.value;
    report.average_deception = top.value;
    report.witness.adversary_state = detail::describe_state(top.vector);
    report.witness.adversary_amplitudes.assign(top.vector.data().begin(), top.vector.data().end());
    return report;
}

struct Condition13 {
    /// <phi_m| U |phi_m>
    std::array<Complex, 2> diagonal{};
    std::array<bool, 2> holds{};
    bool all = false;
};

/// <phi_m|U|phi_m> = 0 for each m (within 1e-9).
inline Condition13 condition_13(const Instance &inst) {
    Condition13 out;
    for (std::size_t m = 0; m < 2; ++m) {
        out.diagonal[m] = inst.unitary_element(m, m);
        out.holds[m] = std::abs(out.diagonal[m]) <= quantum::kIdentityTol;
    }
    out.all = out.holds[0] && out.holds[1];
    return out;
}

/// Success rate 1 - |<phi_m|U|phi_m>| of unambiguously discriminating |phi_m> from U|phi_m> at equal priors.
inline double substitution_conclusive_probability(const Instance &inst, int m) {
    if (m != 0 && m != 1) {
        throw ParameterError("message must be a bit");
    }
    const auto idx = static_cast<std::size_t>(m);
    return std::clamp(1.0 - std::abs(inst.unitary_element(idx, idx)), 0.0, 1.0);
}

struct IncompatibilityReport {
    double optimal_impersonation = 0.0;
    bool impersonation_at_floor = false;
    Condition13 condition13;
    std::array<double, 2> substitution_conclusive{};
    /// conclusive discrimination fails with nonzero probability for both messages
    bool substitution_blocked = false;
    /// never true: both security goals at once
    bool both_achieved = false;
    int witness_message = 0;
    double witness_overlap = 0.0;
};

/**
 * Checks that impersonation at the floor 1/2 and blocked conclusive
 * substitution never hold together. `tolerance` sets both the distance from
 * 1/2 and the margin below 1.
 */
inline IncompatibilityReport incompatibility_report(const Instance &inst, double tolerance = 1e-6) {
    IncompatibilityReport out;
    out.optimal_impersonation = optimal_impersonation(inst).deception_probability;
    out.impersonation_at_floor = std::abs(out.optimal_impersonation - 0.5) <= tolerance;
    out.condition13 = condition_13(inst);
    for (int m = 0; m < 2; ++m) {
        out.substitution_conclusive[static_cast<std::size_t>(m)] = substitution_conclusive_probability(inst, m);
    }
    out.substitution_blocked = out.substitution_conclusive[0] < 1.0 - tolerance &&
                               out.substitution_conclusive[1] < 1.0 - tolerance;
    out.both_achieved = out.impersonation_at_floor && out.substitution_blocked;
    // the message whose tag pair is easiest to tell apart
    out.witness_message = out.substitution_conclusive[1] > out.substitution_conclusive[0] ? 1 : 0;
    out.witness_overlap = std::abs(out.condition13.diagonal[static_cast<std::size_t>(out.witness_message)]);
    return out;
}

/// V_m: swaps phi_0 and phi_m, so V_m |phi_0> = |phi_m>.
inline UnitaryOperator message_preparation(const Instance &inst, std::size_t m) {
    Matrix v = Matrix::Identity(4, 4);
    if (m != 0) {
        const Vector &a = inst.phi(0).data();
        const Vector &b = inst.phi(m).data();
        v += -a * a.adjoint() - b * b.adjoint() + b * a.adjoint() + a * b.adjoint();
    }
    return UnitaryOperator(std::move(v));
}

/**
 * The protocol as a generic scheme: keys {0, 1}, labels tau = 2k + m,
 * E_tau = U_k V_m with U_0 = 1, U_1 = U, and |Psi_in> = |phi_0>.
 */
inline qmac::QmacScheme to_qmac_scheme(const Instance &inst) {
    std::vector<std::vector<qmac::Label>> labels{{0, 1}, {2, 3}};
    std::vector<UnitaryOperator> unitaries;
    for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t m = 0; m < 2; ++m) {
            const auto vm = message_preparation(inst, m);
            unitaries.push_back(k == 0 ? vm : inst.tag_unitary().then_after(vm));
        }
    }
    return qmac::QmacScheme(std::move(labels), std::move(unitaries), inst.phi(0));
}

/// Named tag unitaries: identity, x_identity (X (x) 1), hadamard_hadamard (H (x) H).
inline UnitaryOperator preset_unitary(const std::string &name) {
    using quantum::gates::hadamard;
    using quantum::gates::identity;
    using quantum::gates::pauli_x;
    if (name == "identity") {
        return UnitaryOperator(Matrix::Identity(4, 4), Dims{2, 2});
    }
    if (name == "x_identity") {
        return quantum::tensor(pauli_x(), identity(2));
    }
    if (name == "hadamard_hadamard") {
        return quantum::tensor(hadamard(), hadamard());
    }
    throw ParameterError("unknown unitary preset '" + name + "'");
}

} // namespace qauth::curty_santos
