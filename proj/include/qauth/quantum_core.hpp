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
 * Dense finite-dimensional quantum states and operators: tensor products,
 * partial trace, projective measurement statistics, Hermitian eigenpairs and
 * the symmetric-subspace projector.
 *
 * Multi-partite objects carry a `dims` list; subsystem 0 is the most
 * significant digit of the basis index.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace qauth::quantum {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Dims = std::vector<std::size_t>;

inline constexpr std::size_t kMaxDimension = 4096;
/// construction-time checks (norm, unitarity, hermiticity)
inline constexpr double kConstructionTol = 1e-10;
/// algebraic identities (trace, orthonormality, idempotence)
inline constexpr double kIdentityTol = 1e-9;
/// eigen-residuals
inline constexpr double kResidualTol = 1e-8;

inline std::size_t total_dimension(const Dims &dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
}

namespace detail {

inline Dims resolve_dims(Dims dims, std::size_t d) {
    if (dims.empty()) {
        return Dims{d};
    }
    if (total_dimension(dims) != d) {
        throw DimensionError("dims product " + std::to_string(total_dimension(dims)) +
                             " does not match dimension " + std::to_string(d));
    }
    return dims;
}

inline void require_square(const Matrix &m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError("operator matrix must be square and nonempty");
    }
}

inline double max_abs(const Matrix &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

} // namespace detail

class PureState {
  public:
    PureState(Vector amplitudes, Dims dims = {})
        : amplitudes_(std::move(amplitudes)),
          dims_(detail::resolve_dims(std::move(dims), static_cast<std::size_t>(amplitudes_.size()))) {
        if (amplitudes_.size() == 0) {
            throw DimensionError("state must have dimension >= 1");
        }
        if (std::abs(amplitudes_.norm() - 1.0) > kConstructionTol) {
            throw InvariantError("state is not normalized (norm " +
                                 std::to_string(amplitudes_.norm()) + ")");
        }
    }

    /// Rescales `v` to unit norm.
    static PureState normalized(const Vector &v, Dims dims = {}) {
        const double n = v.norm();
        if (n == 0.0) {
            throw ParameterError("cannot normalize the zero vector");
        }
        return PureState(v / n, std::move(dims));
    }

    static PureState basis(Dims dims, std::size_t index) {
        const auto d = total_dimension(dims);
        if (index >= d) {
            throw ParameterError("basis index out of range");
        }
        Vector v = Vector::Zero(static_cast<Eigen::Index>(d));
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return PureState(std::move(v), std::move(dims));
    }

    static PureState basis(std::size_t d, std::size_t index) { return basis(Dims{d}, index); }

    [[nodiscard]] const Vector &data() const { return amplitudes_; }
    [[nodiscard]] const Vector &amplitudes() const { return amplitudes_; }
    [[nodiscard]] const Dims &dims() const { return dims_; }
    [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
    [[nodiscard]] Complex operator[](std::size_t i) const {
        return amplitudes_(static_cast<Eigen::Index>(i));
    }

  private:
    Vector amplitudes_;
    Dims dims_;
};

class UnitaryOperator {
  public:
    UnitaryOperator(Matrix matrix, Dims dims = {}) : matrix_(std::move(matrix)) {
        detail::require_square(matrix_);
        dims_ = detail::resolve_dims(std::move(dims), static_cast<std::size_t>(matrix_.rows()));
        const Matrix defect = matrix_.adjoint() * matrix_ - Matrix::Identity(matrix_.rows(), matrix_.cols());
        if (detail::max_abs(defect) > kConstructionTol) {
            throw InvariantError("operator is not unitary (max |U^dag U - I| = " +
                                 std::to_string(detail::max_abs(defect)) + ")");
        }
    }

    static UnitaryOperator identity(std::size_t d) {
        return UnitaryOperator(Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
    }

    [[nodiscard]] const Matrix &data() const { return matrix_; }
    [[nodiscard]] const Matrix &matrix() const { return matrix_; }
    [[nodiscard]] const Dims &dims() const { return dims_; }
    [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }

    [[nodiscard]] UnitaryOperator adjoint() const { return UnitaryOperator(matrix_.adjoint(), dims_); }

    [[nodiscard]] PureState apply(const PureState &psi) const {
        if (psi.dimension() != dimension()) {
            throw DimensionError("unitary of dimension " + std::to_string(dimension()) +
                                 " applied to state of dimension " + std::to_string(psi.dimension()));
        }
        // renormalize to absorb rounding drift
        return PureState::normalized(matrix_ * psi.data(), dims_);
    }

    /// Operator product (*this) * rhs.
    [[nodiscard]] UnitaryOperator then_after(const UnitaryOperator &rhs) const {
        if (rhs.dimension() != dimension()) {
            throw DimensionError("unitary product dimension mismatch");
        }
        return UnitaryOperator(matrix_ * rhs.matrix_, dims_);
    }

  private:
    Matrix matrix_;
    Dims dims_;
};

class HermitianOperator {
  public:
    HermitianOperator(Matrix matrix, Dims dims = {}) : matrix_(std::move(matrix)) {
        detail::require_square(matrix_);
        dims_ = detail::resolve_dims(std::move(dims), static_cast<std::size_t>(matrix_.rows()));
        const double asym = detail::max_abs(matrix_ - matrix_.adjoint());
        if (asym > kConstructionTol) {
            throw InvariantError("operator is not Hermitian (max |A - A^dag| = " +
                                 std::to_string(asym) + ")");
        }
    }

    [[nodiscard]] const Matrix &data() const { return matrix_; }
    [[nodiscard]] const Matrix &matrix() const { return matrix_; }
    [[nodiscard]] const Dims &dims() const { return dims_; }
    [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
    [[nodiscard]] double trace() const { return matrix_.trace().real(); }

    /// <psi| A |psi>
    [[nodiscard]] double expectation(const PureState &psi) const {
        if (psi.dimension() != dimension()) {
            throw DimensionError("expectation dimension mismatch");
        }
        return psi.data().dot(matrix_ * psi.data()).real();
    }

  private:
    Matrix matrix_;
    Dims dims_;
};

/// |psi><psi|
inline HermitianOperator density(const PureState &psi) {
    return HermitianOperator(psi.data() * psi.data().adjoint(), psi.dims());
}

namespace detail {

template <class T>
concept DenseQuantumObject = requires(const T &t) {
    t.data();
    { t.dims() } -> std::convertible_to<const Dims &>;
};

inline Vector kron(const Vector &a, const Vector &b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

} // namespace detail

/**
 * Kronecker product of a nonempty list of states or operators. Subsystem
 * dims are concatenated in order.
 */
template <detail::DenseQuantumObject T>
T tensor(std::span<const T> factors, std::size_t max_dimension = kMaxDimension) {
    if (factors.empty()) {
        throw ParameterError("tensor of an empty list");
    }
    std::size_t d = 1;
    for (const auto &f : factors) {
        d *= f.dimension();
        if (d > max_dimension) {
            throw ParameterError("tensor product dimension exceeds cap " + std::to_string(max_dimension));
        }
    }
    auto data = factors.front().data();
    Dims dims = factors.front().dims();
    for (const auto &f : factors.subspan(1)) {
        data = detail::kron(data, f.data());
        dims.insert(dims.end(), f.dims().begin(), f.dims().end());
    }
    if constexpr (std::is_same_v<T, PureState>) {
        return PureState::normalized(data, std::move(dims));
    } else {
        return T(std::move(data), std::move(dims));
    }
}

template <detail::DenseQuantumObject T>
T tensor(const T &a, const T &b, std::size_t max_dimension = kMaxDimension) {
    const std::vector<T> factors{a, b};
    return tensor(std::span<const T>(factors), max_dimension);
}

/// <a|b>
inline Complex overlap(const PureState &a, const PureState &b) {
    if (a.dimension() != b.dimension()) {
        throw DimensionError("overlap of states with dimensions " + std::to_string(a.dimension()) +
                             " and " + std::to_string(b.dimension()));
    }
    return a.data().dot(b.data());
}

namespace detail {

/// Maps (kept index, traced index) to the full basis index.
struct SubsystemSplit {
    std::size_t kept_dimension = 1;
    std::size_t traced_dimension = 1;
    Dims kept_dims;
    std::vector<std::size_t> full_index; // [kept * traced_dimension + traced]
};

inline SubsystemSplit split_subsystems(const Dims &dims, std::vector<std::size_t> keep) {
    std::sort(keep.begin(), keep.end());
    if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
        throw ParameterError("partial trace keep set has duplicate subsystems");
    }
    for (auto s : keep) {
        if (s >= dims.size()) {
            throw ParameterError("partial trace keep index " + std::to_string(s) + " out of range (" +
                                 std::to_string(dims.size()) + " subsystems)");
        }
    }
    SubsystemSplit split;
    std::vector<bool> kept(dims.size(), false);
    for (auto s : keep) {
        kept[s] = true;
        split.kept_dims.push_back(dims[s]);
        split.kept_dimension *= dims[s];
    }
    split.traced_dimension = total_dimension(dims) / split.kept_dimension;
    if (split.kept_dims.empty()) {
        split.kept_dims.push_back(1);
    }

    const auto full = total_dimension(dims);
    split.full_index.assign(full, 0);
    std::vector<std::size_t> digits(dims.size(), 0);
    for (std::size_t i = 0; i < full; ++i) {
        std::size_t rem = i;
        for (std::size_t s = dims.size(); s-- > 0;) {
            digits[s] = rem % dims[s];
            rem /= dims[s];
        }
        std::size_t k = 0;
        std::size_t t = 0;
        for (std::size_t s = 0; s < dims.size(); ++s) {
            if (kept[s]) {
                k = k * dims[s] + digits[s];
            } else {
                t = t * dims[s] + digits[s];
            }
        }
        split.full_index[k * split.traced_dimension + t] = i;
    }
    return split;
}

} // namespace detail

/// Reduced density operator of `psi` on the subsystems in `keep`.
inline HermitianOperator partial_trace(const PureState &psi, const std::vector<std::size_t> &keep) {
    const auto split = detail::split_subsystems(psi.dims(), keep);
    const auto dk = static_cast<Eigen::Index>(split.kept_dimension);
    const auto dt = static_cast<Eigen::Index>(split.traced_dimension);
    Matrix amp(dk, dt);
    for (Eigen::Index k = 0; k < dk; ++k) {
        for (Eigen::Index t = 0; t < dt; ++t) {
            amp(k, t) = psi[split.full_index[static_cast<std::size_t>(k * dt + t)]];
        }
    }
    Matrix rho = amp * amp.adjoint();
    // exact hermiticity
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return HermitianOperator(std::move(rho), split.kept_dims);
}

inline HermitianOperator partial_trace(const HermitianOperator &op, const std::vector<std::size_t> &keep) {
    const auto split = detail::split_subsystems(op.dims(), keep);
    const auto dk = static_cast<Eigen::Index>(split.kept_dimension);
    const auto dt = static_cast<Eigen::Index>(split.traced_dimension);
    Matrix out = Matrix::Zero(dk, dk);
    for (Eigen::Index r = 0; r < dk; ++r) {
        for (Eigen::Index c = 0; c < dk; ++c) {
            Complex acc = 0.0;
            for (Eigen::Index t = 0; t < dt; ++t) {
                const auto i = static_cast<Eigen::Index>(split.full_index[static_cast<std::size_t>(r * dt + t)]);
                const auto j = static_cast<Eigen::Index>(split.full_index[static_cast<std::size_t>(c * dt + t)]);
                acc += op.data()(i, j);
            }
            out(r, c) = acc;
        }
    }
    out = 0.5 * (out + out.adjoint()).eval();
    return HermitianOperator(std::move(out), split.kept_dims);
}

/// Ascending eigenvalues of the symmetrized matrix (A + A^dag) / 2.
inline std::vector<double> eigenvalues(const HermitianOperator &a) {
    const Matrix sym = 0.5 * (a.data() + a.data().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

struct EigenPair {
    double value = 0.0;
    PureState vector = PureState::basis(1, 0);
};

/**
 * Largest eigenvalue and an eigenvector of a Hermitian operator.
 *
 * When the top eigenvalue is degenerate (within 1e-9) the returned vector is
 * the normalized projection of the lowest-index computational basis vector
 * with a non-negligible component in the top eigenspace; that component is
 * real and positive. A = I therefore yields |0>.
 */
inline EigenPair max_eigenpair(const HermitianOperator &a) {
    const Matrix sym = 0.5 * (a.data() + a.data().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw InvariantError("Hermitian eigensolver did not converge");
    }
    const auto &vals = solver.eigenvalues();
    const Eigen::Index d = vals.size();
    const double top = vals(d - 1);
    Eigen::Index first = d - 1;
    while (first > 0 && top - vals(first - 1) <= kIdentityTol) {
        --first;
    }
    const Matrix span = solver.eigenvectors().rightCols(d - first);
    for (Eigen::Index i = 0; i < d; ++i) {
        Vector proj = span * span.row(i).adjoint();
        if (proj.norm() > 1e-6) {
            return {top, PureState::normalized(proj, a.dims())};
        }
    }
    // unreachable: the projector onto a nonzero subspace has a column of norm >= 1/sqrt(d)
    throw InvariantError("degenerate eigenspace tie-break failed");
}

/// Projective measurement statistics p_j = <phi_j| rho |phi_j> in a complete orthonormal basis.
inline std::vector<double> measure_projective(const HermitianOperator &rho, std::span<const PureState> basis) {
    const auto d = rho.dimension();
    if (basis.size() != d) {
        throw ParameterError("measurement basis has " + std::to_string(basis.size()) +
                             " elements, expected " + std::to_string(d));
    }
    if (std::abs(rho.trace() - 1.0) > kIdentityTol) {
        throw InvariantError("density operator trace " + std::to_string(rho.trace()) + " != 1");
    }
    if (eigenvalues(rho).front() < -kIdentityTol) {
        throw InvariantError("density operator is not positive semidefinite");
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (basis[i].dimension() != d) {
            throw DimensionError("measurement basis vector has wrong dimension");
        }
        for (std::size_t j = 0; j <= i; ++j) {
            const double target = i == j ? 1.0 : 0.0;
            if (std::abs(overlap(basis[j], basis[i]) - target) > kIdentityTol) {
                throw InvariantError("measurement basis is not orthonormal at (" + std::to_string(j) +
                                     ", " + std::to_string(i) + ")");
            }
        }
    }
    std::vector<double> probs(d);
    for (std::size_t j = 0; j < d; ++j) {
        probs[j] = std::max(0.0, rho.expectation(basis[j]));
    }
    return probs;
}

/// Computational basis of the given subsystem layout.
inline std::vector<PureState> computational_basis(const Dims &dims) {
    std::vector<PureState> out;
    const auto d = total_dimension(dims);
    out.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        out.push_back(PureState::basis(dims, i));
    }
    return out;
}

inline constexpr std::size_t kMaxSymmetricCopies = 8;

/**
 * Projector onto the symmetric subspace of (C^d)^(tensor n):
 * P_sym = (1/n!) sum over permutations of the tensor factors.
 */
inline HermitianOperator symmetric_projector(std::size_t d, std::size_t n) {
    if (d == 0 || n == 0) {
        throw ParameterError("symmetric projector needs d >= 1 and n >= 1");
    }
    if (n > kMaxSymmetricCopies) {
        throw ParameterError("symmetric projector supports at most 8 copies");
    }
    std::size_t full = 1;
    for (std::size_t i = 0; i < n; ++i) {
        full *= d;
        if (full > kMaxDimension) {
            throw ParameterError("d^n exceeds the 4096 dimension cap");
        }
    }
    std::vector<std::vector<std::size_t>> digits(full, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < full; ++i) {
        std::size_t rem = i;
        for (std::size_t s = n; s-- > 0;) {
            digits[i][s] = rem % d;
            rem /= d;
        }
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double factorial = 1.0;
    for (std::size_t i = 2; i <= n; ++i) {
        factorial *= static_cast<double>(i);
    }
    const auto dim = static_cast<Eigen::Index>(full);
    Matrix p = Matrix::Zero(dim, dim);
    do {
        for (std::size_t i = 0; i < full; ++i) {
            std::size_t j = 0;
            for (std::size_t s = 0; s < n; ++s) {
                j = j * d + digits[i][perm[s]];
            }
            p(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) += 1.0;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    p /= factorial;
    return HermitianOperator(std::move(p), Dims(n, d));
}

/// Number of eigenvalues above `threshold`; the integer rank of a projector at 1/2.
inline std::size_t rank_above(const HermitianOperator &a, double threshold = 0.5) {
    const auto ev = eigenvalues(a);
    return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [&](double v) { return v > threshold; }));
}

/// Common fixed gates.
namespace gates {

inline UnitaryOperator pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return UnitaryOperator(m);
}

inline UnitaryOperator hadamard() {
    Matrix m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return UnitaryOperator(m);
}

inline UnitaryOperator identity(std::size_t d) { return UnitaryOperator::identity(d); }

} // namespace gates

} // namespace qauth::quantum
