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
 * Seeded sampling of Haar-random unitaries and pure states.
 */

#pragma once

#include <cstdint>
#include <random>

#include <Eigen/QR>

#include "quantum_core.hpp"

namespace qauth::quantum {

using Rng = std::mt19937_64;

namespace detail {

inline Matrix ginibre(std::size_t rows, std::size_t cols, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

} // namespace detail

/// Haar-distributed unitary: QR of a complex Ginibre matrix with R's diagonal phases removed.
inline UnitaryOperator haar_unitary(std::size_t d, Rng &rng, Dims dims = {}) {
    const Matrix g = detail::ginibre(d, d, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const Complex diag = r(j, j);
        const double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(j) *= diag / mag;
        }
    }
    return UnitaryOperator(std::move(q), std::move(dims));
}

/// Uniformly random pure state (normalized complex Gaussian vector).
inline PureState random_state(std::size_t d, Rng &rng, Dims dims = {}) {
    const Vector v = detail::ginibre(d, 1, rng).col(0);
    return PureState::normalized(v, std::move(dims));
}

} // namespace qauth::quantum
