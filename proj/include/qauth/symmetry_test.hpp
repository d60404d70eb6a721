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
 * n-copy symmetry-test verifier: closed-form acceptance error, an
 * independent projector-based evaluation, the copy count needed for a target
 * impersonation probability, and key-length accounting.
 *
 * `n` counts all systems entering the test: n - 1 received copies plus the
 * locally prepared expected tag.
 */

#pragma once

#include <algorithm>
#include <iterator>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "classical_mac.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "quantum_core.hpp"

namespace qauth::symmetry {

using quantum::HermitianOperator;
using quantum::PureState;

/// Acceptance probability (1/n)[1 + (n - 1) lambda^2] of a wrong tag with overlap lambda.
inline double acceptance_error_formula(std::size_t n, double lambda) {
    if (n == 0) {
        throw ParameterError("symmetry test needs n >= 1");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw ParameterError("overlap must lie in [0, 1]");
    }
    const auto nd = static_cast<double>(n);
    return (1.0 + (nd - 1.0) * lambda * lambda) / nd;
}

/// <Phi| P_sym |Phi> with |Phi> = |a> (x) |b>^(n-1), using a prebuilt projector.
inline double acceptance_error_oracle(const HermitianOperator &projector, std::size_t n,
                                      const PureState &a, const PureState &b) {
    if (a.dimension() != b.dimension()) {
        throw DimensionError("symmetry test states must have equal dimension");
    }
    std::vector<PureState> factors{a};
    for (std::size_t i = 1; i < n; ++i) {
        factors.push_back(b);
    }
    const auto phi = quantum::tensor(std::span<const PureState>(factors));
    if (phi.dimension() != projector.dimension()) {
        throw DimensionError("projector does not act on (C^d)^n");
    }
    return projector.expectation(phi);
}

inline double acceptance_error_oracle(std::size_t n, const PureState &a, const PureState &b) {
    if (a.dimension() != b.dimension()) {
        throw DimensionError("symmetry test states must have equal dimension");
    }
    return acceptance_error_oracle(quantum::symmetric_projector(a.dimension(), n), n, a, b);
}

/// Largest overlap for which P0 = 1/|T| + delta is reachable: sqrt(delta |T| / (|T| - 1)).
inline double feasibility_threshold(std::uint64_t tag_count, double delta) {
    const auto t = static_cast<double>(tag_count);
    return std::sqrt(delta * t / (t - 1.0));
}

struct CopiesRequired {
    double real = 0.0;
    std::uint64_t ceiling = 0;
};

inline void validate_target(std::uint64_t tag_count, double delta) {
    if (tag_count < 2) {
        throw ParameterError("|T| must be at least 2");
    }
    if (!(delta > 0.0 && delta <= 1.0 / static_cast<double>(tag_count))) {
        throw ParameterError("delta must lie in (0, 1/|T|]");
    }
}

/**
 * Copies needed so that P0 = 1/|T| + delta:
 *   n = (|T| - 1)(1 - lambda^2) / (delta |T| - (|T| - 1) lambda^2).
 * Throws DomainError unless lambda < sqrt(delta |T| / (|T| - 1)).
 */
inline CopiesRequired copies_required(std::uint64_t tag_count, double delta, double lambda_max) {
    validate_target(tag_count, delta);
    if (!(lambda_max >= 0.0 && lambda_max <= 1.0)) {
        throw ParameterError("lambda_max must lie in [0, 1]");
    }
    const double threshold = feasibility_threshold(tag_count, delta);
    if (!(lambda_max < threshold)) {
        throw DomainError("lambda_max = " + format_real(lambda_max) +
                          " is not below the feasibility threshold sqrt(delta|T|/(|T|-1)) = " +
                          format_real(threshold));
    }
    const auto t = static_cast<double>(tag_count);
    const double l2 = lambda_max * lambda_max;
    CopiesRequired out;
    out.real = (t - 1.0) * (1.0 - l2) / (delta * t - (t - 1.0) * l2);
    // absorb rounding so that exact integers are not bumped up
    out.ceiling = static_cast<std::uint64_t>(std::ceil(out.real - 1e-9));
    return out;
}

/// Impersonation deception 1/|T| + (1 - 1/|T|) Q when Bob uses an n-system symmetry test.
inline double impersonation_with_symmetry_test(std::uint64_t tag_count, double n, double lambda_max) {
    const auto t = static_cast<double>(tag_count);
    const double q = (1.0 + (n - 1.0) * lambda_max * lambda_max) / n;
    return 1.0 / t + (1.0 - 1.0 / t) * q;
}

struct SymmetryTestParams {
    std::size_t n = 2;
    std::size_t d = 2;
    double lambda_max = 0.0;
    std::uint64_t tag_count = 2;
    double delta = 0.5;
    double epsilon = 0.5;

    void validate() const {
        if (n < 2) {
            throw ParameterError("symmetry test needs n >= 2");
        }
        if (!(lambda_max >= 0.0 && lambda_max <= 1.0)) {
            throw ParameterError("lambda_max must lie in [0, 1]");
        }
        validate_target(tag_count, delta);
        if (!(epsilon > 0.0 && epsilon < 1.0)) {
            throw ParameterError("epsilon must lie in (0, 1)");
        }
    }
};

struct ClassicalComparator {
    double tag_count = 2;
    double message_bits = 64;
};

struct KeyLengthBound {
    /// Holevo bound (n - 1) log2 d on what n - 1 copies reveal.
    double info_gain_bound = 0.0;
    /// |log2 eps| + info_gain_bound
    double required_key_bits = 0.0;
    /// Wegman-Carter 4 log2|T| log2 log2|M|, when a comparator was supplied.
    std::optional<double> classical_reference_bits;
};

inline KeyLengthBound key_length_requirement(double epsilon, double n, std::size_t d,
                                             std::optional<ClassicalComparator> comparator = std::nullopt) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ParameterError("epsilon must lie in (0, 1)");
    }
    if (n < 1.0 || d < 1) {
        throw ParameterError("key length needs n >= 1 and d >= 1");
    }
    KeyLengthBound out;
    out.info_gain_bound = (n - 1.0) * std::log2(static_cast<double>(d));
    out.required_key_bits = std::abs(std::log2(epsilon)) + out.info_gain_bound;
    if (comparator) {
        out.classical_reference_bits =
            classical::wegman_carter_reference_bits(comparator->tag_count, comparator->message_bits);
    }
    return out;
}

/**
 * Grid for the copy-count / key-length sweep. delta and lambda are given as
 * fractions: delta = delta_fraction / |T| and lambda = lambda_fraction *
 * feasibility_threshold(|T|, delta). The security target is eps = 1/|T|.
 */
struct SweepGrid {
    std::vector<std::uint64_t> tag_counts;
    std::vector<double> delta_fractions{1.0};
    std::vector<double> lambda_fractions{0.0};
    std::size_t d = 2;
    double message_bits = 64;
};

struct SweepRow {
    std::uint64_t tag_count = 0;
    double delta = 0.0;
    double lambda_max = 0.0;
    double n_real = 0.0;
    std::uint64_t n_ceil = 0;
    double p0 = 0.0;
    double key_bits_quantum = 0.0;
    double key_bits_classical_ref = 0.0;
    double delta_fraction = 0.0;
    double lambda_fraction = 0.0;
};

inline std::vector<SweepRow> sweep(const SweepGrid &grid) {
    for (double f : grid.delta_fractions) {
        if (!(f > 0.0 && f <= 1.0)) {
            throw ParameterError("delta fractions must lie in (0, 1]");
        }
    }
    for (double f : grid.lambda_fractions) {
        if (!(f >= 0.0 && f < 1.0)) {
            throw ParameterError("lambda fractions must lie in [0, 1)");
        }
    }
    std::vector<SweepRow> rows;
    for (double df : grid.delta_fractions) {
        for (double lf : grid.lambda_fractions) {
            for (auto t : grid.tag_counts) {
                SweepRow row;
                row.tag_count = t;
                row.delta_fraction = df;
                row.lambda_fraction = lf;
                row.delta = df / static_cast<double>(t);
                validate_target(t, row.delta);
                row.lambda_max = lf * feasibility_threshold(t, row.delta);
                const auto copies = copies_required(t, row.delta, row.lambda_max);
                row.n_real = copies.real;
                row.n_ceil = copies.ceiling;
                row.p0 = impersonation_with_symmetry_test(t, static_cast<double>(row.n_ceil), row.lambda_max);
                const auto bits = key_length_requirement(1.0 / static_cast<double>(t),
                                                         static_cast<double>(row.n_ceil), grid.d,
                                                         ClassicalComparator{static_cast<double>(t), grid.message_bits});
                row.key_bits_quantum = bits.required_key_bits;
                row.key_bits_classical_ref = *bits.classical_reference_bits;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

/// Smallest |T| in each (delta, lambda) series where the quantum key requirement exceeds the classical reference.
struct Crossover {
    double delta_fraction = 0.0;
    double lambda_fraction = 0.0;
    std::optional<std::uint64_t> first_tag_count;
};

inline std::vector<Crossover> crossovers(const std::vector<SweepRow> &rows) {
    std::vector<Crossover> out;
    for (const auto &row : rows) {
        auto it = std::find_if(out.begin(), out.end(), [&](const Crossover &c) {
            return c.delta_fraction == row.delta_fraction && c.lambda_fraction == row.lambda_fraction;
        });
        if (it == out.end()) {
            out.push_back({row.delta_fraction, row.lambda_fraction, std::nullopt});
            it = std::prev(out.end());
        }
        if (row.key_bits_quantum > row.key_bits_classical_ref &&
            (!it->first_tag_count || row.tag_count < *it->first_tag_count)) {
            it->first_tag_count = row.tag_count;
        }
    }
    return out;
}

inline void write_csv(std::ostream &os, const std::vector<SweepRow> &rows) {
    os << "T_size,delta,lambda_max,n_real,n_ceil,P0,key_bits_quantum,key_bits_classical_ref\n";
    for (const auto &r : rows) {
        os << r.tag_count << ',' << format_real(r.delta) << ',' << format_real(r.lambda_max) << ','
           << format_real(r.n_real) << ',' << r.n_ceil << ',' << format_real(r.p0) << ','
           << format_real(r.key_bits_quantum) << ',' << format_real(r.key_bits_classical_ref) << '\n';
    }
}

} // namespace qauth::symmetry
