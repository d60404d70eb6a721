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
 * Unconditionally secure classical MACs built from finite keyed hash
 * families, with exact brute-force deception probabilities.
 *
 * Keys, messages and tags are all represented by dense indices. For the
 * prime-field families a key (a, b) has index a * p + b and a block message
 * (m_1, ..., m_l) has index m_1 + m_2 p + ... + m_l p^(l-1).
 */

#pragma once

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "errors.hpp"

namespace qauth::classical {

using Rational = boost::rational<std::int64_t>;

/// Largest |K| * |M| that the brute-force analyses will enumerate.
inline constexpr std::uint64_t kMaxEnumeration = std::uint64_t{1} << 24;
/// Largest field size / message space accepted by the prime-field constructors.
inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 20;

enum class FamilyKind { StronglyUniversal, EpsilonASU, Custom };

inline std::string to_string(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::StronglyUniversal:
        return "strongly_universal";
    case FamilyKind::EpsilonASU:
        return "epsilon_asu";
    case FamilyKind::Custom:
        return "custom";
    }
    return "unknown";
}

/**
 * A finite keyed function family h : K x M -> T.
 *
 * The evaluator must be total over the index ranges; evaluate() checks the
 * arguments and the returned tag.
 */
class HashFamily {
  public:
    using Evaluator = std::function<std::uint64_t(std::uint64_t key, std::uint64_t message)>;

    HashFamily(std::string name, std::uint64_t key_count, std::uint64_t message_count,
               std::uint64_t tag_count, Evaluator evaluator,
               FamilyKind kind = FamilyKind::Custom, Rational epsilon = Rational{1})
        : name_(std::move(name)), key_count_(key_count), message_count_(message_count),
          tag_count_(tag_count), evaluator_(std::move(evaluator)), kind_(kind),
          epsilon_(epsilon) {
        if (key_count_ == 0 || tag_count_ == 0) {
            throw ParameterError("hash family needs at least one key and one tag");
        }
        if (message_count_ < 2) {
            throw ParameterError("hash family needs |M| > 1");
        }
        if (!evaluator_) {
            throw ParameterError("hash family evaluator is empty");
        }
    }

    [[nodiscard]] const std::string &name() const { return name_; }
    [[nodiscard]] std::uint64_t key_count() const { return key_count_; }
    [[nodiscard]] std::uint64_t message_count() const { return message_count_; }
    [[nodiscard]] std::uint64_t tag_count() const { return tag_count_; }
    [[nodiscard]] FamilyKind kind() const { return kind_; }
    /// Advertised substitution bound; 1/|T| for strongly universal families.
    [[nodiscard]] Rational epsilon() const { return epsilon_; }

    [[nodiscard]] std::uint64_t evaluate(std::uint64_t key, std::uint64_t message) const {
        if (key >= key_count_) {
            throw ParameterError("key index " + std::to_string(key) + " out of range (|K| = " +
                                 std::to_string(key_count_) + ")");
        }
        if (message >= message_count_) {
            throw ParameterError("message index " + std::to_string(message) +
                                 " out of range (|M| = " + std::to_string(message_count_) + ")");
        }
        const auto t = evaluator_(key, message);
        if (t >= tag_count_) {
            throw InvariantError("family '" + name_ + "' produced tag " + std::to_string(t) +
                                 " outside T (|T| = " + std::to_string(tag_count_) + ")");
        }
        return t;
    }

  private:
    std::string name_;
    std::uint64_t key_count_;
    std::uint64_t message_count_;
    std::uint64_t tag_count_;
    Evaluator evaluator_;
    FamilyKind kind_;
    Rational epsilon_;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            return false;
        }
    }
    return true;
}

/// Key index of the prime-field key (a, b).
inline std::uint64_t field_key(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    if (a >= p || b >= p) {
        throw ParameterError("field key component out of range");
    }
    return a * p + b;
}

/// Message index of the block message (m_1, ..., m_l) over Z_p.
inline std::uint64_t encode_blocks(const std::vector<std::uint64_t> &blocks, std::uint64_t p) {
    std::uint64_t index = 0;
    std::uint64_t weight = 1;
    for (auto m : blocks) {
        if (m >= p) {
            throw ParameterError("message block out of range");
        }
        index += m * weight;
        weight *= p;
    }
    return index;
}

inline std::vector<std::uint64_t> decode_blocks(std::uint64_t index, std::uint64_t p,
                                                std::size_t block_count) {
    std::vector<std::uint64_t> blocks(block_count);
    for (auto &m : blocks) {
        m = index % p;
        index /= p;
    }
    return blocks;
}

/// h_(a,b)(m) = a m + b mod p. Strongly universal.
inline HashFamily make_affine_family(std::uint64_t p) {
    if (!is_prime(p) || p > kMaxFieldSize) {
        throw ParameterError("affine family modulus must be a prime in [2, 2^20], got " +
                             std::to_string(p));
    }
    return HashFamily(
        "affine-p" + std::to_string(p), p * p, p, p,
        [p](std::uint64_t key, std::uint64_t m) {
            const auto a = key / p;
            const auto b = key % p;
            return (a * m + b) % p;
        },
        FamilyKind::StronglyUniversal, Rational(1, static_cast<std::int64_t>(p)));
}

/// h_(a,b)(m) = b + sum_i m_i a^i mod p. (l/p)-almost strongly universal.
inline HashFamily make_poly_family(std::uint64_t p, std::size_t block_count) {
    if (!is_prime(p) || p > kMaxFieldSize) {
        throw ParameterError("polynomial family modulus must be a prime in [2, 2^20], got " +
                             std::to_string(p));
    }
    if (block_count == 0) {
        throw ParameterError("polynomial family needs at least one block");
    }
    std::uint64_t message_count = 1;
    for (std::size_t i = 0; i < block_count; ++i) {
        message_count *= p;
        if (message_count > kMaxFieldSize) {
            throw ParameterError("p^l exceeds the 2^20 enumeration cap");
        }
    }
    const auto eps = Rational(static_cast<std::int64_t>(block_count), static_cast<std::int64_t>(p));
    const auto kind = block_count == 1 ? FamilyKind::StronglyUniversal : FamilyKind::EpsilonASU;
    return HashFamily(
        "poly-p" + std::to_string(p) + "-l" + std::to_string(block_count), p * p, message_count,
        p,
        [p, block_count](std::uint64_t key, std::uint64_t m) {
            const auto a = key / p;
            std::uint64_t acc = key % p;
            std::uint64_t power = a;
            for (std::size_t i = 0; i < block_count; ++i) {
                acc = (acc + (m % p) * power) % p;
                m /= p;
                power = (power * a) % p;
            }
            return acc;
        },
        kind, eps);
}

/// Family given by an explicit |K| x |M| tag table.
inline HashFamily make_table_family(std::string name, std::vector<std::vector<std::uint64_t>> table,
                                    std::uint64_t tag_count) {
    if (table.empty()) {
        throw ParameterError("tag table has no keys");
    }
    const auto message_count = table.front().size();
    for (const auto &row : table) {
        if (row.size() != message_count) {
            throw ParameterError("tag table rows must all have |M| entries");
        }
    }
    const auto key_count = table.size();
    return HashFamily(
        std::move(name), key_count, message_count, tag_count,
        [table = std::move(table)](std::uint64_t key, std::uint64_t m) { return table[key][m]; });
}

inline std::uint64_t tag(const HashFamily &family, std::uint64_t key, std::uint64_t message) {
    return family.evaluate(key, message);
}

inline bool verify(const HashFamily &family, std::uint64_t key, std::uint64_t message,
                   std::uint64_t t) {
    if (t >= family.tag_count()) {
        throw ParameterError("tag " + std::to_string(t) + " out of range");
    }
    return family.evaluate(key, message) == t;
}

struct MessageTag {
    std::uint64_t message = 0;
    std::uint64_t tag = 0;

    friend bool operator==(const MessageTag &, const MessageTag &) = default;
};

struct DeceptionReport {
    Rational p0;
    Rational p1;
    MessageTag argmax_impersonation;
    MessageTag substitution_observed;
    MessageTag substitution_forged;
};

namespace detail {

inline void require_enumerable(const HashFamily &family) {
    if (family.key_count() > kMaxEnumeration / family.message_count()) {
        throw ParameterError("family '" + family.name() + "' too large to enumerate (|K||M| > 2^24)");
    }
}

/// tags[k * |M| + m] = h(k, m)
inline std::vector<std::uint32_t> tabulate(const HashFamily &family) {
    require_enumerable(family);
    const auto nk = family.key_count();
    const auto nm = family.message_count();
    std::vector<std::uint32_t> tags(nk * nm);
    for (std::uint64_t k = 0; k < nk; ++k) {
        for (std::uint64_t m = 0; m < nm; ++m) {
            tags[k * nm + m] = static_cast<std::uint32_t>(family.evaluate(k, m));
        }
    }
    return tags;
}

inline bool greater(std::uint64_t num_a, std::uint64_t den_a, std::uint64_t num_b,
                    std::uint64_t den_b) {
    // counts are bounded by 2^24, so the cross products fit
    return num_a * den_b > num_b * den_a;
}

} // namespace detail

/**
 * Exact impersonation (P0) and substitution (P1) deception probabilities.
 *
 * P0 = max_(m,t) Pr_k[h(k,m) = t].
 * P1 = max over observed (m,t) with nonzero key support and forged (m' != m, t')
 *      of Pr_k[h(k,m') = t' | h(k,m) = t].
 * Ties go to the first maximizer in (m, t, m', t') lexicographic order.
 */
inline DeceptionReport deception_probabilities(const HashFamily &family) {
    const auto tags = detail::tabulate(family);
    const auto nk = family.key_count();
    const auto nm = family.message_count();
    const auto nt = family.tag_count();

    DeceptionReport report;

    // support[m * nt + t] = |{k : h(k,m) = t}|
    std::vector<std::uint64_t> support(nm * nt, 0);
    for (std::uint64_t k = 0; k < nk; ++k) {
        for (std::uint64_t m = 0; m < nm; ++m) {
            ++support[m * nt + tags[k * nm + m]];
        }
    }
    std::uint64_t best0 = 0;
    for (std::uint64_t m = 0; m < nm; ++m) {
        for (std::uint64_t t = 0; t < nt; ++t) {
            if (support[m * nt + t] > best0) {
                best0 = support[m * nt + t];
                report.argmax_impersonation = {m, t};
            }
        }
    }
    report.p0 = Rational(static_cast<std::int64_t>(best0), static_cast<std::int64_t>(nk));

    std::uint64_t best_num = 0;
    std::uint64_t best_den = 1;
    bool found = false;
    auto lex_before = [](const MessageTag &o, const MessageTag &f, const MessageTag &bo,
                         const MessageTag &bf) {
        return std::tie(o.message, o.tag, f.message, f.tag) <
               std::tie(bo.message, bo.tag, bf.message, bf.tag);
    };
    std::vector<std::uint64_t> joint(nt * nt);
    for (std::uint64_t m = 0; m < nm; ++m) {
        for (std::uint64_t m2 = 0; m2 < nm; ++m2) {
            if (m2 == m) {
                continue;
            }
            std::fill(joint.begin(), joint.end(), 0);
            for (std::uint64_t k = 0; k < nk; ++k) {
                ++joint[tags[k * nm + m] * nt + tags[k * nm + m2]];
            }
            for (std::uint64_t t = 0; t < nt; ++t) {
                const auto den = support[m * nt + t];
                if (den == 0) {
                    continue;
                }
                for (std::uint64_t t2 = 0; t2 < nt; ++t2) {
                    const auto num = joint[t * nt + t2];
                    const MessageTag observed{m, t};
                    const MessageTag forged{m2, t2};
                    const bool better = !found || detail::greater(num, den, best_num, best_den);
                    const bool tie = found && num * best_den == best_num * den &&
                                     lex_before(observed, forged, report.substitution_observed,
                                                report.substitution_forged);
                    if (better || tie) {
                        found = true;
                        best_num = num;
                        best_den = den;
                        report.substitution_observed = observed;
                        report.substitution_forged = forged;
                    }
                }
            }
        }
    }
    report.p1 = Rational(static_cast<std::int64_t>(best_num), static_cast<std::int64_t>(best_den));
    return report;
}

/**
 * Exhaustive check of the strongly-universal counting property:
 * |{k : h(k,m) = t and h(k,m') = t'}| = |K| / |T|^2 for all m != m' and all (t, t').
 * Returns a description of the first violating cell, or nullopt.
 */
inline std::optional<std::string> find_strongly_universal_violation(const HashFamily &family) {
    const auto tags = detail::tabulate(family);
    const auto nk = family.key_count();
    const auto nm = family.message_count();
    const auto nt = family.tag_count();
    if (nk % (nt * nt) != 0) {
        return "|K| = " + std::to_string(nk) + " is not a multiple of |T|^2";
    }
    const auto expected = nk / (nt * nt);
    std::vector<std::uint64_t> joint(nt * nt);
    for (std::uint64_t m = 0; m < nm; ++m) {
        for (std::uint64_t m2 = 0; m2 < nm; ++m2) {
            if (m2 == m) {
                continue;
            }
            std::fill(joint.begin(), joint.end(), 0);
            for (std::uint64_t k = 0; k < nk; ++k) {
                ++joint[tags[k * nm + m] * nt + tags[k * nm + m2]];
            }
            for (std::uint64_t cell = 0; cell < joint.size(); ++cell) {
                if (joint[cell] != expected) {
                    std::ostringstream os;
                    os << "messages (" << m << ", " << m2 << ") tags (" << cell / nt << ", "
                       << cell % nt << "): " << joint[cell] << " keys, expected " << expected;
                    return os.str();
                }
            }
        }
    }
    return std::nullopt;
}

/// Minimum key length (l + 1) |log2 eps| for an l-time eps-secure MAC.
inline double key_length_lower_bound(std::uint64_t l, Rational epsilon) {
    if (epsilon <= Rational{0} || epsilon > Rational{1}) {
        throw ParameterError("epsilon must lie in (0, 1]");
    }
    const double log2_eps = std::log2(static_cast<double>(epsilon.numerator())) -
                            std::log2(static_cast<double>(epsilon.denominator()));
    return static_cast<double>(l + 1) * std::abs(log2_eps);
}

/// log2 |K| of a family.
inline double key_bits(const HashFamily &family) {
    return std::log2(static_cast<double>(family.key_count()));
}

/// Key length 4 log2|T| log2 log2|M| of the Wegman-Carter tree construction.
/// Reported for comparison only; the construction itself is not built.
inline double wegman_carter_reference_bits(double tag_count, double message_bits) {
    if (tag_count < 2 || message_bits < 2) {
        throw ParameterError("Wegman-Carter reference needs |T| >= 2 and log2|M| >= 2");
    }
    return 4.0 * std::log2(tag_count) * std::log2(message_bits);
}

inline std::string to_string(Rational r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace qauth::classical
