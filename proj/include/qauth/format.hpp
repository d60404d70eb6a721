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
 * Stable text rendering of reals for reports.
 */

#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace qauth {

inline constexpr int kReportDigits = 12;

/// %.12g rendering; -0 prints as 0.
inline std::string format_real(double x) {
    if (x == 0.0) {
        x = 0.0;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", kReportDigits, x);
    return buf;
}

/// x rounded to 12 significant digits.
inline double round_to_report(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    return std::stod(format_real(x));
}

} // namespace qauth
