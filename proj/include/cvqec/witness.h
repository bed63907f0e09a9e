// Copyright 2026 The cvqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVQEC_WITNESS_H
#define CVQEC_WITNESS_H

#include <array>
#include <string>
#include <vector>

#include "cvqec/linear_form.h"
#include "cvqec/qec_code.h"
#include "json.hpp"

namespace cvqec {

/// Right-hand side of every combination. Variances are in the convention where the vacuum has 1/4,
/// and the separable bound of each combination equals 4 * (1/4).
inline constexpr double kWitnessBound = 1.0;
/// Values within this distance of the bound count as not violating it.
inline constexpr double kWitnessTolerance = 1e-12;

using WitnessGains = std::array<double, 6>;

/// Var(base + g * slope), with g = gains[gain - 1] when gain > 0.
struct WitnessTerm {
    LinearForm base;
    LinearForm slope;
    int gain = 0;
};

/// The two terms of combination idx (1..4), built from the encoded carrier forms.
std::array<WitnessTerm, 2> witness_terms(int idx, const std::array<ModeForms, kNumChannels> &carriers);

/// Throws std::invalid_argument for idx outside 1..4 or a non-vacuum input.
double combination_value(int idx, const WitnessGains &gains, const CodeConfig &config);

struct GainOptimum {
    WitnessGains gains{};
    /// Gains whose quadratic coefficient vanished and were set to 0.
    std::vector<int> degenerate;
};

/// Vertex of each gain's parabola.
GainOptimum optimize_gains(const CodeConfig &config);

struct WitnessResult {
    std::array<double, 4> values{};
    WitnessGains gains{};
    std::array<bool, 4> satisfied{};
    std::vector<int> degenerate;

    bool all_satisfied() const { return satisfied[0] && satisfied[1] && satisfied[2] && satisfied[3]; }
};

WitnessResult evaluate_witness(const CodeConfig &config);

nlohmann::json to_json(const WitnessResult &result);

}  // namespace cvqec

#endif
