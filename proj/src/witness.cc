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

#include "cvqec/witness.h"

#include <stdexcept>

namespace cvqec {

namespace {

void check_vacuum(const CodeConfig &config) {
    if (config.input.kind != InputSpec::Kind::Vacuum) {
        throw std::invalid_argument("the inseparability witness is defined for a vacuum input");
    }
}

double term_value(const WitnessTerm &term, const WitnessGains &gains, const VarianceModel &model) {
    double value = form_variance(term.base, model);
    if (term.gain > 0) {
        double g = gains[term.gain - 1];
        value += 2 * g * form_covariance(term.base, term.slope, model) + g * g * form_variance(term.slope, model);
    }
    return value;
}

}  // namespace

std::array<WitnessTerm, 2> witness_terms(int idx, const std::array<ModeForms, kNumChannels> &c) {
    auto x = [&](int k) { return c[k - 1].x; };
    auto p = [&](int k) { return c[k - 1].p; };
    switch (idx) {
        case 1:
            return {WitnessTerm{x(1) + x(2), {}, 0}, WitnessTerm{p(2) - p(1), -p(3), 3}};
        case 2:
            return {WitnessTerm{p(2) - p(3), -p(1), 1}, WitnessTerm{x(3) + x(2), x(4), 4}};
        case 3:
            return {WitnessTerm{x(3) + x(4), x(2), 2}, WitnessTerm{p(4) - p(3), -p(5), 5}};
        case 4:
            return {WitnessTerm{p(4) - p(5), -p(3), 6}, WitnessTerm{x(4) + x(5), {}, 0}};
        default:
            throw std::invalid_argument("witness combination index must be in 1..4");
    }
}

double combination_value(int idx, const WitnessGains &gains, const CodeConfig &config) {
    if (idx < 1 || idx > 4) {
        throw std::invalid_argument("witness combination index must be in 1..4");
    }
    check_vacuum(config);
    auto terms = witness_terms(idx, encode(config).forms);
    VarianceModel model = config.variance_model();
    return (term_value(terms[0], gains, model) + term_value(terms[1], gains, model)) / kWitnessBound;
}

GainOptimum optimize_gains(const CodeConfig &config) {
    check_vacuum(config);
    auto carriers = encode(config).forms;
    VarianceModel model = config.variance_model();
    GainOptimum out;
    for (int idx = 1; idx <= 4; idx++) {
        for (const auto &term : witness_terms(idx, carriers)) {
            if (term.gain == 0) {
                continue;
            }
            double a = form_variance(term.slope, model);
            double b = 2 * form_covariance(term.base, term.slope, model);
            if (a <= 0) {
                out.gains[term.gain - 1] = 0;
                out.degenerate.push_back(term.gain);
                continue;
            }
            out.gains[term.gain - 1] = -b / (2 * a);
        }
    }
    return out;
}

WitnessResult evaluate_witness(const CodeConfig &config) {
    GainOptimum opt = optimize_gains(config);
    WitnessResult result;
    result.gains = opt.gains;
    result.degenerate = opt.degenerate;
    for (int idx = 1; idx <= 4; idx++) {
        result.values[idx - 1] = combination_value(idx, opt.gains, config);
        result.satisfied[idx - 1] = result.values[idx - 1] < kWitnessBound - kWitnessTolerance;
    }
    return result;
}

nlohmann::json to_json(const WitnessResult &result) {
    return {
        {"values", result.values},
        {"gains", {{"g1", result.gains[0]},
                   {"g2", result.gains[1]},
                   {"g3", result.gains[2]},
                   {"g4", result.gains[3]},
                   {"g5", result.gains[4]},
                   {"g6", result.gains[5]}}},
        {"satisfied", result.satisfied},
        {"degenerate_gains", result.degenerate},
        {"bound", kWitnessBound},
        {"variance_unit", "vacuum variance 1/4"},
    };
}

}  // namespace cvqec
