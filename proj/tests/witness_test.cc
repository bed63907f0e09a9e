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

#include <cmath>

#include <gtest/gtest.h>

using namespace cvqec;

TEST(witness, first_term_alone) {
    double r = squeezing_r_from_db(-3.5);
    auto terms = witness_terms(1, encode(CodeConfig::with_r(r)).forms);
    double v = form_variance(terms[0].base, VarianceModel::uniform(r));
    ASSERT_NEAR(v, 2 * 0.25 * std::pow(10, -0.35), 1e-12);
}

TEST(witness, unit_gain_without_squeezing_exceeds_bound) {
    WitnessGains gains{};
    gains[2] = 1;
    double v = combination_value(1, gains, CodeConfig::with_r(0));
    ASSERT_GT(v, 1);
    ASSERT_NEAR(v, 1.25, 1e-12);
}

TEST(witness, no_violation_without_squeezing) {
    WitnessResult w = evaluate_witness(CodeConfig::with_r(0));
    for (double v : w.values) {
        ASSERT_GE(v, 1 - 1e-12);
    }
    ASSERT_FALSE(w.all_satisfied());
}

TEST(witness, violation_at_experimental_squeezing) {
    WitnessResult w = evaluate_witness(CodeConfig::with_squeezing_db(-3.5));
    ASSERT_TRUE(w.all_satisfied());
    ASSERT_NEAR(w.values[0], 0.5393, 1e-4);
    ASSERT_NEAR(w.values[3], 0.8096, 1e-4);
}

TEST(witness, strong_squeezing_limit) {
    WitnessResult w = evaluate_witness(CodeConfig::with_r(8));
    for (double v : w.values) {
        ASSERT_LT(v, 1);
    }
    WitnessResult w9 = evaluate_witness(CodeConfig::with_r(9));
    for (int i = 0; i < 4; i++) {
        ASSERT_NEAR(w.values[i], w9.values[i], 1e-6);
    }
    ASSERT_LT(w.values[3], 0.76);
}

TEST(witness, optimized_gains_are_local_minima) {
    const int combination_of_gain[6] = {2, 3, 1, 2, 3, 4};
    for (double r : {0.1, 0.5, 1.3}) {
        CodeConfig cfg = CodeConfig::with_r(r);
        WitnessResult w = evaluate_witness(cfg);
        for (int g = 0; g < 6; g++) {
            for (double h : {1e-3, 1e-1, 1.0}) {
                for (double s : {-1.0, 1.0}) {
                    WitnessGains moved = w.gains;
                    moved[g] += s * h;
                    ASSERT_GT(combination_value(combination_of_gain[g], moved, cfg), w.values[combination_of_gain[g] - 1]);
                }
            }
        }
    }
}

TEST(witness, rejects_bad_arguments) {
    ASSERT_THROW(combination_value(0, {}, CodeConfig{}), std::invalid_argument);
    ASSERT_THROW(combination_value(5, {}, CodeConfig{}), std::invalid_argument);
    ASSERT_THROW(combination_value(1, {}, CodeConfig::with_r(0.2, InputSpec::phase_squeezed())),
                 std::invalid_argument);
}
