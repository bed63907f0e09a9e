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

#ifndef CVQEC_ERROR_MODEL_H
#define CVQEC_ERROR_MODEL_H

#include <optional>
#include <string>

#include "cvqec/rng.h"
#include "json.hpp"

namespace cvqec {

enum class DisplacementLaw {
    General,    // fixed amplitude A, phase uniform on [0, 2pi)
    XSign,      // dx = +-A
    XGaussian,  // dx ~ N(0, A^2)
    PSign,      // dp = +-A
    PGaussian,  // dp ~ N(0, A^2)
};

std::string to_string(DisplacementLaw law);
DisplacementLaw displacement_law_from_string(const std::string &name);

/// Stochastic single-channel displacement error: with probability gamma one channel is hit.
struct ErrorConfig {
    double gamma = 1.0;
    /// Fixed channel 1..5, or nullopt for a uniformly chosen channel.
    std::optional<int> channel = 3;
    DisplacementLaw law = DisplacementLaw::General;
    double amplitude = 5.0;

    void validate() const;
};

struct ErrorEvent {
    bool occurred = false;
    int channel = 0;
    double dx = 0;
    double dp = 0;

    static ErrorEvent none() { return {}; }
    static ErrorEvent on(int channel, double dx, double dp);

    bool operator==(const ErrorEvent &) const = default;
};

ErrorEvent sample_error(const ErrorConfig &config, Rng &rng);

nlohmann::json to_json(const ErrorConfig &config);
ErrorConfig error_config_from_json(const nlohmann::json &doc);
nlohmann::json to_json(const ErrorEvent &event);

}  // namespace cvqec

#endif
