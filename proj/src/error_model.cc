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

#include "cvqec/error_model.h"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace cvqec {

std::string to_string(DisplacementLaw law) {
    switch (law) {
        case DisplacementLaw::General:
            return "general";
        case DisplacementLaw::XSign:
            return "x-sign";
        case DisplacementLaw::XGaussian:
            return "x-gaussian";
        case DisplacementLaw::PSign:
            return "p-sign";
        case DisplacementLaw::PGaussian:
            return "p-gaussian";
    }
    return "?";
}

DisplacementLaw displacement_law_from_string(const std::string &name) {
    for (auto law : {DisplacementLaw::General, DisplacementLaw::XSign, DisplacementLaw::XGaussian,
                     DisplacementLaw::PSign, DisplacementLaw::PGaussian}) {
        if (to_string(law) == name) {
            return law;
        }
    }
    throw std::invalid_argument("unknown displacement law '" + name + "'");
}

void ErrorConfig::validate() const {
    if (!(gamma >= 0 && gamma <= 1)) {
        throw std::invalid_argument("error gamma must lie in [0, 1]");
    }
    if (!(amplitude >= 0)) {
        throw std::invalid_argument("error amplitude must be non-negative");
    }
    if (channel && (*channel < 1 || *channel > 5)) {
        throw std::invalid_argument("error channel must be in 1..5");
    }
}

ErrorEvent ErrorEvent::on(int channel, double dx, double dp) {
    if (channel < 1 || channel > 5) {
        throw std::invalid_argument("error channel must be in 1..5");
    }
    return ErrorEvent{true, channel, dx, dp};
}

ErrorEvent sample_error(const ErrorConfig &config, Rng &rng) {
    config.validate();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (!(unit(rng) < config.gamma)) {
        return ErrorEvent::none();
    }
    int channel = config.channel ? *config.channel : std::uniform_int_distribution<int>(1, 5)(rng);
    double a = config.amplitude;
    double dx = 0;
    double dp = 0;
    switch (config.law) {
        case DisplacementLaw::General: {
            double phase = 2 * std::numbers::pi * unit(rng);
            dx = a * std::cos(phase);
            dp = a * std::sin(phase);
            break;
        }
        case DisplacementLaw::XSign:
            dx = unit(rng) < 0.5 ? a : -a;
            break;
        case DisplacementLaw::PSign:
            dp = unit(rng) < 0.5 ? a : -a;
            break;
        case DisplacementLaw::XGaussian:
            dx = a * std::normal_distribution<double>()(rng);
            break;
        case DisplacementLaw::PGaussian:
            dp = a * std::normal_distribution<double>()(rng);
            break;
    }
    return ErrorEvent{true, channel, dx, dp};
}

nlohmann::json to_json(const ErrorConfig &config) {
    nlohmann::json doc = {
        {"gamma", config.gamma},
        {"law", to_string(config.law)},
        {"amplitude", config.amplitude},
    };
    if (config.channel) {
        doc["channel"] = *config.channel;
    } else {
        doc["channel"] = "uniform";
    }
    return doc;
}

ErrorConfig error_config_from_json(const nlohmann::json &doc) {
    static const std::set<std::string> allowed = {"gamma", "channel", "law", "amplitude"};
    if (!doc.is_object()) {
        throw std::invalid_argument("error config must be a JSON object");
    }
    for (const auto &[key, value] : doc.items()) {
        if (!allowed.count(key)) {
            throw std::invalid_argument("unknown error config key '" + key + "'");
        }
    }
    ErrorConfig config;
    config.gamma = doc.value("gamma", config.gamma);
    config.amplitude = doc.value("amplitude", config.amplitude);
    if (doc.contains("law")) {
        config.law = displacement_law_from_string(doc.at("law").get<std::string>());
    }
    if (doc.contains("channel")) {
        const auto &c = doc.at("channel");
        if (c.is_string()) {
            if (c.get<std::string>() != "uniform") {
                throw std::invalid_argument("error channel must be 1..5 or \"uniform\"");
            }
            config.channel.reset();
        } else {
            config.channel = c.get<int>();
        }
    }
    config.validate();
    return config;
}

nlohmann::json to_json(const ErrorEvent &event) {
    return {{"occurred", event.occurred}, {"channel", event.channel}, {"dx", event.dx}, {"dp", event.dp}};
}

}  // namespace cvqec
