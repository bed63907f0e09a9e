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

#ifndef CVQEC_EXPERIMENTS_H
#define CVQEC_EXPERIMENTS_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cvqec/error_model.h"
#include "cvqec/mixture.h"
#include "cvqec/qec_code.h"
#include "cvqec/table.h"
#include "json.hpp"

namespace cvqec {

enum class Experiment { Table2, TableC1, SyndromeDemo, Spectra, Witness, McSweep };

std::string to_string(Experiment experiment);
Experiment experiment_from_string(const std::string &name);
std::vector<std::string> experiment_names();

/// Swept parameter: "r", "squeezing_db", "gamma", "amplitude", "eta" (channel efficiency) or
/// "detection_eta".
struct SweepSpec {
    std::string parameter = "r";
    std::vector<double> values{0, 0.4, 1, 2};
};

struct ExperimentConfig {
    Experiment experiment = Experiment::Table2;
    CodeConfig code;
    ErrorConfig error;
    std::uint64_t trials = 20000;
    std::uint64_t seed = 0;
    std::optional<SweepSpec> sweep;
    std::vector<double> witness_r{0, 0.2, 0.4, 0.8, 1.6};
    /// Windowed rounds per sweep point used for the classification accuracy.
    std::uint64_t classification_rounds = 200;
    MixtureOptions mixture;
    std::filesystem::path out_dir = ".";

    void validate() const;
};

/// Keys: code, error, trials, seed, sweep {parameter, values}, witness_r, classification_rounds,
/// mixture {phase_bins, gaussian_nodes}. Unknown keys are rejected.
ExperimentConfig experiment_config_from_json(const nlohmann::json &doc, Experiment experiment);
nlohmann::json to_json(const ExperimentConfig &config);

/// Tag attached to every measured reference value.
inline constexpr const char *kMeasuredSource = "measured(paper)";

/// Reference fidelities for channels 1..5, indexed [squeezed input][squeezed ancilla].
const std::array<std::array<std::array<double, 5>, 2>, 2> &reference_fidelities();

struct NoiseReference {
    double db = 0;
    double error = 0;
};
/// Measured output noise in dB, indexed [squeezed input][squeezed ancilla][channel - 1][quadrature].
/// Channels 1 and 2 have no entry with squeezed ancillas.
std::optional<NoiseReference> reference_noise(bool squeezed_input, bool squeezed_ancilla, int channel, Quadrature q);

/// Ancilla squeezing level used by the table experiments for the "squeezed" column.
inline constexpr double kTableSqueezingDb = -3.5;

struct ExperimentOutput {
    std::vector<std::filesystem::path> files;
    Table table;
};

ExperimentOutput run_table2(const ExperimentConfig &config);
ExperimentOutput run_tableC1(const ExperimentConfig &config);
ExperimentOutput run_syndrome_demo(const ExperimentConfig &config);
ExperimentOutput run_spectra(const ExperimentConfig &config);
ExperimentOutput run_witness(const ExperimentConfig &config);
ExperimentOutput run_mc_sweep(const ExperimentConfig &config);
ExperimentOutput run_experiment(const ExperimentConfig &config);

}  // namespace cvqec

#endif
