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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cvqec/acceptance.h"
#include "cvqec/experiments.h"
#include "json.hpp"

namespace {

int run(const std::string &name, const std::string &config_path, std::optional<std::uint64_t> seed,
        const std::string &out_dir) {
    using namespace cvqec;
    Experiment experiment = experiment_from_string(name);
    nlohmann::json doc = nlohmann::json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot open config '" << config_path << "'\n";
            return 2;
        }
        doc = nlohmann::json::parse(in);
    }
    ExperimentConfig config = experiment_config_from_json(doc, experiment);
    if (seed) {
        config.seed = *seed;
    }
    config.out_dir = out_dir;
    config.validate();
    ExperimentOutput output = run_experiment(config);
    for (const auto &file : output.files) {
        std::cout << file.string() << "\n";
    }
    return 0;
}

int verify(const std::vector<std::string> &only) {
    bool ok = true;
    for (const auto &result : cvqec::run_acceptance(only)) {
        std::cout << cvqec::format_result(result) << std::endl;
        ok = ok && result.passed;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Five-wave-packet continuous-variable error correction simulator"};
    app.require_subcommand(1);

    auto *run_cmd = app.add_subcommand("run", "Run an experiment and write CSV/JSON results");
    std::string experiment;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    std::vector<std::string> names = cvqec::experiment_names();
    run_cmd->add_option("experiment", experiment, "Experiment name")->required()->check(CLI::IsMember(names));
    run_cmd->add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
    run_cmd->add_option("--seed", seed, "Random seed (overrides the config)");
    run_cmd->add_option("--out", out_dir, "Output directory");

    auto *verify_cmd = app.add_subcommand("verify", "Run the acceptance suite");
    std::vector<std::string> only;
    verify_cmd->add_option("criteria", only, "Criteria to run (default: all)");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run_cmd) {
            return run(experiment, config_path, seed, out_dir);
        }
        return verify(only);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
