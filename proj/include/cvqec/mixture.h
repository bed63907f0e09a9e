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

#ifndef CVQEC_MIXTURE_H
#define CVQEC_MIXTURE_H

#include <vector>

#include "cvqec/error_model.h"
#include "cvqec/gaussian_state.h"
#include "cvqec/qec_code.h"
#include "json.hpp"

namespace cvqec {

struct MixtureComponent {
    double weight = 0;
    GaussianState state;
};

/// Finite weighted sum of Gaussian states.
struct MixtureState {
    std::vector<MixtureComponent> components;

    /// Throws std::invalid_argument unless weights are non-negative and sum to 1 within 1e-12.
    void validate() const;
    /// Merges components whose means and covariances agree within tol.
    MixtureState collapsed(double tol = 1e-9) const;
    std::size_t size() const { return components.size(); }
};

struct MixtureOptions {
    /// Phase bins used for the uniform-phase law.
    std::size_t phase_bins = 360;
    /// Gauss-Hermite nodes used for the Gaussian laws.
    std::size_t gaussian_nodes = 48;
};

/// Single output mode after a full round: weight 1-gamma on the error-free corrected output plus
/// gamma spread over the error branches. Each branch is classified in closed form (with the Fourier
/// rerun) and corrected, so misclassified branches keep their residual displacement.
MixtureState mixture_output(const ErrorConfig &error_config, const CodeConfig &code_config,
                            const MixtureOptions &options = {});
/// Same, with the error forced onto one channel.
MixtureState mixture_output(const ErrorConfig &error_config, const CodeConfig &code_config, int error_channel,
                            const MixtureOptions &options = {});

struct MixtureMoments {
    Eigen::Vector2d mean;
    Eigen::Matrix2d cov;
};

/// Law of total variance. Throws std::invalid_argument for unnormalized weights.
MixtureMoments mixture_moments(const MixtureState &mixture);
/// Fourth cumulant of one quadrature; zero for a single Gaussian.
double mixture_fourth_cumulant(const MixtureState &mixture, Quadrature q);

/// Probabilists' Gauss-Hermite rule: nodes and weights (summing to 1) for N(0, 1).
std::pair<std::vector<double>, std::vector<double>> gauss_hermite(std::size_t n);

nlohmann::json to_json(const MixtureState &mixture);

}  // namespace cvqec

#endif
