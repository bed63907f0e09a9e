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

#include "cvqec/mixture.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cvqec {

namespace {

constexpr double kWeightTolerance = 1e-12;

void add_branch(MixtureState &mixture, const CodePipeline &pipeline, double weight, const ErrorEvent &event) {
    if (weight <= 0) {
        return;
    }
    mixture.components.push_back({weight, pipeline.corrected_state(std::span<const ErrorEvent>(&event, 1))});
}

void add_channel_branches(MixtureState &mixture, const CodePipeline &pipeline, const ErrorConfig &config,
                          int channel, double weight, const MixtureOptions &options) {
    double a = config.amplitude;
    switch (config.law) {
        case DisplacementLaw::General: {
            if (options.phase_bins == 0) {
                throw std::invalid_argument("phase_bins must be positive");
            }
            double w = weight / static_cast<double>(options.phase_bins);
            for (std::size_t b = 0; b < options.phase_bins; b++) {
                double phase = 2 * std::numbers::pi * (static_cast<double>(b) + 0.5) /
                               static_cast<double>(options.phase_bins);
                add_branch(mixture, pipeline, w, ErrorEvent::on(channel, a * std::cos(phase), a * std::sin(phase)));
            }
            break;
        }
        case DisplacementLaw::XSign:
        case DisplacementLaw::PSign: {
            bool on_x = config.law == DisplacementLaw::XSign;
            for (double s : {1.0, -1.0}) {
                add_branch(mixture, pipeline, weight / 2,
                           ErrorEvent::on(channel, on_x ? s * a : 0.0, on_x ? 0.0 : s * a));
            }
            break;
        }
        case DisplacementLaw::XGaussian:
        case DisplacementLaw::PGaussian: {
            bool on_x = config.law == DisplacementLaw::XGaussian;
            auto [nodes, weights] = gauss_hermite(options.gaussian_nodes);
            for (std::size_t i = 0; i < nodes.size(); i++) {
                double d = a * nodes[i];
                add_branch(mixture, pipeline, weight * weights[i],
                           ErrorEvent::on(channel, on_x ? d : 0.0, on_x ? 0.0 : d));
            }
            break;
        }
    }
}

bool close(const GaussianState &a, const GaussianState &b, double tol) {
    double scale = std::max({1.0, a.cov().cwiseAbs().maxCoeff(), a.mean().cwiseAbs().maxCoeff()});
    return (a.mean() - b.mean()).cwiseAbs().maxCoeff() <= tol * scale &&
           (a.cov() - b.cov()).cwiseAbs().maxCoeff() <= tol * scale;
}

}  // namespace

void MixtureState::validate() const {
    if (components.empty()) {
        throw std::invalid_argument("mixture has no components");
    }
    double total = 0;
    for (const auto &c : components) {
        if (!(c.weight >= 0)) {
            throw std::invalid_argument("mixture weights must be non-negative");
        }
        total += c.weight;
    }
    if (std::abs(total - 1) > kWeightTolerance) {
        throw std::invalid_argument("mixture weights must sum to 1");
    }
}

MixtureState MixtureState::collapsed(double tol) const {
    MixtureState out;
    for (const auto &c : components) {
        bool merged = false;
        for (auto &existing : out.components) {
            if (close(existing.state, c.state, tol)) {
                existing.weight += c.weight;
                merged = true;
                break;
            }
        }
        if (!merged) {
            out.components.push_back(c);
        }
    }
    return out;
}

std::pair<std::vector<double>, std::vector<double>> gauss_hermite(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("Gauss-Hermite rule needs at least one node");
    }
    // Golub-Welsch on the Jacobi matrix of the monic probabilists' Hermite polynomials.
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t k = 1; k < n; k++) {
        jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    std::vector<double> nodes(n);
    std::vector<double> weights(n);
    double total = 0;
    for (std::size_t i = 0; i < n; i++) {
        nodes[i] = solver.eigenvalues()(i);
        weights[i] = solver.eigenvectors()(0, i) * solver.eigenvectors()(0, i);
        total += weights[i];
    }
    for (auto &w : weights) {
        w /= total;
    }
    return {nodes, weights};
}

MixtureState mixture_output(const ErrorConfig &error_config, const CodeConfig &code_config,
                            const MixtureOptions &options) {
    error_config.validate();
    CodePipeline pipeline(code_config);
    MixtureState mixture;
    double gamma = error_config.gamma;
    if (gamma < 1) {
        mixture.components.push_back({1 - gamma, pipeline.corrected_state({})});
    }
    if (error_config.channel) {
        add_channel_branches(mixture, pipeline, error_config, *error_config.channel, gamma, options);
    } else {
        for (int k = 1; k <= static_cast<int>(kNumChannels); k++) {
            add_channel_branches(mixture, pipeline, error_config, k, gamma / kNumChannels, options);
        }
    }
    if (mixture.components.empty()) {
        // Only possible for gamma = 1 with every branch weight rounded away.
        throw std::logic_error("empty mixture");
    }
    return mixture;
}

MixtureState mixture_output(const ErrorConfig &error_config, const CodeConfig &code_config, int error_channel,
                            const MixtureOptions &options) {
    ErrorConfig fixed = error_config;
    fixed.channel = error_channel;
    return mixture_output(fixed, code_config, options);
}

MixtureMoments mixture_moments(const MixtureState &mixture) {
    mixture.validate();
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    for (const auto &c : mixture.components) {
        mean += c.weight * c.state.mean();
    }
    Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
    for (const auto &c : mixture.components) {
        Eigen::Vector2d d = c.state.mean() - mean;
        cov += c.weight * (c.state.cov() + d * d.transpose());
    }
    return {mean, cov};
}

double mixture_fourth_cumulant(const MixtureState &mixture, Quadrature q) {
    MixtureMoments m = mixture_moments(mixture);
    int i = q == Quadrature::X ? 0 : 1;
    double mu = m.mean(i);
    double var = m.cov(i, i);
    double fourth = 0;
    for (const auto &c : mixture.components) {
        double d = c.state.mean()(i) - mu;
        double v = c.state.cov()(i, i);
        fourth += c.weight * (d * d * d * d + 6 * d * d * v + 3 * v * v);
    }
    return fourth - 3 * var * var;
}

nlohmann::json to_json(const MixtureState &mixture) {
    nlohmann::json components = nlohmann::json::array();
    for (const auto &c : mixture.components) {
        components.push_back({
            {"weight", c.weight},
            {"mean", {c.state.mean()(0), c.state.mean()(1)}},
            {"cov", {{c.state.cov()(0, 0), c.state.cov()(0, 1)}, {c.state.cov()(1, 0), c.state.cov()(1, 1)}}},
        });
    }
    return {{"components", components}};
}

}  // namespace cvqec
