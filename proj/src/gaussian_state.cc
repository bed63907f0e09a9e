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

#include "cvqec/gaussian_state.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace cvqec {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kUncertaintyTol = 1e-9;

// Tolerances are relative to the largest covariance entry once that exceeds 1.
double tolerance_scale(const Eigen::MatrixXd &cov) {
    return std::max(1.0, cov.cwiseAbs().maxCoeff());
}

}  // namespace

Eigen::MatrixXd symplectic_form(std::size_t num_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * num_modes, 2 * num_modes);
    for (std::size_t k = 0; k < num_modes; k++) {
        omega(2 * k, 2 * k + 1) = 1;
        omega(2 * k + 1, 2 * k) = -1;
    }
    return omega;
}

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (mean_.size() == 0 || mean_.size() % 2 != 0) {
        throw std::invalid_argument("GaussianState: mean must have even, non-zero length");
    }
    if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
        throw std::invalid_argument("GaussianState: covariance shape does not match mean");
    }
    double scale = tolerance_scale(cov_);
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
        throw std::invalid_argument("GaussianState: covariance is not symmetric");
    }
    cov_ = 0.5 * (cov_ + cov_.transpose()).eval();

    Eigen::MatrixXcd hermitian = cov_.cast<std::complex<double>>();
    hermitian += std::complex<double>(0, 0.25) * symplectic_form(num_modes()).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
    double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -kUncertaintyTol * scale) {
        throw std::invalid_argument("GaussianState: covariance violates the uncertainty relation (min eigenvalue " +
                                    std::to_string(min_eig) + ")");
    }
}

GaussianState GaussianState::vacuum(std::size_t num_modes) {
    return GaussianState(Eigen::VectorXd::Zero(2 * num_modes),
                         kVacuumVariance * Eigen::MatrixXd::Identity(2 * num_modes, 2 * num_modes));
}

GaussianState GaussianState::product(std::span<const GaussianState> parts) {
    Eigen::Index dim = 0;
    for (const auto &part : parts) {
        dim += part.mean().size();
    }
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::Index offset = 0;
    for (const auto &part : parts) {
        Eigen::Index n = part.mean().size();
        mean.segment(offset, n) = part.mean();
        cov.block(offset, offset, n, n) = part.cov();
        offset += n;
    }
    return GaussianState(std::move(mean), std::move(cov));
}

GaussianState GaussianState::mode(std::size_t index) const {
    if (index >= num_modes()) {
        throw std::out_of_range("GaussianState::mode: index out of range");
    }
    return GaussianState(mean_.segment(2 * index, 2), cov_.block(2 * index, 2 * index, 2, 2));
}

GaussianState GaussianState::displaced(std::size_t mode, double dx, double dp) const {
    if (mode >= num_modes()) {
        throw std::out_of_range("GaussianState::displaced: mode out of range");
    }
    Eigen::VectorXd mean = mean_;
    mean(2 * mode) += dx;
    mean(2 * mode + 1) += dp;
    return GaussianState(std::move(mean), cov_);
}

bool GaussianState::is_pure(double tol) const {
    return std::abs((4.0 * cov_).determinant() - 1.0) <= tol;
}

SymplecticOp SymplecticOp::identity(std::size_t num_modes) {
    return SymplecticOp{Eigen::MatrixXd::Identity(2 * num_modes, 2 * num_modes), Eigen::VectorXd::Zero(2 * num_modes)};
}

SymplecticOp SymplecticOp::displacement(Eigen::VectorXd d) {
    Eigen::Index n = d.size();
    return SymplecticOp{Eigen::MatrixXd::Identity(n, n), std::move(d)};
}

SymplecticOp SymplecticOp::fourier(std::size_t num_modes, std::size_t mode) {
    if (mode >= num_modes) {
        throw std::out_of_range("SymplecticOp::fourier: mode out of range");
    }
    SymplecticOp op = identity(num_modes);
    op.S(2 * mode, 2 * mode) = 0;
    op.S(2 * mode, 2 * mode + 1) = -1;
    op.S(2 * mode + 1, 2 * mode) = 1;
    op.S(2 * mode + 1, 2 * mode + 1) = 0;
    return op;
}

bool SymplecticOp::is_symplectic(double tol) const {
    Eigen::MatrixXd omega = symplectic_form(num_modes());
    return (S * omega * S.transpose() - omega).cwiseAbs().maxCoeff() <= tol;
}

SymplecticOp SymplecticOp::after(const SymplecticOp &first) const {
    if (S.cols() != first.S.rows()) {
        throw std::invalid_argument("SymplecticOp::after: dimension mismatch");
    }
    return SymplecticOp{S * first.S, S * first.d + d};
}

double squeezing_r_from_db(double db) {
    return -db * std::log(10.0) / 20.0;
}

GaussianState squeezed_vacuum(double r, SqueezeAxis axis, double antisqueeze_excess) {
    if (r < 0) {
        throw std::invalid_argument("squeezed_vacuum: r must be non-negative");
    }
    if (antisqueeze_excess < 0) {
        throw std::invalid_argument("squeezed_vacuum: antisqueeze excess must be non-negative");
    }
    double squeezed = kVacuumVariance * std::exp(-2 * r);
    double anti = kVacuumVariance * std::exp(2 * r) * (1 + antisqueeze_excess);
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2, 2);
    cov(0, 0) = axis == SqueezeAxis::Amplitude ? squeezed : anti;
    cov(1, 1) = axis == SqueezeAxis::Amplitude ? anti : squeezed;
    return GaussianState(Eigen::VectorXd::Zero(2), std::move(cov));
}

GaussianState squeezed_from_db(double squeeze_db, double antisqueeze_db, SqueezeAxis axis) {
    double squeezed = db_to_variance(squeeze_db);
    double anti = db_to_variance(antisqueeze_db);
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2, 2);
    cov(0, 0) = axis == SqueezeAxis::Amplitude ? squeezed : anti;
    cov(1, 1) = axis == SqueezeAxis::Amplitude ? anti : squeezed;
    return GaussianState(Eigen::VectorXd::Zero(2), std::move(cov));
}

Eigen::MatrixXd lift_mode_matrix(const Eigen::MatrixXd &mode_matrix) {
    Eigen::Index n = mode_matrix.rows();
    Eigen::MatrixXd lifted = Eigen::MatrixXd::Zero(2 * n, 2 * mode_matrix.cols());
    for (Eigen::Index i = 0; i < n; i++) {
        for (Eigen::Index j = 0; j < mode_matrix.cols(); j++) {
            lifted(2 * i, 2 * j) = mode_matrix(i, j);
            lifted(2 * i + 1, 2 * j + 1) = mode_matrix(i, j);
        }
    }
    return lifted;
}

SymplecticOp beamsplitter_symplectic(std::size_t num_modes, std::size_t k, std::size_t l, double transmittance,
                                     BeamSplitterSign sign) {
    if (!(transmittance >= 0 && transmittance <= 1)) {
        throw std::invalid_argument("beamsplitter_symplectic: transmittance must lie in [0, 1]");
    }
    if (k == l || k >= num_modes || l >= num_modes) {
        throw std::invalid_argument("beamsplitter_symplectic: need two distinct modes in range");
    }
    double s = sign == BeamSplitterSign::Plus ? 1.0 : -1.0;
    double reflect = std::sqrt(1 - transmittance);
    double transmit = std::sqrt(transmittance);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(num_modes, num_modes);
    m(k, k) = reflect;
    m(k, l) = transmit;
    m(l, k) = s * transmit;
    m(l, l) = -s * reflect;
    return SymplecticOp{lift_mode_matrix(m), Eigen::VectorXd::Zero(2 * num_modes)};
}

GaussianState apply(const SymplecticOp &op, const GaussianState &state) {
    if (op.S.cols() != state.mean().size() || op.d.size() != op.S.rows()) {
        throw std::invalid_argument("apply: operation and state dimensions differ");
    }
    return GaussianState(op.S * state.mean() + op.d, op.S * state.cov() * op.S.transpose());
}

GaussianState apply_affine(const Eigen::MatrixXd &map, const Eigen::VectorXd &offset, const GaussianState &state) {
    if (map.cols() != state.mean().size() || offset.size() != map.rows()) {
        throw std::invalid_argument("apply_affine: map and state dimensions differ");
    }
    return GaussianState(map * state.mean() + offset, map * state.cov() * map.transpose());
}

GaussianState loss_channel(const GaussianState &state, std::size_t mode, double eta) {
    if (!(eta >= 0 && eta <= 1)) {
        throw std::invalid_argument("loss_channel: transmissivity must lie in [0, 1]");
    }
    if (mode >= state.num_modes()) {
        throw std::out_of_range("loss_channel: mode out of range");
    }
    Eigen::Index dim = state.mean().size();
    Eigen::VectorXd scale = Eigen::VectorXd::Ones(dim);
    scale(2 * mode) = std::sqrt(eta);
    scale(2 * mode + 1) = std::sqrt(eta);
    Eigen::VectorXd mean = scale.asDiagonal() * state.mean();
    Eigen::MatrixXd cov = scale.asDiagonal() * state.cov() * scale.asDiagonal();
    cov(2 * mode, 2 * mode) += (1 - eta) * kVacuumVariance;
    cov(2 * mode + 1, 2 * mode + 1) += (1 - eta) * kVacuumVariance;
    return GaussianState(std::move(mean), std::move(cov));
}

double fidelity_gaussian(const GaussianState &rho1, const GaussianState &rho2) {
    if (rho1.num_modes() != 1 || rho2.num_modes() != 1) {
        throw std::invalid_argument("fidelity_gaussian: only single-mode states are supported");
    }
    return fidelity_from_moments(rho1.mean(), rho1.cov(), rho2.mean(), rho2.cov());
}

double fidelity_from_moments(const Eigen::Vector2d &mean1, const Eigen::Matrix2d &cov1, const Eigen::Vector2d &mean2,
                             const Eigen::Matrix2d &cov2) {
    // Vacuum covariance becomes the identity; pure states have det 1.
    Eigen::Matrix2d sigma1 = 4.0 * cov1;
    Eigen::Matrix2d sigma2 = 4.0 * cov2;
    // Mean difference in units where the vacuum variance is 1/2.
    Eigen::Vector2d beta = std::sqrt(2.0) * (mean2 - mean1);
    Eigen::Matrix2d sum = sigma1 + sigma2;
    double delta_big = sum.determinant();
    double delta_mixed = std::max(0.0, (sigma1.determinant() - 1) * (sigma2.determinant() - 1));
    double prefactor = 2.0 / (std::sqrt(delta_big + delta_mixed) - std::sqrt(delta_mixed));
    double exponent = -beta.dot(sum.inverse() * beta);
    return std::clamp(prefactor * std::exp(exponent), 0.0, 1.0);
}

double variance_to_db(double variance) {
    if (!(variance > 0)) {
        throw std::invalid_argument("variance_to_db: variance must be positive");
    }
    return 10.0 * std::log10(variance / kVacuumVariance);
}

double db_to_variance(double db) {
    return kVacuumVariance * std::pow(10.0, db / 10.0);
}

GaussianSampler::GaussianSampler(const GaussianState &state) : GaussianSampler(state.mean(), state.cov()) {
}

GaussianSampler::GaussianSampler(Eigen::VectorXd mean, const Eigen::MatrixXd &cov) : mean_(std::move(mean)) {
    if (cov.rows() != mean_.size() || cov.cols() != mean_.size()) {
        throw std::invalid_argument("GaussianSampler: covariance shape does not match mean");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (cov + cov.transpose()));
    Eigen::VectorXd eig = solver.eigenvalues();
    double scale = tolerance_scale(cov);
    if (eig.minCoeff() < -kUncertaintyTol * scale) {
        throw std::invalid_argument("GaussianSampler: covariance is not positive semidefinite");
    }
    eig = eig.cwiseMax(0.0).cwiseSqrt();
    factor_ = solver.eigenvectors() * eig.asDiagonal();
}

void GaussianSampler::draw_noise(Rng &rng, Eigen::Ref<Eigen::VectorXd> out) const {
    std::normal_distribution<double> normal;
    Eigen::VectorXd z(mean_.size());
    for (Eigen::Index i = 0; i < z.size(); i++) {
        z(i) = normal(rng);
    }
    out.noalias() = factor_ * z;
}

Eigen::VectorXd GaussianSampler::draw(Rng &rng) const {
    Eigen::VectorXd out(mean_.size());
    draw_noise(rng, out);
    out += mean_;
    return out;
}

Eigen::VectorXd sample(const GaussianState &state, Rng &rng) {
    return GaussianSampler(state).draw(rng);
}

}  // namespace cvqec
