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

#ifndef CVQEC_GAUSSIAN_STATE_H
#define CVQEC_GAUSSIAN_STATE_H

#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "cvqec/rng.h"

namespace cvqec {

/// Variance of a vacuum quadrature. All noise powers are quoted relative to it.
inline constexpr double kVacuumVariance = 0.25;

/// Standard symplectic form for interleaved ordering (x1, p1, ..., xn, pn).
Eigen::MatrixXd symplectic_form(std::size_t num_modes);

/// Mean vector and covariance matrix of an n-mode Gaussian state.
///
/// Ordering is interleaved (x1, p1, x2, p2, ...). Construction validates symmetry (1e-12)
/// and the uncertainty relation cov + (i/4) Omega >= 0 (eigenvalue tolerance 1e-9), and
/// throws std::invalid_argument on violation.
class GaussianState {
   public:
    GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

    static GaussianState vacuum(std::size_t num_modes);
    /// Tensor product in the order given.
    static GaussianState product(std::span<const GaussianState> parts);

    std::size_t num_modes() const { return static_cast<std::size_t>(mean_.size() / 2); }
    const Eigen::VectorXd &mean() const { return mean_; }
    const Eigen::MatrixXd &cov() const { return cov_; }
    double var_x(std::size_t mode) const { return cov_(2 * mode, 2 * mode); }
    double var_p(std::size_t mode) const { return cov_(2 * mode + 1, 2 * mode + 1); }

    /// Reduced state of one mode.
    GaussianState mode(std::size_t index) const;
    GaussianState displaced(std::size_t mode, double dx, double dp) const;
    /// det(4 cov) == 1 within tol.
    bool is_pure(double tol = 1e-6) const;

   private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
};

/// Affine symplectic map x -> S x + d.
struct SymplecticOp {
    Eigen::MatrixXd S;
    Eigen::VectorXd d;

    static SymplecticOp identity(std::size_t num_modes);
    static SymplecticOp displacement(Eigen::VectorXd d);
    /// 90 degree phase-space rotation (x, p) -> (-p, x) on one mode.
    static SymplecticOp fourier(std::size_t num_modes, std::size_t mode);

    std::size_t num_modes() const { return static_cast<std::size_t>(S.rows() / 2); }
    bool is_symplectic(double tol = 1e-10) const;
    /// this applied after `first`.
    SymplecticOp after(const SymplecticOp &first) const;
};

enum class SqueezeAxis { Amplitude, Phase };
enum class BeamSplitterSign { Plus, Minus };

/// Amplitude-squeezed: V_x = e^{-2r}/4, V_p = e^{2r}(1 + excess)/4. Phase-squeezed swaps x and p.
GaussianState squeezed_vacuum(double r, SqueezeAxis axis, double antisqueeze_excess = 0);
/// Impure squeezed state from independent squeezing / antisqueezing levels in dB.
GaussianState squeezed_from_db(double squeeze_db, double antisqueeze_db, SqueezeAxis axis);
/// r such that e^{-2r} equals 10^{db/10}; -3.5 dB gives r ~ 0.403.
double squeezing_r_from_db(double db);

/// Beam splitter on modes k, l (0-based) of an n-mode register with mode matrix
/// [[sqrt(1-T), sqrt(T)], [+-sqrt(T), -+sqrt(1-T)]], acting identically on x and p.
SymplecticOp beamsplitter_symplectic(std::size_t num_modes, std::size_t k, std::size_t l, double transmittance,
                                     BeamSplitterSign sign);

/// Lift a real n x n mode matrix to the 2n x 2n block form acting identically on x and p.
Eigen::MatrixXd lift_mode_matrix(const Eigen::MatrixXd &mode_matrix);

GaussianState apply(const SymplecticOp &op, const GaussianState &state);
/// mean -> L mean + offset, cov -> L cov L^T. The result is validated like any other state.
GaussianState apply_affine(const Eigen::MatrixXd &map, const Eigen::VectorXd &offset, const GaussianState &state);

/// Pure-loss channel of transmissivity eta on one mode.
GaussianState loss_channel(const GaussianState &state, std::size_t mode, double eta);

/// Uhlmann fidelity of two single-mode Gaussian states.
double fidelity_gaussian(const GaussianState &rho1, const GaussianState &rho2);
/// Same formula on raw single-mode moments, without validating them. Used for estimated moments.
double fidelity_from_moments(const Eigen::Vector2d &mean1, const Eigen::Matrix2d &cov1, const Eigen::Vector2d &mean2,
                             const Eigen::Matrix2d &cov2);

/// 10 log10(v / (1/4)).
double variance_to_db(double variance);
double db_to_variance(double db);

/// Draws from N(mean, cov). Precomputes a factor of cov so repeated draws are cheap.
class GaussianSampler {
   public:
    explicit GaussianSampler(const GaussianState &state);
    GaussianSampler(Eigen::VectorXd mean, const Eigen::MatrixXd &cov);

    std::size_t dim() const { return static_cast<std::size_t>(mean_.size()); }
    Eigen::VectorXd draw(Rng &rng) const;
    /// Writes a zero-mean draw into `out` (size dim()).
    void draw_noise(Rng &rng, Eigen::Ref<Eigen::VectorXd> out) const;

   private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd factor_;
};

Eigen::VectorXd sample(const GaussianState &state, Rng &rng);

}  // namespace cvqec

#endif
