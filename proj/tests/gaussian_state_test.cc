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

#include <cmath>
#include <complex>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

using namespace cvqec;

namespace {

GaussianState single(double mx, double mp, double vx, double vp, double cxp = 0) {
    Eigen::MatrixXd cov(2, 2);
    cov << vx, cxp, cxp, vp;
    return GaussianState(Eigen::Vector2d(mx, mp), cov);
}

// Truncated Fock-space model of one mode, with x = (a + a^dag)/2 and p = (a - a^dag)/(2i).
struct Fock {
    using Mat = Eigen::MatrixXcd;
    int n;
    Mat a;

    explicit Fock(int dim) : n(dim), a(Mat::Zero(dim, dim)) {
        for (int k = 1; k < n; k++) {
            a(k - 1, k) = std::sqrt(static_cast<double>(k));
        }
    }
    Mat ad() const { return a.adjoint(); }
    Mat x() const { return (a + ad()) / 2.0; }
    Mat p() const { return (a - ad()) / std::complex<double>(0, 2); }

    Mat thermal(double nbar) const {
        Mat rho = Mat::Zero(n, n);
        double q = nbar / (1 + nbar);
        for (int k = 0; k < n; k++) {
            rho(k, k) = (1 - q) * std::pow(q, k);
        }
        return rho;
    }
    Mat squeeze(double r) const { return (0.5 * r * (a * a - ad() * ad())).exp(); }
    Mat rotate(double theta) const {
        Mat u = Mat::Zero(n, n);
        for (int k = 0; k < n; k++) {
            u(k, k) = std::polar(1.0, -theta * k);
        }
        return u;
    }
    Mat displace(std::complex<double> alpha) const { return (alpha * ad() - std::conj(alpha) * a).exp(); }

    Mat state(double nbar, double r, double theta, std::complex<double> alpha) const {
        Mat u = displace(alpha) * rotate(theta) * squeeze(r);
        return u * thermal(nbar) * u.adjoint();
    }

    GaussianState moments(const Mat &rho) const {
        // Evaluate away from the truncation edge.
        auto ev = [&](const Mat &op) { return (rho * op).trace().real(); };
        Mat X = x();
        Mat P = p();
        double mx = ev(X);
        double mp = ev(P);
        double vx = ev(X * X) - mx * mx;
        double vp = ev(P * P) - mp * mp;
        double c = 0.5 * ev(X * P + P * X) - mx * mp;
        return single(mx, mp, vx, vp, c);
    }

    static Mat psd_sqrt(const Mat &m) {
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
        Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0).cwiseSqrt();
        return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    }
    static double uhlmann(const Mat &r1, const Mat &r2) {
        Mat s = psd_sqrt(r1);
        double t = psd_sqrt(s * r2 * s).trace().real();
        return t * t;
    }
};

}  // namespace

TEST(gaussian_state, rejects_unphysical_covariance) {
    ASSERT_THROW(single(0, 0, 0.1, 0.1), std::invalid_argument);
    ASSERT_THROW(single(0, 0, 0.25, 0.25, 0.1), std::invalid_argument);
    Eigen::MatrixXd asym(2, 2);
    asym << 0.25, 0.01, 0.0, 0.25;
    ASSERT_THROW(GaussianState(Eigen::Vector2d::Zero(), asym), std::invalid_argument);
    ASSERT_NO_THROW(single(0, 0, 0.25, 0.25));
}

TEST(gaussian_state, squeezed_vacuum_examples) {
    GaussianState v = squeezed_vacuum(0, SqueezeAxis::Amplitude);
    ASSERT_NEAR(v.var_x(0), 0.25, 1e-15);
    ASSERT_NEAR(v.var_p(0), 0.25, 1e-15);

    double r = squeezing_r_from_db(-3.5);
    ASSERT_NEAR(r, 0.40295, 1e-5);
    GaussianState s = squeezed_vacuum(r, SqueezeAxis::Amplitude);
    ASSERT_NEAR(s.var_x(0), 0.25 * std::pow(10, -0.35), 1e-15);
    ASSERT_TRUE(s.is_pure());

    GaussianState in = squeezed_from_db(-3.5, 8.9, SqueezeAxis::Phase);
    ASSERT_NEAR(in.var_p(0), 0.25 * std::pow(10, -0.35), 1e-15);
    ASSERT_NEAR(in.var_x(0), 0.25 * std::pow(10, 0.89), 1e-12);
    ASSERT_NEAR(16 * in.var_x(0) * in.var_p(0), 3.467, 1e-3);
    ASSERT_FALSE(in.is_pure());
}

TEST(gaussian_state, beamsplitter_mode_matrix) {
    SymplecticOp half = beamsplitter_symplectic(2, 0, 1, 0.5, BeamSplitterSign::Plus);
    double h = std::sqrt(0.5);
    ASSERT_NEAR(half.S(0, 0), h, 1e-15);
    ASSERT_NEAR(half.S(0, 2), h, 1e-15);
    ASSERT_NEAR(half.S(2, 0), h, 1e-15);
    ASSERT_NEAR(half.S(2, 2), -h, 1e-15);
    ASSERT_NEAR(half.S(3, 3), -h, 1e-15);
    ASSERT_TRUE(half.is_symplectic());

    SymplecticOp none = beamsplitter_symplectic(2, 0, 1, 0.0, BeamSplitterSign::Plus);
    ASSERT_NEAR(none.S(0, 0), 1, 1e-15);
    ASSERT_NEAR(none.S(2, 2), -1, 1e-15);
    ASSERT_NEAR(none.S(0, 2), 0, 1e-15);
}

TEST(gaussian_state, apply_examples) {
    GaussianState vac = GaussianState::vacuum(1);
    GaussianState same = apply(SymplecticOp::identity(1), vac);
    ASSERT_EQ(same.mean(), vac.mean());
    ASSERT_EQ(same.cov(), vac.cov());

    GaussianState shifted = apply(SymplecticOp::displacement(Eigen::Vector2d(1.5, -2)), vac);
    ASSERT_NEAR(shifted.mean()(0), 1.5, 1e-15);
    ASSERT_NEAR(shifted.mean()(1), -2, 1e-15);
    ASSERT_EQ(shifted.cov(), vac.cov());

    GaussianState amp = squeezed_vacuum(0.6, SqueezeAxis::Amplitude);
    GaussianState rotated = apply(SymplecticOp::fourier(1, 0), amp);
    GaussianState phase = squeezed_vacuum(0.6, SqueezeAxis::Phase);
    ASSERT_TRUE(rotated.cov().isApprox(phase.cov(), 1e-15));
    ASSERT_TRUE(SymplecticOp::fourier(1, 0).is_symplectic());
}

TEST(gaussian_state, loss_channel_examples) {
    GaussianState s = squeezed_vacuum(squeezing_r_from_db(-3.5), SqueezeAxis::Amplitude).displaced(0, 2, 0);
    GaussianState kept = loss_channel(s, 0, 1);
    ASSERT_TRUE(kept.cov().isApprox(s.cov(), 1e-15));
    GaussianState gone = loss_channel(s, 0, 0);
    ASSERT_NEAR(gone.var_x(0), 0.25, 1e-15);
    ASSERT_NEAR(gone.var_p(0), 0.25, 1e-15);
    ASSERT_NEAR(gone.mean().norm(), 0, 1e-15);

    double eta = 0.96 * 0.95;
    GaussianState lossy = loss_channel(s, 0, eta);
    ASSERT_NEAR(lossy.var_x(0) / 0.25, eta * std::pow(10, -0.35) + (1 - eta), 1e-12);
    ASSERT_NEAR(lossy.var_x(0) / 0.25, 0.4967, 2e-3);
    ASSERT_NEAR(lossy.mean()(0), 2 * std::sqrt(eta), 1e-12);
}

TEST(gaussian_state, fidelity_examples) {
    GaussianState vac = GaussianState::vacuum(1);
    ASSERT_NEAR(fidelity_gaussian(vac, vac), 1, 1e-15);
    GaussianState noisy = single(0, 0, 0.25 * 5 / 3, 0.25 * 3);
    ASSERT_NEAR(fidelity_gaussian(vac, noisy), 2 / std::sqrt(8.0 / 3 * 4), 1e-14);
    ASSERT_NEAR(fidelity_gaussian(vac, noisy), 0.612, 5e-4);
    ASSERT_NEAR(fidelity_gaussian(vac, noisy), fidelity_gaussian(noisy, vac), 1e-15);
    GaussianState coherent = vac.displaced(0, 0.3, 0.4);
    ASSERT_NEAR(fidelity_gaussian(vac, coherent), std::exp(-0.25), 1e-14);
    ASSERT_THROW(fidelity_gaussian(GaussianState::vacuum(2), vac), std::invalid_argument);
}

TEST(gaussian_state, fidelity_matches_fock_space_uhlmann) {
    Fock fock(70);
    struct Case {
        double nbar, r, theta;
        std::complex<double> alpha;
    };
    const Case cases[][2] = {
        {{0, 0, 0, 0}, {0, 0.3, 0.4, {0.5, -0.2}}},
        {{0, 0.4, 0, {0.3, 0}}, {0, 0.4, 1.2, {0, 0.3}}},
        {{0.3, 0, 0, 0}, {0, 0.2, 0, {0.4, 0.4}}},
        {{0.2, 0.3, 0.7, {0.1, 0.2}}, {0.5, 0.1, -0.4, {-0.3, 0.1}}},
        {{1.0, 0.2, 0, 0}, {0.4, 0.5, 1.0, {0.6, -0.5}}},
    };
    for (const auto &c : cases) {
        auto r1 = fock.state(c[0].nbar, c[0].r, c[0].theta, c[0].alpha);
        auto r2 = fock.state(c[1].nbar, c[1].r, c[1].theta, c[1].alpha);
        double oracle = Fock::uhlmann(r1, r2);
        double got = fidelity_gaussian(fock.moments(r1), fock.moments(r2));
        EXPECT_NEAR(got, oracle, 1e-6) << c[0].nbar << " " << c[1].nbar;
    }
}

TEST(gaussian_state, db_conversions) {
    ASSERT_NEAR(variance_to_db(0.25), 0, 1e-15);
    ASSERT_NEAR(variance_to_db(0.25 * (1 + 8 * std::pow(10, -0.35))), 6.60, 5e-3);
    ASSERT_NEAR(variance_to_db(0.25 * 9), 9.54, 5e-3);
    ASSERT_NEAR(db_to_variance(variance_to_db(0.37)), 0.37, 1e-15);
    ASSERT_THROW(variance_to_db(0), std::invalid_argument);
}

TEST(gaussian_state, sampling) {
    Rng rng(11);
    constexpr int n = 100000;
    auto sample_var = [&](const GaussianState &s, int q, double *mean_out) {
        GaussianSampler sampler(s);
        double sum = 0, sum2 = 0;
        for (int i = 0; i < n; i++) {
            double v = sampler.draw(rng)(q);
            sum += v;
            sum2 += v * v;
        }
        double m = sum / n;
        *mean_out = m;
        return (sum2 - n * m * m) / (n - 1);
    };
    double m;
    double v = sample_var(GaussianState::vacuum(1), 0, &m);
    ASSERT_NEAR(v, 0.25, 3 * 0.25 * std::sqrt(2.0 / n));

    sample_var(GaussianState::vacuum(1).displaced(0, 2, 0), 0, &m);
    ASSERT_NEAR(m, 2, 3 * 0.5 / std::sqrt(n));

    double want = 0.25 * std::pow(10, -0.35);
    v = sample_var(squeezed_vacuum(squeezing_r_from_db(-3.5), SqueezeAxis::Amplitude), 0, &m);
    ASSERT_NEAR(want, 0.1117, 1e-4);
    ASSERT_NEAR(v, want, 3 * want * std::sqrt(2.0 / n));
}

TEST(gaussian_state, product_and_reduction) {
    GaussianState a = squeezed_vacuum(0.2, SqueezeAxis::Amplitude);
    GaussianState b = GaussianState::vacuum(1).displaced(0, 1, 2);
    std::vector<GaussianState> parts{a, b};
    GaussianState ab = GaussianState::product(parts);
    ASSERT_EQ(ab.num_modes(), 2u);
    ASSERT_TRUE(ab.mode(1).mean().isApprox(b.mean()));
    ASSERT_TRUE(ab.mode(0).cov().isApprox(a.cov()));
}
