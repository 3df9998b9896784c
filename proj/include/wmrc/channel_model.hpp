// SPDX-License-Identifier: Apache-2.0
//
// wishart-mrc — exact performance statistics for MIMO beamforming/MRC links
// over doubly-correlated Rayleigh fading
// Copyright (C) 2026 the wishart-mrc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Uniform-linear-array correlation model, the mapping from an antenna
// configuration onto the Wishart eigenvalue parameterization, and seeded
// sampling of Kronecker-correlated Rayleigh channels H = R^{1/2} Hw S^{1/2}.

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "wmrc/errors.hpp"
#include "wmrc/linalg.hpp"
#include "wmrc/rng.hpp"
#include "wmrc/types.hpp"

namespace wmrc {

/// Uniform linear array description: adjacent-antenna spacing in wavelengths,
/// mean angle of arrival/departure in radians, and the variance (rad^2) of
/// the Gaussian angular perturbation around it.
struct ArrayModelParams {
    double spacing_wavelengths = 0.5;
    double mean_angle_rad = 1.5707963267948966;
    double angle_spread_var = 0.0;
    int antenna_count = 1;
};

/// Which end of the link an array sits at; fixes the sign of the phase term.
enum class ArraySide { receive, transmit };

/// Hermitian positive-(semi)definite matrix with exactly unit diagonal.
class CorrelationMatrix {
  public:
    /// Validates shape, exact unit diagonal, Hermitian symmetry to
    /// 1e-12 * ||M|| and eigenvalues above -1e-12 * trace.
    static CorrelationMatrix from_entries(ComplexMatrix entries) {
        if (entries.rows() != entries.cols() || entries.rows() < 1)
            throw ShapeError("CorrelationMatrix: expected a square matrix");
        for (Eigen::Index i = 0; i < entries.rows(); ++i)
            if (entries(i, i) != Complex(1.0, 0.0))
                throw ModelValidityError("CorrelationMatrix: diagonal entry " + std::to_string(i) +
                                         " is not exactly 1");
        if ((entries - entries.adjoint()).norm() > 1e-12 * entries.norm())
            throw ModelValidityError("CorrelationMatrix: matrix is not Hermitian to tolerance");
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(entries, Eigen::EigenvaluesOnly);
        const double trace = static_cast<double>(entries.rows());
        if (solver.eigenvalues().minCoeff() < -1e-12 * trace)
            throw ModelValidityError("CorrelationMatrix: not positive semidefinite (min eigenvalue " +
                                     std::to_string(solver.eigenvalues().minCoeff()) + ")");
        return CorrelationMatrix(std::move(entries));
    }

    static CorrelationMatrix identity(int size) {
        return CorrelationMatrix(ComplexMatrix::Identity(size, size));
    }

    int size() const { return static_cast<int>(entries_.rows()); }
    const ComplexMatrix& entries() const noexcept { return entries_; }

  private:
    explicit CorrelationMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {}
    ComplexMatrix entries_;
};

/// Correlation matrix of a uniform linear array: entry (p, q) is
///   exp(-j 2 pi (q-p) d cos(theta)) * exp(-((2 pi (q-p) d sin(theta) sigma)^2)/2)
/// with sigma = sqrt(angle_spread_var); the transmit side uses (p-q) in the
/// phase. Toeplitz by construction. A vanishing angle spread gives a rank-1
/// pure-phase matrix, which passes construction but is rejected downstream
/// when a positive-definite spectrum is required.
inline CorrelationMatrix correlation_from_model(const ArrayModelParams& params, ArraySide side) {
    if (!(params.spacing_wavelengths > 0.0))
        throw DomainError("correlation_from_model: spacing must be > 0");
    if (!(params.angle_spread_var >= 0.0))
        throw DomainError("correlation_from_model: angle spread variance must be >= 0");
    if (params.antenna_count < 1)
        throw DomainError("correlation_from_model: antenna count must be >= 1");
    const int n = params.antenna_count;
    const double d = params.spacing_wavelengths;
    const double theta = params.mean_angle_rad;
    const double sigma = std::sqrt(params.angle_spread_var);
    const double two_pi = 6.283185307179586477;
    ComplexMatrix r(n, n);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p == q) {
                r(p, q) = Complex(1.0, 0.0);
                continue;
            }
            const int diff = (side == ArraySide::receive) ? (q - p) : (p - q);
            const double phase = -two_pi * static_cast<double>(diff) * d * std::cos(theta);
            const double damp_arg = two_pi * static_cast<double>(diff) * d * std::sin(theta) * sigma;
            const double damp = std::exp(-0.5 * damp_arg * damp_arg);
            r(p, q) = damp * Complex(std::cos(phase), std::sin(phase));
        }
    }
    return CorrelationMatrix::from_entries(std::move(r));
}

/// Antenna configuration plus mean transmit SNR (linear).
struct MimoConfig {
    int n_t;
    int n_r;
    CorrelationMatrix transmit_corr; ///< size n_t
    CorrelationMatrix receive_corr;  ///< size n_r
    double mean_snr_linear = 1.0;

    static MimoConfig make(int n_t, int n_r, CorrelationMatrix transmit_corr,
                           CorrelationMatrix receive_corr, double mean_snr_linear) {
        if (n_t < 1 || n_r < 1)
            throw ShapeError("MimoConfig: antenna counts must be >= 1");
        if (transmit_corr.size() != n_t || receive_corr.size() != n_r)
            throw ShapeError("MimoConfig: correlation matrix sizes must match antenna counts");
        if (!(mean_snr_linear > 0.0))
            throw DomainError("MimoConfig: mean SNR must be > 0");
        return MimoConfig{n_t, n_r, std::move(transmit_corr), std::move(receive_corr), mean_snr_linear};
    }
};

/// Maps the antenna configuration onto the Wishart parameter set: for
/// N_r >= N_t the Gram matrix H'H is full rank and (Omega, Sigma) = (S, R)
/// with n = N_t, m = N_r; otherwise HH' is used with (Omega, Sigma) = (R, S).
/// The maximum eigenvalue is identical either way.
inline WishartPair to_wishart_pair(const MimoConfig& config,
                                   DegeneracyPolicy policy = DegeneracyPolicy::perturb) {
    const ComplexMatrix& omega_matrix = (config.n_r >= config.n_t) ? config.transmit_corr.entries()
                                                                   : config.receive_corr.entries();
    const ComplexMatrix& sigma_matrix = (config.n_r >= config.n_t) ? config.receive_corr.entries()
                                                                   : config.transmit_corr.entries();
    const RealVector omega = hermitian_eig(omega_matrix, true).eigenvalues;
    const RealVector sigma = hermitian_eig(sigma_matrix, true).eigenvalues;
    return WishartPair::from_values(std::vector<double>(omega.begin(), omega.end()),
                                    std::vector<double>(sigma.begin(), sigma.end()), policy);
}

/// Draws flat Kronecker-correlated Rayleigh channels H = R^{1/2} Hw S^{1/2}
/// (N_r x N_t, i.i.d. unit-variance circular Gaussian core). The square roots
/// are cached across draws.
class ChannelSampler {
  public:
    explicit ChannelSampler(const MimoConfig& config)
        : n_t_(config.n_t),
          n_r_(config.n_r),
          sqrt_receive_(hermitian_sqrt_psd(config.receive_corr.entries())),
          sqrt_transmit_(hermitian_sqrt_psd(config.transmit_corr.entries())) {}

    ComplexMatrix draw(CounterRng& rng) const {
        ComplexMatrix hw(n_r_, n_t_);
        for (int r = 0; r < n_r_; ++r)
            for (int c = 0; c < n_t_; ++c) hw(r, c) = rng.next_complex_gaussian();
        return sqrt_receive_ * hw * sqrt_transmit_;
    }

    int n_t() const noexcept { return n_t_; }
    int n_r() const noexcept { return n_r_; }

  private:
    int n_t_;
    int n_r_;
    ComplexMatrix sqrt_receive_;
    ComplexMatrix sqrt_transmit_;
};

/// Single-draw convenience wrapper around ChannelSampler.
inline ComplexMatrix sample_channel(const MimoConfig& config, CounterRng& rng) {
    return ChannelSampler(config).draw(rng);
}

} // namespace wmrc
