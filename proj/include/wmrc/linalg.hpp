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

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "wmrc/errors.hpp"
#include "wmrc/types.hpp"

namespace wmrc {

struct HermitianEig {
    RealVector eigenvalues; ///< ascending
    ComplexMatrix eigenvectors;
};

/// Eigendecomposition of a Hermitian matrix: A = U diag(w) U' with w ascending.
/// Rejects inputs that deviate from Hermitian symmetry by more than
/// 1e-12 * ||A||; with require_pd, eigenvalues must exceed 1e-12 * ||A||.
inline HermitianEig hermitian_eig(const ComplexMatrix& a, bool require_pd = false) {
    if (a.rows() != a.cols())
        throw ShapeError("hermitian_eig: matrix is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", expected square");
    const double scale = a.norm();
    if ((a - a.adjoint()).norm() > 1e-12 * std::max(scale, 1e-300))
        throw ShapeError("hermitian_eig: matrix is not Hermitian to tolerance");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
    if (solver.info() != Eigen::Success)
        throw ConditioningError("hermitian_eig: eigensolver did not converge");
    if (require_pd && solver.eigenvalues().minCoeff() <= 1e-12 * scale)
        throw DefinitenessError("hermitian_eig: matrix is not positive definite (min eigenvalue " +
                                std::to_string(solver.eigenvalues().minCoeff()) + ")");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Principal square root of a Hermitian PSD matrix via eigendecomposition.
/// Eigenvalues in [-1e-12 * ||A||, 0) are treated as zero.
inline ComplexMatrix hermitian_sqrt_psd(const ComplexMatrix& a) {
    HermitianEig eig = hermitian_eig(a, false);
    const double tol = 1e-12 * std::max(a.norm(), 1e-300);
    RealVector roots(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double w = eig.eigenvalues[i];
        if (w < -tol)
            throw DefinitenessError("hermitian_sqrt_psd: eigenvalue " + std::to_string(w) +
                                    " below PSD tolerance");
        roots[i] = std::sqrt(std::max(w, 0.0));
    }
    ComplexMatrix b = eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
    return 0.5 * (b + b.adjoint().eval()); // symmetrize roundoff
}

/// Determinant via pivoted LU.
inline Complex determinant(const ComplexMatrix& a) {
    if (a.rows() != a.cols())
        throw ShapeError("determinant: matrix is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", expected square");
    return Eigen::PartialPivLU<ComplexMatrix>(a).determinant();
}

/// det A = sign * exp(log_abs); sign = 0 encodes an exactly singular matrix.
struct SignedLogDet {
    int sign = 0;
    double log_abs = -std::numeric_limits<double>::infinity();
};

/// Signed log-determinant of a real matrix via pivoted LU. Keeps the closed
/// forms overflow-free for large matrix orders and spread spectra.
inline SignedLogDet log_abs_det(const RealMatrix& a) {
    if (a.rows() != a.cols())
        throw ShapeError("log_abs_det: matrix is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", expected square");
    Eigen::PartialPivLU<RealMatrix> lu(a);
    int sign = lu.permutationP().determinant() > 0 ? 1 : -1;
    double log_abs = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const double d = lu.matrixLU()(i, i);
        if (d == 0.0)
            return {0, -std::numeric_limits<double>::infinity()};
        if (d < 0.0) sign = -sign;
        log_abs += std::log(std::abs(d));
    }
    return {sign, log_abs};
}

/// Vandermonde product prod_{i<j} (v_j - v_i); the empty product is 1.
inline double vandermonde(std::span<const double> values) {
    double p = 1.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j) p *= values[j] - values[i];
    return p;
}

inline double vandermonde(const std::vector<double>& values) {
    return vandermonde(std::span<const double>(values));
}

/// Normalized complex multivariate gamma constant, prod_{i=1}^{n} (n-i)!.
inline double multivariate_gamma_norm(int n) {
    if (n < 1)
        throw DomainError("multivariate_gamma_norm: order must be >= 1, got " + std::to_string(n));
    double p = 1.0;
    double factorial = 1.0;
    for (int i = 1; i < n; ++i) {
        factorial *= static_cast<double>(i);
        p *= factorial;
    }
    return p;
}

/// log of multivariate_gamma_norm, for overflow-free prefactor assembly.
inline double log_multivariate_gamma_norm(int n) {
    if (n < 1)
        throw DomainError("log_multivariate_gamma_norm: order must be >= 1, got " + std::to_string(n));
    double s = 0.0;
    for (int i = 2; i < n; ++i) s += std::lgamma(static_cast<double>(i) + 1.0);
    return s;
}

} // namespace wmrc
