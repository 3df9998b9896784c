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
#include <algorithm>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "wmrc/errors.hpp"

namespace wmrc {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = DenseMatrix<Complex>;
using ComplexVector = DenseVector<Complex>;
using RealMatrix = DenseMatrix<double>;
using RealVector = DenseVector<double>;

/// How to handle (near-)coincident eigenvalues. The closed forms have
/// removable singularities at coincident eigenvalues; `perturb` resolves them
/// with a deterministic O(1e-7) relative split, `strict` refuses.
enum class DegeneracyPolicy { perturb, strict };

/// Strictly ascending positive eigenvalues of a Hermitian PD matrix.
class EigenSpectrum {
  public:
    /// Sorts `values` ascending and applies the degeneracy policy: if the
    /// minimum relative gap falls below 1e-9, value i is multiplied by
    /// (1 + i*1e-7) and the list re-sorted (`perturbed()` reports this), or a
    /// ConditioningError is thrown under `strict`.
    static EigenSpectrum from_values(std::vector<double> values,
                                     DegeneracyPolicy policy = DegeneracyPolicy::perturb) {
        if (values.empty())
            throw ShapeError("EigenSpectrum: empty value list");
        std::sort(values.begin(), values.end());
        if (values.front() <= 0.0)
            throw DefinitenessError("EigenSpectrum: non-positive eigenvalue " + std::to_string(values.front()));

        double guard = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < values.size(); ++i)
            guard = std::min(guard, (values[i + 1] - values[i]) / values[i + 1]);

        bool perturbed = false;
        if (guard < kMinRelativeGap) {
            if (policy == DegeneracyPolicy::strict)
                throw ConditioningError("EigenSpectrum: relative eigenvalue gap " + std::to_string(guard) +
                                        " below 1e-9 (strict degeneracy mode)");
            for (std::size_t i = 0; i < values.size(); ++i)
                values[i] *= 1.0 + static_cast<double>(i) * 1e-7;
            std::sort(values.begin(), values.end());
            perturbed = true;
        }
        return EigenSpectrum(std::move(values), guard, perturbed);
    }

    int size() const noexcept { return static_cast<int>(values_.size()); }
    const std::vector<double>& values() const noexcept { return values_; }
    double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
    double min() const { return values_.front(); }
    double max() const { return values_.back(); }

    /// Minimum relative gap observed before any perturbation.
    double multiplicity_guard() const noexcept { return multiplicity_guard_; }
    bool perturbed() const noexcept { return perturbed_; }

    double product() const {
        double p = 1.0;
        for (double v : values_) p *= v;
        return p;
    }

    static constexpr double kMinRelativeGap = 1e-9;

  private:
    EigenSpectrum(std::vector<double> values, double guard, bool perturbed)
        : values_(std::move(values)), multiplicity_guard_(guard), perturbed_(perturbed) {}

    std::vector<double> values_;
    double multiplicity_guard_;
    bool perturbed_;
};

/// Canonical parameter set (n, m, omega-spectrum, sigma-spectrum) of a
/// doubly-correlated complex Wishart matrix X'X with X ~ CN(0, Sigma x Omega),
/// n <= m. All closed forms consume this type.
struct WishartPair {
    int n = 0;
    int m = 0;
    EigenSpectrum omega; ///< length n
    EigenSpectrum sigma; ///< length m
    int tau = 0;         ///< m - n

    static WishartPair make(EigenSpectrum omega, EigenSpectrum sigma) {
        const int n = omega.size();
        const int m = sigma.size();
        if (n < 1 || n > m)
            throw ShapeError("WishartPair: need 1 <= n <= m, got n=" + std::to_string(n) +
                             ", m=" + std::to_string(m));
        return WishartPair{n, m, std::move(omega), std::move(sigma), m - n};
    }

    static WishartPair from_values(std::vector<double> omega, std::vector<double> sigma,
                                   DegeneracyPolicy policy = DegeneracyPolicy::perturb) {
        return make(EigenSpectrum::from_values(std::move(omega), policy),
                    EigenSpectrum::from_values(std::move(sigma), policy));
    }
};

} // namespace wmrc
