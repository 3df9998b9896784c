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

#include <array>
#include <cmath>
#include <string>

#include "wmrc/errors.hpp"

namespace wmrc {

/// Regularized lower incomplete gamma function at integer order,
/// P(ell; y) = 1 - e^{-y} * sum_{k=0}^{ell-1} y^k/k!.
/// Defined for any finite real y (the Psi-matrix entries evaluate it at
/// negative arguments); lies in [0, 1) for y >= 0.
inline double reg_lower_gamma_int(int ell, double y) {
    if (ell < 1)
        throw DomainError("reg_lower_gamma_int: order must be >= 1, got " + std::to_string(ell));
    if (!std::isfinite(y))
        throw DomainError("reg_lower_gamma_int: non-finite argument");
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < ell; ++k) {
        term *= y / static_cast<double>(k);
        sum += term;
    }
    return 1.0 - std::exp(-y) * sum;
}

/// e^{-y} P(m; -y) = e^{-y} - sum_{k=0}^{m-1} (-y)^k/k!  for y >= 0.
///
/// For y < 0.5*m the direct form cancels catastrophically, so the tail power
/// series sum_{k=m}^inf (-y)^k/k! (leading term (-y)^m/m!) is used instead,
/// truncated once a term drops below 1e-18 of the partial sum. The two
/// branches agree at the switch point to better than 1e-12 relative.
inline double exp_reg_gamma_stable(int m, double y) {
    if (m < 1)
        throw DomainError("exp_reg_gamma_stable: order must be >= 1, got " + std::to_string(m));
    if (!(y >= 0.0) || !std::isfinite(y))
        throw DomainError("exp_reg_gamma_stable: argument must be finite and >= 0");
    if (y == 0.0)
        return 0.0;
    if (y < 0.5 * static_cast<double>(m)) {
        // term_k = (-y)^k / k!, starting at k = m
        double term = (m % 2 == 0) ? 1.0 : -1.0;
        for (int k = 1; k <= m; ++k) term *= y / static_cast<double>(k);
        double sum = term;
        for (int k = m + 1; k < m + 400; ++k) {
            term *= -y / static_cast<double>(k);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    double term = 1.0;
    double partial = 1.0;
    for (int k = 1; k < m; ++k) {
        term *= -y / static_cast<double>(k);
        partial += term;
    }
    return std::exp(-y) - partial;
}

namespace detail {

// (-3)!!..59!! at odd indices; idx = (k + 3) / 2.
inline const std::array<double, 32>& odd_double_factorial_table() {
    static const std::array<double, 32> table = [] {
        std::array<double, 32> t{};
        t[0] = -1.0; // (-3)!!
        t[1] = 1.0;  // (-1)!!
        double v = 1.0;
        for (int k = 1; k <= 59; k += 2) {
            v *= static_cast<double>(k);
            t[static_cast<std::size_t>((k + 3) / 2)] = v;
        }
        return t;
    }();
    return table;
}

} // namespace detail

/// Odd double factorial k!! = 1*3*...*k extended by (-1)!! = 1, (-3)!! = -1.
/// Returns a double (59!! already exceeds 2^53); values beyond the cached
/// table at k = 59 are accumulated by iterative multiplication.
inline double double_factorial_odd(int k) {
    if (k < -3 || k % 2 == 0)
        throw DomainError("double_factorial_odd: need odd k >= -3, got " + std::to_string(k));
    const auto& table = detail::odd_double_factorial_table();
    if (k <= 59)
        return table[static_cast<std::size_t>((k + 3) / 2)];
    double v = table.back();
    for (int j = 61; j <= k; j += 2) v *= static_cast<double>(j);
    return v;
}

/// eta-tilde kernel of the closed-form SER,
///   (2l-3)!! (1-y)^{1/2-l} - sum_{k=0}^{2m-l-1} (y/2)^k (2(k+l)-3)!!/k!,
/// for y <= 0 and 0 <= l <= m-1.
///
/// Both pieces are O(1) while the value is O(|y|^{2m-l}) as y -> 0, so for
/// |y| < 0.75 the equivalent tail series
///   sum_{k=2m-l}^inf (y/2)^k (2(k+l)-3)!!/k!
/// is evaluated instead, which carries full relative accuracy.
inline double eta_tilde(int ell, double y, int m) {
    if (m < 1)
        throw DomainError("eta_tilde: order must be >= 1, got " + std::to_string(m));
    if (ell < 0 || ell > m - 1)
        throw DomainError("eta_tilde: need 0 <= ell <= m-1, got ell=" + std::to_string(ell) +
                          ", m=" + std::to_string(m));
    if (!(y <= 0.0) || !std::isfinite(y))
        throw DomainError("eta_tilde: argument must be finite and <= 0");
    if (y == 0.0)
        return 0.0;

    const int k0 = 2 * m - ell;
    if (y > -0.75) {
        // term_k = (y/2)^k (2(k+ell)-3)!!/k!, from k = k0
        double term = double_factorial_odd(2 * (k0 + ell) - 3);
        for (int k = 1; k <= k0; ++k) term *= (y / 2.0) / static_cast<double>(k);
        double sum = term;
        for (int k = k0 + 1; k < k0 + 2000; ++k) {
            term *= (y / 2.0) * static_cast<double>(2 * (k + ell) - 3) / static_cast<double>(k);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }

    double lead = double_factorial_odd(2 * ell - 3) * std::pow(1.0 - y, 0.5 - static_cast<double>(ell));
    double term = double_factorial_odd(2 * ell - 3); // k = 0
    double sum = term;
    for (int k = 1; k < k0; ++k) {
        term *= (y / 2.0) * static_cast<double>(2 * (k + ell) - 3) / static_cast<double>(k);
        sum += term;
    }
    return lead - sum;
}

/// Gaussian Q-function (standard normal upper tail), Q(x) = erfc(x/sqrt 2)/2.
inline double gaussian_q(double x) {
    if (!std::isfinite(x))
        throw DomainError("gaussian_q: non-finite argument");
    return 0.5 * std::erfc(x * 0.7071067811865475244);
}

} // namespace wmrc
