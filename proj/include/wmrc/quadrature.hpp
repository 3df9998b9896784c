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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace wmrc {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
    bool converged = false;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gauss_kronrod_15(F&& f, double a, double b, double& value, double& error) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    const double fc = f(center);
    fv[14] = fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        fv[2 * i] = f(center - dx);
        fv[2 * i + 1] = f(center + dx);
    }

    double resk = kKronrodWeights[7] * fc;
    double resg = kGaussWeights[3] * fc;
    double resabs = std::abs(resk);
    for (int i = 0; i < 7; ++i) {
        const double pair_sum = fv[2 * i] + fv[2 * i + 1];
        resk += kKronrodWeights[i] * pair_sum;
        resabs += kKronrodWeights[i] * (std::abs(fv[2 * i]) + std::abs(fv[2 * i + 1]));
        if (i % 2 == 1) // odd Kronrod indices coincide with the Gauss nodes
            resg += kGaussWeights[(i - 1) / 2] * pair_sum;
    }

    const double mean = 0.5 * resk;
    double resasc = kKronrodWeights[7] * std::abs(fc - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kKronrodWeights[i] * (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));

    value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    error = std::abs((resk - resg) * half);
    if (resasc != 0.0 && error != 0.0)
        error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
    const double eps_floor = 50.0 * 2.2204460492503131e-16 * resabs;
    error = std::max(error, eps_floor);
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b].
/// Bisects the interval with the largest error estimate until the summed
/// error drops below max(abs_tol, rel_tol * |integral|) or the interval
/// budget is exhausted (converged = false in that case).
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-10,
                                    double abs_tol = 0.0, int max_intervals = 4000) {
    struct Segment {
        double a, b, value, error;
    };
    std::vector<Segment> segments;
    segments.reserve(64);

    double v, e;
    detail::gauss_kronrod_15(f, a, b, v, e);
    segments.push_back({a, b, v, e});

    QuadratureResult result;
    for (;;) {
        double total = 0.0, total_err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segments.size(); ++i) {
            total += segments[i].value;
            total_err += segments[i].error;
            if (segments[i].error > segments[worst].error) worst = i;
        }
        result.value = total;
        result.error_estimate = total_err;
        result.intervals = static_cast<int>(segments.size());
        if (total_err <= std::max(abs_tol, rel_tol * std::abs(total))) {
            result.converged = true;
            return result;
        }
        if (static_cast<int>(segments.size()) >= max_intervals) {
            result.converged = false;
            return result;
        }
        const Segment seg = segments[worst];
        const double mid = 0.5 * (seg.a + seg.b);
        if (mid <= seg.a || mid >= seg.b) { // interval no longer splittable
            result.converged = total_err <= std::max(abs_tol, 10.0 * rel_tol * std::abs(total));
            return result;
        }
        Segment left{seg.a, mid, 0.0, 0.0}, right{mid, seg.b, 0.0, 0.0};
        detail::gauss_kronrod_15(f, left.a, left.b, left.value, left.error);
        detail::gauss_kronrod_15(f, right.a, right.b, right.value, right.error);
        segments[worst] = left;
        segments.push_back(right);
    }
}

} // namespace wmrc
