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

#include <doctest.h>

#include <cmath>

#include "wmrc/quadrature.hpp"

using namespace wmrc;

TEST_CASE("polynomials integrate exactly") {
    const auto q = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(q.converged);
    CHECK(q.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("gaussian integral over a truncated half-line") {
    const auto q = integrate_adaptive([](double t) { return std::exp(-t * t); }, 0.0, 12.0, 1e-12);
    CHECK(q.converged);
    CHECK(q.value == doctest::Approx(0.5 * std::sqrt(3.14159265358979323846)).epsilon(1e-12));
}

TEST_CASE("oscillatory integrand") {
    const auto q = integrate_adaptive([](double x) { return std::sin(10.0 * x); }, 0.0, 3.0, 1e-12);
    CHECK(q.converged);
    CHECK(q.value == doctest::Approx((1.0 - std::cos(30.0)) / 10.0).epsilon(1e-11));
}

TEST_CASE("integrable endpoint singularity converges") {
    const auto q = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0, 1e-8,
                                      0.0, 4000);
    CHECK(q.value == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("interval budget exhaustion is reported") {
    const auto q = integrate_adaptive(
        [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.337)); }, 0.0, 1.0, 1e-14, 0.0, 8);
    CHECK_FALSE(q.converged);
}
