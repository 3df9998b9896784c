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
#include "wmrc/special_functions.hpp"

using namespace wmrc;

namespace {

// direct evaluation e^{-y} - sum_{k<m} (-y)^k/k!, the unstable reference
double exp_reg_gamma_direct(int m, double y) {
    double term = 1.0, partial = 1.0;
    for (int k = 1; k < m; ++k) {
        term *= -y / static_cast<double>(k);
        partial += term;
    }
    return std::exp(-y) - partial;
}

// 60-term tail series sum_{k=m}^{m+59} (-y)^k/k!
double exp_reg_gamma_tail60(int m, double y) {
    double term = (m % 2 == 0) ? 1.0 : -1.0;
    for (int k = 1; k <= m; ++k) term *= y / static_cast<double>(k);
    double sum = term;
    for (int k = m + 1; k < m + 60; ++k) {
        term *= -y / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

} // namespace

TEST_CASE("reg_lower_gamma_int matches hand-evaluated values") {
    CHECK(reg_lower_gamma_int(1, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(reg_lower_gamma_int(1, std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
    // finite sum at (3, -2): 1 - 2 + 2 = 1, so P = 1 - e^2
    CHECK(reg_lower_gamma_int(3, -2.0) == doctest::Approx(1.0 - std::exp(2.0)).epsilon(1e-14));
}

TEST_CASE("reg_lower_gamma_int is increasing in y with limit 1") {
    for (int ell : {1, 2, 5}) {
        double prev = reg_lower_gamma_int(ell, 0.0);
        for (double y = 0.25; y <= 40.0; y += 0.25) {
            const double cur = reg_lower_gamma_int(ell, y);
            CHECK(cur >= prev);
            prev = cur;
        }
        CHECK(reg_lower_gamma_int(ell, 200.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("reg_lower_gamma_int rejects invalid input") {
    CHECK_THROWS_AS(reg_lower_gamma_int(0, 1.0), DomainError);
    CHECK_THROWS_AS(reg_lower_gamma_int(2, std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("exp_reg_gamma_stable trivial and derived values") {
    for (int m : {1, 2, 3, 7}) CHECK(exp_reg_gamma_stable(m, 0.0) == 0.0);
    CHECK(exp_reg_gamma_stable(1, std::log(2.0)) == doctest::Approx(-0.5).epsilon(1e-14));
    // leading tail term y^2/2 at m=2, y=1e-8
    CHECK(exp_reg_gamma_stable(2, 1e-8) == doctest::Approx(5.0e-17).epsilon(2e-3));
    CHECK(std::abs(exp_reg_gamma_stable(2, 1e-8) - 5.0e-17) < 1e-19);
}

TEST_CASE("exp_reg_gamma_stable agrees with the direct form on [0.5, 50]") {
    for (int m : {1, 2, 3, 4, 6}) {
        for (double y = 0.5; y <= 50.0; y *= 1.31) {
            const double ref = exp_reg_gamma_direct(m, y);
            CHECK(exp_reg_gamma_stable(m, y) == doctest::Approx(ref).epsilon(1e-10));
        }
    }
}

TEST_CASE("exp_reg_gamma_stable agrees with a 60-term tail series on (0, 0.5]") {
    for (int m : {1, 2, 3, 4, 6}) {
        for (double y = 0.5; y > 1e-6; y *= 0.37) {
            const double ref = exp_reg_gamma_tail60(m, y);
            CHECK(exp_reg_gamma_stable(m, y) == doctest::Approx(ref).epsilon(1e-13));
        }
    }
}

TEST_CASE("exp_reg_gamma_stable branches agree at the switch point") {
    for (int m : {1, 2, 3, 4, 6, 9}) {
        const double y = 0.5 * m;
        const double direct = exp_reg_gamma_direct(m, y);
        const double series = exp_reg_gamma_tail60(m, y);
        CHECK(direct == doctest::Approx(series).epsilon(1e-12));
    }
}

TEST_CASE("exp_reg_gamma_stable rejects invalid input") {
    CHECK_THROWS_AS(exp_reg_gamma_stable(0, 1.0), DomainError);
    CHECK_THROWS_AS(exp_reg_gamma_stable(2, -0.1), DomainError);
}

TEST_CASE("double_factorial_odd handles the extended values") {
    CHECK(double_factorial_odd(-3) == -1.0);
    CHECK(double_factorial_odd(-1) == 1.0);
    CHECK(double_factorial_odd(1) == 1.0);
    CHECK(double_factorial_odd(7) == 105.0);
    CHECK(double_factorial_odd(15) == 2027025.0);
    // table/extension seam
    CHECK(double_factorial_odd(61) == doctest::Approx(double_factorial_odd(59) * 61.0).epsilon(1e-15));
    CHECK_THROWS_AS(double_factorial_odd(4), DomainError);
    CHECK_THROWS_AS(double_factorial_odd(-5), DomainError);
}

TEST_CASE("eta_tilde vanishes at y = 0 and matches hand evaluations") {
    for (int m : {1, 2, 3, 5})
        for (int ell = 0; ell < m; ++ell) CHECK(eta_tilde(ell, 0.0, m) == 0.0);
    CHECK(eta_tilde(0, -1.0, 1) == doctest::Approx(1.5 - std::sqrt(2.0)).epsilon(1e-13));
    CHECK(eta_tilde(1, -1.0, 2) ==
          doctest::Approx(1.0 / std::sqrt(2.0) - 0.875).epsilon(1e-13));
    CHECK_THROWS_AS(eta_tilde(0, 0.5, 2), DomainError);
    CHECK_THROWS_AS(eta_tilde(2, -1.0, 2), DomainError);
    CHECK_THROWS_AS(eta_tilde(-1, -1.0, 2), DomainError);
}

TEST_CASE("eta_tilde internal branches agree around the series cutoff") {
    // the cutoff sits at y = -0.75; both sides must extend smoothly
    for (int m : {1, 2, 3, 4}) {
        for (int ell = 0; ell < m; ++ell) {
            const double below = eta_tilde(ell, -0.7500001, m);
            const double above = eta_tilde(ell, -0.7499999, m);
            CHECK(below == doctest::Approx(above).epsilon(1e-6)); // continuity probe
            // series vs closed form at the same point, via the identity
            // sum_{k>=0} (y/2)^k (2(k+l)-3)!!/k! = (2l-3)!!(1-y)^{1/2-l}
            const double y = -0.75;
            double term = double_factorial_odd(2 * ell - 3), total = term;
            for (int k = 1; k < 400; ++k) {
                term *= (y / 2.0) * (2.0 * (k + ell) - 3.0) / static_cast<double>(k);
                total += term;
            }
            const double closed =
                double_factorial_odd(2 * ell - 3) * std::pow(1.0 - y, 0.5 - ell);
            CHECK(total == doctest::Approx(closed).epsilon(1e-12));
        }
    }
}

TEST_CASE("eta_tilde matches the 200-term eta series inside its convergence disc") {
    // eta(l, y) = sum_{k=2m}^inf y^{k-l} Gamma(k-1/2)/(k-l)! converges for
    // |y| < 1 only; eta = sqrt(pi)/2^{l-1} eta~.
    const double sqrt_pi = std::sqrt(3.14159265358979323846);
    for (int m : {2, 3, 4}) {
        for (int ell = 0; ell < m; ++ell) {
            for (double y : {-0.1, -0.3, -0.5, -0.7}) {
                double series = 0.0;
                for (int k = 2 * m; k < 2 * m + 200; ++k) {
                    const double log_mag = (k - ell) * std::log(std::abs(y)) +
                                           std::lgamma(k - 0.5) - std::lgamma(k - ell + 1.0);
                    const double sign = ((k - ell) % 2 == 0) ? 1.0 : -1.0;
                    series += sign * std::exp(log_mag);
                }
                const double lhs = sqrt_pi * eta_tilde(ell, y, m) / std::pow(2.0, ell - 1);
                CHECK(lhs == doctest::Approx(series).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("eta_tilde matches the integral representation of eta on [-5, -1]") {
    // eta(l, y) = int_0^inf t^{l-3/2} e^{-t} [e^{yt} - sum_{k<2m-l} (yt)^k/k!] dt
    // for y <= 0; the bracket is the exponential tail, evaluated by series for
    // small |yt| to dodge the cancellation.
    const double sqrt_pi = std::sqrt(3.14159265358979323846);
    const auto exp_tail = [](double z, int k0) {
        if (std::abs(z) <= 1.0) {
            double term = 1.0;
            for (int k = 1; k <= k0; ++k) term *= z / static_cast<double>(k);
            double sum = term;
            for (int k = k0 + 1; k < k0 + 60; ++k) {
                term *= z / static_cast<double>(k);
                sum += term;
            }
            return sum;
        }
        double term = 1.0, partial = 1.0;
        for (int k = 1; k < k0; ++k) {
            term *= z / static_cast<double>(k);
            partial += term;
        }
        return std::exp(z) - partial;
    };
    for (int m : {2, 3}) {
        for (int ell = 0; ell < m; ++ell) {
            for (double y : {-1.0, -2.5, -5.0}) {
                const int k0 = 2 * m - ell;
                const auto integrand = [&](double t) {
                    if (t <= 0.0) return 0.0;
                    return std::pow(t, ell - 1.5) * std::exp(-t) * exp_tail(y * t, k0);
                };
                const QuadratureResult q = integrate_adaptive(integrand, 0.0, 80.0, 1e-12, 0.0, 8000);
                REQUIRE(q.converged);
                const double lhs = sqrt_pi * eta_tilde(ell, y, m) / std::pow(2.0, ell - 1);
                CHECK(lhs == doctest::Approx(q.value).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("gaussian_q basic values and symmetry") {
    CHECK(gaussian_q(0.0) == 0.5);
    CHECK(gaussian_q(40.0) < 1e-300);
    CHECK(gaussian_q(40.0) >= 0.0);
    CHECK(gaussian_q(1.0) == doctest::Approx(0.15865525).epsilon(1e-7));
    for (double x = -6.0; x <= 6.0; x += 0.37)
        CHECK(gaussian_q(x) + gaussian_q(-x) == doctest::Approx(1.0).epsilon(1e-14));
    double prev = 1.0;
    for (double x = -8.0; x <= 8.0; x += 0.25) {
        CHECK(gaussian_q(x) < prev);
        prev = gaussian_q(x);
    }
}

TEST_CASE("gaussian_q matches its integral form") {
    // Q(x) = (1/sqrt(pi)) int_{x/sqrt 2}^inf e^{-v^2} dv
    for (double x : {-1.5, -0.3, 0.4, 1.0, 2.7}) {
        const auto q = integrate_adaptive([](double v) { return std::exp(-v * v); },
                                          x / std::sqrt(2.0), 30.0, 1e-13, 0.0, 4000);
        REQUIRE(q.converged);
        CHECK(gaussian_q(x) ==
              doctest::Approx(q.value / std::sqrt(3.14159265358979323846)).epsilon(1e-12));
    }
}
