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
// Link-level performance of beamforming/MRC: output-SNR density, outage
// probability, closed-form and quadrature symbol error rate, and the
// high-SNR SER asymptote with its 2m diversity slope.

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "wmrc/double_double.hpp"
#include "wmrc/errors.hpp"
#include "wmrc/quadrature.hpp"
#include "wmrc/special_functions.hpp"
#include "wmrc/types.hpp"
#include "wmrc/wishart_maxeig.hpp"

namespace wmrc {

enum class Exactness { exact, approximate };

/// SER model P_s = E[a Q(sqrt(2 b gamma))] with modulation constants (a, b).
struct Modulation {
    std::string name;
    double a = 1.0;
    double b = 1.0;
    Exactness exactness = Exactness::exact;
};

/// Ascending mean-SNR grid; points are linear, db_labels the matching dB values.
struct SnrGrid {
    std::vector<double> points;
    std::vector<double> db_labels;

    static SnrGrid from_linear(std::vector<double> linear) {
        if (linear.empty())
            throw DomainError("SnrGrid: empty grid");
        for (std::size_t i = 0; i < linear.size(); ++i) {
            if (!(linear[i] > 0.0))
                throw DomainError("SnrGrid: SNR values must be > 0");
            if (i > 0 && linear[i] <= linear[i - 1])
                throw DomainError("SnrGrid: SNR values must be strictly ascending");
        }
        SnrGrid g;
        g.db_labels.reserve(linear.size());
        for (double v : linear) g.db_labels.push_back(10.0 * std::log10(v));
        g.points = std::move(linear);
        return g;
    }
};

/// Looks up modulation constants by name. Supported: bpsk, bfsk-orthogonal,
/// bfsk-min-correlation, qpsk, <M>-pam, <M>-psk (M >= 2); the PSK family is
/// an approximation, everything else is exact under the Q-function SER model.
inline Modulation modulation_constants(std::string_view name) {
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (key == "bpsk")
        return {"bpsk", 1.0, 1.0, Exactness::exact};
    if (key == "bfsk-orthogonal")
        return {"bfsk-orthogonal", 1.0, 0.5, Exactness::exact};
    if (key == "bfsk-min-correlation")
        return {"bfsk-min-correlation", 1.0, 0.715, Exactness::exact};
    const bool is_qpsk = (key == "qpsk");
    if (is_qpsk)
        key = "4-psk";
    const auto dash = key.find('-');
    if (dash != std::string::npos && dash > 0) {
        const std::string family = key.substr(dash + 1);
        bool numeric = true;
        for (char c : key.substr(0, dash))
            if (!std::isdigit(static_cast<unsigned char>(c))) numeric = false;
        if (numeric && (family == "pam" || family == "psk")) {
            const long order = std::stol(key.substr(0, dash));
            if (order >= 2) {
                const double md = static_cast<double>(order);
                if (family == "pam")
                    return {key, 2.0 * (md - 1.0) / md, 3.0 / (md * md - 1.0), Exactness::exact};
                const double s = std::sin(3.14159265358979323846 / md);
                return {is_qpsk ? "qpsk" : key, 2.0, s * s, Exactness::approximate};
            }
        }
    }
    throw LookupError("unknown modulation '" + std::string(name) +
                      "'; supported: bpsk, bfsk-orthogonal, bfsk-min-correlation, qpsk, "
                      "<M>-pam, <M>-psk");
}

/// P.d.f. of the output SNR gamma = mean_snr * lambda_max: the max-eigenvalue
/// density under that change of variables.
inline double snr_pdf(const WishartPair& pair, double mean_snr, double gamma) {
    if (!(mean_snr > 0.0))
        throw DomainError("snr_pdf: mean SNR must be > 0");
    if (!(gamma > 0.0))
        throw DomainError("snr_pdf: SNR argument must be > 0");
    return maxeig_pdf(pair, gamma / mean_snr) / mean_snr;
}

/// P(gamma <= threshold): the max-eigenvalue c.d.f. at threshold / mean_snr.
inline double outage_probability(const WishartPair& pair, double mean_snr, double threshold) {
    if (!(mean_snr > 0.0))
        throw DomainError("outage_probability: mean SNR must be > 0");
    if (!(threshold > 0.0))
        throw DomainError("outage_probability: threshold must be > 0");
    return maxeig_cdf(pair, threshold / mean_snr);
}

namespace detail {

inline DD dd_double_factorial_odd(int k) { // odd k >= -3
    if (k == -3) return DD(-1.0);
    DD v(1.0);
    for (int j = 3; j <= k; j += 2) v = v * static_cast<double>(j);
    return v;
}

// eta-tilde kernel in double-double arithmetic; same two branches as the
// double version. The SER assembly cancels these values against each other
// far below double precision at low SNR, so they are carried at ~1e-32.
inline DD dd_eta_tilde(int ell, DD y, int m) {
    if (y.hi == 0.0 && y.lo == 0.0)
        return DD(0.0);
    const int k0 = 2 * m - ell;
    const DD y_half = y * 0.5;
    if (y.hi > -0.75) {
        DD term = dd_double_factorial_odd(2 * (k0 + ell) - 3);
        for (int k = 1; k <= k0; ++k) term = term * y_half / static_cast<double>(k);
        DD sum = term;
        for (int k = k0 + 1; k < k0 + 4000; ++k) {
            term = term * y_half * static_cast<double>(2 * (k + ell) - 3) / static_cast<double>(k);
            sum = sum + term;
            if (std::abs(term.hi) < 1e-35 * std::abs(sum.hi)) break;
        }
        return sum;
    }
    const DD one_minus_y = DD(1.0) - y;
    const DD lead =
        dd_double_factorial_odd(2 * ell - 3) * (dd_sqrt(one_minus_y) / dd_powi(one_minus_y, ell));
    DD term = dd_double_factorial_odd(2 * ell - 3);
    DD sum = term;
    for (int k = 1; k < k0; ++k) {
        term = term * y_half * static_cast<double>(2 * (k + ell) - 3) / static_cast<double>(k);
        sum = sum + term;
    }
    return lead - sum;
}

// Series assembly of the SER bracket: the c.d.f. double sum integrated term
// by term gives, per (p, t),
//   G = sum_{k=2m} (-1)^k Gamma(k-1/2) T_k,
//   T_k = sum_{l=m}^{k-m} u2^l u1^{k-l} / (l! (k-l)!),
// with u2 = 1/(g b w2 s_p), u1 = 1/(g b w1 s_t); bracket = G / (2 sqrt(pi)).
// Converges for u1 + u2 < 1; all T_k are positive, so unlike the eta-tilde
// form it carries full relative accuracy at high SNR.
inline double ser_series_g(double u2, double u1, int m) {
    const int k0 = 2 * m;
    double r = std::tgamma(2.0 * m - 0.5); // Gamma(k-1/2)/k! ladder, at k = 2m
    for (int k = 1; k <= k0; ++k) r /= static_cast<double>(k);
    double sum = 0.0;
    for (int k = k0; k < k0 + 600; ++k) {
        if (k > k0) r *= (static_cast<double>(k) - 1.5) / static_cast<double>(k);
        // k! T_k = sum_l C(k,l) u2^l u1^{k-l} over the middle band l in [m, k-m]
        double binom = 1.0;
        for (int j = 0; j < m; ++j)
            binom *= static_cast<double>(k - j) / static_cast<double>(m - j);
        double val = binom * std::pow(u2, m) * std::pow(u1, k - m);
        double t_k = val;
        for (int l = m + 1; l <= k - m; ++l) {
            val *= static_cast<double>(k - l + 1) / static_cast<double>(l) * (u2 / u1);
            t_k += val;
        }
        const double term = r * t_k;
        sum += ((k % 2 == 0) ? term : -term);
        if (term < 1e-18 * std::abs(sum) && k > k0 + 2) break;
    }
    return sum;
}

// Largest series parameter u1 + u2 over the (p, t) double sum; decides
// between the series and the eta-tilde assembly.
inline double ser_series_parameter(const WishartPair& pair, double mean_snr, double b) {
    const double w1 = pair.omega[0], w2 = pair.omega[1];
    const double s_min = pair.sigma[0];
    const double s_next = pair.sigma[1];
    const double g = mean_snr * b;
    return std::max(1.0 / (g * w2 * s_min) + 1.0 / (g * w1 * s_next),
                    1.0 / (g * w2 * s_next) + 1.0 / (g * w1 * s_min));
}

} // namespace detail

/// Closed-form SER for n = 2 (2 x m and m x 2 links): a finite expression in
/// the eta-tilde kernel, polynomial in the mean SNR.
///
/// Conditioning: the eta-tilde terms cancel against each other by a factor
/// that grows in both SNR directions. At high SNR (every series parameter
/// sum below 0.5) the algebraically identical term-by-term series is
/// evaluated instead, whose summands are positive per index pair; elsewhere
/// the eta-tilde assembly runs in double-double arithmetic, which covers the
/// cancellation for the supported antenna range down to very low SNR.
inline double ser_closed_form(const WishartPair& pair, double mean_snr, const Modulation& mod) {
    if (pair.n != 2)
        throw ContractError("ser_closed_form: requires n = 2 (use ser_quadrature for general n)");
    if (!(mean_snr > 0.0))
        throw DomainError("ser_closed_form: mean SNR must be > 0");
    if (!(mod.a > 0.0) || !(mod.b > 0.0))
        throw DomainError("ser_closed_form: modulation constants must be positive");
    if (mean_snr < 1e-6)
        return 0.5 * mod.a; // a Q(0) limit; the polynomial form cancels here
    const int m = pair.m;
    const double w1 = pair.omega[0], w2 = pair.omega[1];
    const bool use_series = detail::ser_series_parameter(pair, mean_snr, mod.b) < 0.5;
    const double two_sqrt_pi = 2.0 * 1.7724538509055160273;

    double sum;
    double cancellation_peak;
    if (use_series) {
        const double g_b = mean_snr * mod.b;
        sum = 0.0;
        cancellation_peak = 0.0;
        for (int p = 0; p < m; ++p) {
            for (int t = 0; t < m; ++t) {
                if (t == p) continue;
                const double weight = std::exp(detail::log_sigma_weight(pair.sigma, p, t));
                const double u2 = 1.0 / (g_b * w2 * pair.sigma[p]);
                const double u1 = 1.0 / (g_b * w1 * pair.sigma[t]);
                const double term =
                    detail::pt_term_sign(p, t) * weight * detail::ser_series_g(u2, u1, m) / two_sqrt_pi;
                sum += term;
                cancellation_peak = std::max(cancellation_peak, std::abs(term));
            }
        }
        if (cancellation_peak > 1e12 * std::abs(sum) && cancellation_peak > 0.0)
            throw ConditioningError("ser_closed_form: series assembly cancels beyond double "
                                    "precision at " + detail::describe(pair, mean_snr, "mean_snr"));
    } else {
        using detail::DD;
        const DD g_b = detail::two_prod(mean_snr, mod.b);
        DD acc(0.0);
        cancellation_peak = 0.0;
        for (int p = 0; p < m; ++p) {
            for (int t = 0; t < m; ++t) {
                if (t == p) continue;
                const DD weight = detail::dd_sigma_weight(pair.sigma, p, t);
                const DD u2 = DD(1.0) / (g_b * detail::two_prod(w2, pair.sigma[p]));
                const DD u1 = DD(1.0) / (g_b * detail::two_prod(w1, pair.sigma[t]));
                // the eta multipliers carry (-u/2)^l: the alternating sign is
                // what the term-by-term integration of the series produces
                DD bracket = detail::dd_eta_tilde(0, -(u1 + u2), m);
                DD pow_u1_half(1.0), pow_u2_half(1.0), inv_fact(1.0);
                for (int ell = 0; ell < m; ++ell) {
                    if (ell > 0) {
                        pow_u1_half = pow_u1_half * (u1 * -0.5);
                        pow_u2_half = pow_u2_half * (u2 * -0.5);
                        inv_fact = inv_fact / static_cast<double>(ell);
                    }
                    bracket = bracket - inv_fact * pow_u1_half * detail::dd_eta_tilde(ell, -u2, m);
                    bracket = bracket - inv_fact * pow_u2_half * detail::dd_eta_tilde(ell, -u1, m);
                }
                const DD term = weight * bracket * detail::pt_term_sign(p, t);
                acc = acc + term;
                cancellation_peak = std::max(cancellation_peak, std::abs(term.hi));
            }
        }
        sum = acc.value();
        if (cancellation_peak > 1e25 * std::abs(sum) && cancellation_peak > 0.0)
            throw ConditioningError("ser_closed_form: eta-tilde assembly cancels beyond working "
                                    "precision at " + detail::describe(pair, mean_snr, "mean_snr") +
                                    "; use ser_quadrature");
    }

    const double p_s = mod.a * mod.b * mean_snr * (w1 * w2 / (w2 - w1)) * sum;
    if (p_s < -1e-9 || p_s > 0.5 * mod.a + 1e-9)
        throw ConditioningError("ser_closed_form: value " + std::to_string(p_s) +
                                " outside [0, a/2] at " + detail::describe(pair, mean_snr, "mean_snr"));
    return std::min(std::max(p_s, 0.0), 0.5 * mod.a);
}

/// SER by adaptive quadrature of the c.d.f. representation
///   P = a/sqrt(pi) * int_0^inf e^{-t^2} F(t^2/(b g)) dt
/// (the substitution removes the u^{-1/2} endpoint singularity). Valid for
/// every n <= m; this is the general-antenna extension of the n = 2 closed
/// form and the oracle it is cross-checked against.
inline double ser_quadrature(const WishartPair& pair, double mean_snr, const Modulation& mod) {
    if (!(mean_snr > 0.0))
        throw DomainError("ser_quadrature: mean SNR must be > 0");
    if (!(mod.a > 0.0) || !(mod.b > 0.0))
        throw DomainError("ser_quadrature: modulation constants must be positive");
    const double g_b = mean_snr * mod.b;
    const auto integrand = [&](double t) {
        const double x = t * t / g_b;
        return (x > 0.0) ? std::exp(-t * t) * maxeig_cdf(pair, x) : 0.0;
    };
    const double t_hi = std::sqrt(static_cast<double>(pair.n * pair.m)) + 10.0;
    const QuadratureResult quad =
        integrate_adaptive(integrand, 0.0, t_hi, 1e-10, 1e-18 * mod.a, 4000);
    if (!quad.converged)
        throw ConvergenceError("ser_quadrature: quadrature did not converge (estimate " +
                               std::to_string(quad.value) + ", error " +
                               std::to_string(quad.error_estimate) + ") at " +
                               detail::describe(pair, mean_snr, "mean_snr"));
    return quad.value * mod.a / 1.7724538509055160273;
}

/// High-SNR SER asymptote for n = 2,
///   a (4m-1)!! / (b^{2m} 2^{2m+1} m! (m+1)! det(Omega)^m det(Sigma)^2) * g^{-2m};
/// its log-log slope in the mean SNR is exactly -2m.
inline double ser_high_snr(const WishartPair& pair, double mean_snr, const Modulation& mod) {
    if (pair.n != 2)
        throw ContractError("ser_high_snr: requires n = 2");
    if (!(mean_snr > 0.0))
        throw DomainError("ser_high_snr: mean SNR must be > 0");
    if (!(mod.a > 0.0) || !(mod.b > 0.0))
        throw DomainError("ser_high_snr: modulation constants must be positive");
    const int m = pair.m;
    double m_fact = 1.0, m1_fact = 1.0;
    for (int i = 2; i <= m; ++i) m_fact *= static_cast<double>(i);
    for (int i = 2; i <= m + 1; ++i) m1_fact *= static_cast<double>(i);
    const double det_omega = pair.omega.product();
    const double det_sigma = pair.sigma.product();
    return mod.a * double_factorial_odd(4 * m - 1) /
           (std::pow(mod.b, 2 * m) * std::pow(2.0, 2 * m + 1) * m_fact * m1_fact *
            std::pow(det_omega, m) * det_sigma * det_sigma) *
           std::pow(mean_snr, -2.0 * static_cast<double>(m));
}

} // namespace wmrc
