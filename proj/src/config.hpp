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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wmrc/errors.hpp"

namespace wmrc::cli {

enum class Command { cdf, pdf, outage, ser, ser_asymptote, validate };

const char* command_name(Command c);
Command parse_command_name(const std::string& name);

/// One sweep request: antenna/correlation-model parameters, grids, modulation
/// and sampling controls. Angles and spreads are radians / radians^2 and
/// accept the "pi/K" literal syntax; SNR-like quantities are stored linear
/// and require an explicit dB or lin suffix in all inputs.
struct SweepSpec {
    std::optional<Command> command;
    int nt = 2;
    int nr = 2;
    double spacing = 0.5;                  ///< antenna spacing, wavelengths
    double angle_rx = 1.5707963267948966;  ///< mean angle of arrival, rad
    double angle_tx = 1.5707963267948966;  ///< mean angle of departure, rad
    std::optional<double> spread_rx;       ///< receive angle-spread variance, rad^2
    std::optional<double> spread_tx;       ///< transmit angle-spread variance, rad^2
    std::vector<double> snr_linear;        ///< mean SNR grid (linear, ascending)
    std::vector<double> x_grid;            ///< output-SNR grid for cdf/pdf
    std::vector<double> thresholds_linear; ///< outage thresholds (linear)
    std::string modulation;                ///< empty = none requested
    std::uint64_t samples = 100000;        ///< 0 disables empirical columns
    std::uint64_t seed = 0;
    std::string out_path; ///< empty = "<command>.csv"
};

/// Scalar literal: "pi", "pi/<real>", or a plain real number.
double parse_pi_literal(const std::string& text);

/// SNR-like scalar with mandatory unit suffix: "<real>dB" or "<real>lin".
double parse_snr_literal(const std::string& text);

/// List "v1,v2,..." (each element suffixed) or range "a:step:b<unit>" with the
/// suffix on the closing value applying to the whole range; dB ranges step
/// additively in dB.
std::vector<double> parse_snr_list(const std::string& text);

/// Unitless list "v1,v2,..." or range "a:step:b".
std::vector<double> parse_real_list(const std::string& text);

/// Parses the key = value configuration document (# starts a comment).
/// Unknown or duplicate keys and malformed values raise ParseError with the
/// 1-based line/column of the offence.
SweepSpec parse_config(const std::string& text);

/// Applies `overrides` on top of `base`: any field set in `overrides` wins.
/// `explicit_keys` marks which override fields were actually given.
struct SpecOverrides {
    SweepSpec values;
    bool nt = false, nr = false, spacing = false, angle_rx = false, angle_tx = false;
    bool snr = false, grid = false, threshold = false, mod = false;
    bool samples = false, seed = false, out = false;
};

SweepSpec merge_spec(SweepSpec base, const SpecOverrides& overrides);

} // namespace wmrc::cli
