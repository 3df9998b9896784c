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

#include "config.hpp"

namespace wmrc::cli {

inline constexpr const char* kToolVersion = "wishart-mrc 0.1.0";

/// Exit codes: 0 success, 1 failed validation or I/O, 2 usage/parse errors,
/// 3 numerical conditioning failures.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Executes one sweep: writes the CSV (or validation report) to
/// spec.out_path and returns an exit code. Errors are reported on stderr.
int run(const SweepSpec& spec);

/// Full command-line entry point (argument parsing + run).
int cli_main(int argc, const char* const* argv);

} // namespace wmrc::cli
