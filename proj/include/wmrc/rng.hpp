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

#include <cmath>
#include <complex>
#include <cstdint>

namespace wmrc {

/// Counter-seeded SplitMix64 stream. A stream is fully determined by
/// (seed, stream_id); Monte-Carlo code assigns one stream per draw index, so
/// results are bitwise reproducible for a given seed regardless of how draws
/// are partitioned across workers.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) {
        state_ = mix(seed ^ 0x9E3779B97F4A7C15ULL);
        state_ = mix(state_ ^ mix(stream + 0xD1B54A32D192ED03ULL));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform double in (0, 1] with 53-bit resolution.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard real Gaussian N(0, 1) via Box-Muller (one uniform pair per value).
    double next_gaussian() {
        const double r = std::sqrt(-2.0 * std::log(next_unit()));
        return r * std::cos(6.283185307179586477 * next_unit());
    }

    /// Circularly-symmetric complex Gaussian with E|z|^2 = 1; real and
    /// imaginary parts are each N(0, 1/2).
    std::complex<double> next_complex_gaussian() {
        const double r = std::sqrt(-std::log(next_unit()));
        const double phi = 6.283185307179586477 * next_unit();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace wmrc
