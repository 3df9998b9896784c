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

#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <set>
#include <sstream>

namespace wmrc::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool parse_real(const std::string& text, double& out) {
    if (text.empty()) return false;
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end == text.c_str() + text.size() && std::isfinite(out);
}

[[noreturn]] void fail(const std::string& message) { throw Error(message); }

} // namespace

const char* command_name(Command c) {
    switch (c) {
        case Command::cdf: return "cdf";
        case Command::pdf: return "pdf";
        case Command::outage: return "outage";
        case Command::ser: return "ser";
        case Command::ser_asymptote: return "ser-asymptote";
        case Command::validate: return "validate";
    }
    return "?";
}

Command parse_command_name(const std::string& name) {
    if (name == "cdf") return Command::cdf;
    if (name == "pdf") return Command::pdf;
    if (name == "outage") return Command::outage;
    if (name == "ser") return Command::ser;
    if (name == "ser-asymptote") return Command::ser_asymptote;
    if (name == "validate") return Command::validate;
    throw LookupError("unknown command '" + name +
                      "'; expected cdf, pdf, outage, ser, ser-asymptote or validate");
}

double parse_pi_literal(const std::string& raw) {
    const std::string text = trim(raw);
    if (text == "pi") return kPi;
    if (text.rfind("pi/", 0) == 0) {
        double denom = 0.0;
        if (!parse_real(text.substr(3), denom) || denom == 0.0)
            fail("malformed pi literal '" + text + "'");
        return kPi / denom;
    }
    double v = 0.0;
    if (!parse_real(text, v))
        fail("malformed number '" + text + "' (expected a real, 'pi' or 'pi/<real>')");
    return v;
}

namespace {

enum class SnrUnit { db, lin };

bool split_snr_suffix(const std::string& text, std::string& number, SnrUnit& unit) {
    auto ends_with = [&](const char* suffix) {
        const std::size_t n = std::strlen(suffix);
        if (text.size() <= n) return false;
        for (std::size_t i = 0; i < n; ++i)
            if (std::tolower(static_cast<unsigned char>(text[text.size() - n + i])) !=
                std::tolower(static_cast<unsigned char>(suffix[i])))
                return false;
        return true;
    };
    if (ends_with("db")) {
        number = text.substr(0, text.size() - 2);
        unit = SnrUnit::db;
        return true;
    }
    if (ends_with("lin")) {
        number = text.substr(0, text.size() - 3);
        unit = SnrUnit::lin;
        return true;
    }
    return false;
}

double to_linear(double v, SnrUnit unit) {
    return unit == SnrUnit::db ? std::pow(10.0, v / 10.0) : v;
}

} // namespace

double parse_snr_literal(const std::string& raw) {
    const std::string text = trim(raw);
    std::string number;
    SnrUnit unit;
    if (!split_snr_suffix(text, number, unit))
        fail("SNR-like value '" + text + "' needs an explicit dB or lin suffix");
    double v = 0.0;
    if (!parse_real(trim(number), v))
        fail("malformed SNR value '" + text + "'");
    const double linear = to_linear(v, unit);
    if (!(linear > 0.0))
        fail("SNR value '" + text + "' must be positive (linear scale)");
    return linear;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    std::istringstream is(text);
    while (std::getline(is, current, sep)) parts.push_back(trim(current));
    return parts;
}

std::vector<double> expand_range(double lo, double step, double hi, const std::string& text) {
    if (!(step > 0.0) || hi < lo)
        fail("malformed range '" + text + "' (need start <= stop and step > 0)");
    std::vector<double> values;
    for (int i = 0;; ++i) {
        const double v = lo + step * static_cast<double>(i);
        if (v > hi + 0.5 * step) break;
        values.push_back(std::min(v, hi));
        if (values.size() > 100000) fail("range '" + text + "' expands to too many points");
    }
    return values;
}

} // namespace

std::vector<double> parse_snr_list(const std::string& raw) {
    const std::string text = trim(raw);
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) fail("malformed range '" + text + "' (expected a:step:b<unit>)");
        std::string number;
        SnrUnit unit;
        if (!split_snr_suffix(parts[2], number, unit))
            fail("range '" + text + "' needs a dB or lin suffix on the closing value");
        double lo = 0.0, step = 0.0, hi = 0.0;
        if (!parse_real(parts[0], lo) || !parse_real(parts[1], step) || !parse_real(trim(number), hi))
            fail("malformed range '" + text + "'");
        std::vector<double> linear;
        for (double v : expand_range(lo, step, hi, text)) {
            const double x = to_linear(v, unit);
            if (!(x > 0.0)) fail("range '" + text + "' contains non-positive linear values");
            linear.push_back(x);
        }
        return linear;
    }
    std::vector<double> values;
    for (const auto& part : split(text, ','))
        values.push_back(parse_snr_literal(part));
    if (values.empty()) fail("empty SNR list");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] <= values[i - 1]) fail("SNR list '" + text + "' must be strictly ascending");
    return values;
}

std::vector<double> parse_real_list(const std::string& raw) {
    const std::string text = trim(raw);
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) fail("malformed range '" + text + "' (expected a:step:b)");
        double lo = 0.0, step = 0.0, hi = 0.0;
        if (!parse_real(parts[0], lo) || !parse_real(parts[1], step) || !parse_real(parts[2], hi))
            fail("malformed range '" + text + "'");
        return expand_range(lo, step, hi, text);
    }
    std::vector<double> values;
    for (const auto& part : split(text, ',')) {
        double v = 0.0;
        if (!parse_real(part, v)) fail("malformed number '" + part + "'");
        values.push_back(v);
    }
    if (values.empty()) fail("empty list");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] <= values[i - 1]) fail("list '" + text + "' must be strictly ascending");
    return values;
}

SweepSpec parse_config(const std::string& text) {
    static const std::set<std::string> known_keys = {
        "command", "nt",   "nr",        "spacing", "angle-rx", "angle-tx", "spread-rx", "spread-tx",
        "snr",     "grid", "threshold", "mod",     "samples",  "seed",     "out"};
    SweepSpec spec;
    std::set<std::string> seen;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto comment = line.find('#');
        std::string payload = (comment == std::string::npos) ? line : line.substr(0, comment);
        if (trim(payload).empty()) continue;
        const auto eq = payload.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value'", line_no, payload.find_first_not_of(" \t") + 1);
        const std::string key = trim(payload.substr(0, eq));
        const std::string value = trim(payload.substr(eq + 1));
        const std::size_t key_col = payload.find_first_not_of(" \t") + 1;
        const std::size_t value_col = eq + 2;
        if (key.empty())
            throw ParseError("missing key before '='", line_no, key_col);
        if (!known_keys.count(key))
            throw ParseError("unknown key '" + key + "'", line_no, key_col);
        if (!seen.insert(key).second)
            throw ParseError("duplicate key '" + key + "'", line_no, key_col);
        if (value.empty())
            throw ParseError("missing value for key '" + key + "'", line_no, value_col);
        try {
            if (key == "command") {
                spec.command = parse_command_name(value);
            } else if (key == "nt" || key == "nr") {
                char* end = nullptr;
                const long v = std::strtol(value.c_str(), &end, 10);
                if (end != value.c_str() + value.size() || v < 1)
                    fail("antenna count must be a positive integer, got '" + value + "'");
                (key == "nt" ? spec.nt : spec.nr) = static_cast<int>(v);
            } else if (key == "spacing") {
                spec.spacing = parse_pi_literal(value);
                if (!(spec.spacing > 0.0)) fail("spacing must be > 0");
            } else if (key == "angle-rx") {
                spec.angle_rx = parse_pi_literal(value);
            } else if (key == "angle-tx") {
                spec.angle_tx = parse_pi_literal(value);
            } else if (key == "spread-rx") {
                spec.spread_rx = parse_pi_literal(value);
                if (!(*spec.spread_rx >= 0.0)) fail("spread-rx must be >= 0");
            } else if (key == "spread-tx") {
                spec.spread_tx = parse_pi_literal(value);
                if (!(*spec.spread_tx >= 0.0)) fail("spread-tx must be >= 0");
            } else if (key == "snr") {
                spec.snr_linear = parse_snr_list(value);
            } else if (key == "grid") {
                spec.x_grid = parse_real_list(value);
            } else if (key == "threshold") {
                spec.thresholds_linear = parse_snr_list(value);
            } else if (key == "mod") {
                spec.modulation = value;
            } else if (key == "samples") {
                char* end = nullptr;
                const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
                if (end != value.c_str() + value.size())
                    fail("samples must be a non-negative integer, got '" + value + "'");
                spec.samples = v;
            } else if (key == "seed") {
                char* end = nullptr;
                const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
                if (end != value.c_str() + value.size())
                    fail("seed must be a non-negative integer, got '" + value + "'");
                spec.seed = v;
            } else if (key == "out") {
                spec.out_path = value;
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), line_no, value_col);
        }
    }
    return spec;
}

SweepSpec merge_spec(SweepSpec base, const SpecOverrides& o) {
    if (o.values.command) base.command = o.values.command;
    if (o.nt) base.nt = o.values.nt;
    if (o.nr) base.nr = o.values.nr;
    if (o.spacing) base.spacing = o.values.spacing;
    if (o.angle_rx) base.angle_rx = o.values.angle_rx;
    if (o.angle_tx) base.angle_tx = o.values.angle_tx;
    if (o.values.spread_rx) base.spread_rx = o.values.spread_rx;
    if (o.values.spread_tx) base.spread_tx = o.values.spread_tx;
    if (o.snr) base.snr_linear = o.values.snr_linear;
    if (o.grid) base.x_grid = o.values.x_grid;
    if (o.threshold) base.thresholds_linear = o.values.thresholds_linear;
    if (o.mod) base.modulation = o.values.modulation;
    if (o.samples) base.samples = o.values.samples;
    if (o.seed) base.seed = o.values.seed;
    if (o.out) base.out_path = o.values.out_path;
    return base;
}

} // namespace wmrc::cli
