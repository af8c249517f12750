// Copyright 2026 The mermin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/// @file
/// Run configuration: flat `key = value` lines with [noise] and [device]
/// sections. `#` starts a comment. Unknown sections and keys are errors.
///
///     n = 4
///     mode = sampled          # exact | sampled
///     reduction = classes     # classes | full-terms
///     output = table          # json | table | csv
///     shots = 8192            # default 1024 for n = 3, else 8192
///     seed = 1
///     phase = optimal         # optimal | hardware | 0..7 (units of pi/4)
///
///     [noise]
///     depol_1q = 0
///     depol_2q = calibrated   # or a probability
///     readout_flip = 0
///     calibration_target = 2.85
///
///     [device]
///     cnot_target = 2
///     robustness_rank = 0 1 2 3

#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mermin/degradation.hpp"
#include "mermin/error.hpp"
#include "mermin/experiment.hpp"
#include "mermin/noise.hpp"
#include "mermin/transpiler.hpp"

namespace mermin {

enum class Reduction { Classes, FullTerms };
enum class OutputFormat { Json, Table, Csv };

struct RunConfig {
    std::size_t n = 3;
    std::optional<std::uint64_t> shots;
    std::uint64_t seed = 1;
    RunMode mode = RunMode::Exact;
    Reduction reduction = Reduction::Classes;
    OutputFormat output = OutputFormat::Json;
    /// Empty: the maximising phase. Otherwise units of pi/4, 0..7.
    std::optional<int> phase;
    bool hardware_phase = false;

    NoiseModel noise;
    /// depol_2q = calibrated: fit depol_2q so the exact n=3 value equals
    /// calibration_target, other noise parameters as given.
    bool calibrate_depol_2q = false;
    double calibration_target = 2.85;

    std::optional<std::size_t> cnot_target;
    std::optional<std::vector<std::size_t>> robustness_rank;

    [[nodiscard]] DeviceModel device() const {
        DeviceModel d = DeviceModel::default_for(n);
        if (cnot_target) {
            d.cnot_target = *cnot_target;
        }
        if (robustness_rank) {
            d.robustness_rank = *robustness_rank;
        }
        d.validate();
        return d;
    }
};

namespace detail {

[[nodiscard]] inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
[[nodiscard]] T config_integer(std::string_view v, std::size_t line) {
    T out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ParseError("expected a non-negative integer, got '" + std::string(v) + "'", line);
    }
    return out;
}

[[nodiscard]] inline double config_probability(std::string_view v, std::size_t line) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ParseError("expected a number, got '" + std::string(v) + "'", line);
    }
    if (!(out >= 0.0 && out <= 1.0)) {
        throw ParseError("probability must lie in [0, 1]", line);
    }
    return out;
}

} // namespace detail

[[nodiscard]] inline RunConfig parse_run_config(std::string_view text) {
    RunConfig cfg;
    std::string section;
    std::set<std::string> seen;
    bool have_n = false;
    std::size_t device_line = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ParseError("unterminated section header", line_no);
            }
            section = std::string(detail::trim(line.substr(1, line.size() - 2)));
            if (section != "noise" && section != "device") {
                throw ParseError("unknown section [" + section + "]", line_no);
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("expected 'key = value'", line_no);
        }
        const std::string key(detail::trim(line.substr(0, eq)));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ParseError("expected 'key = value'", line_no);
        }
        const std::string qualified = section.empty() ? key : section + "." + key;
        if (!seen.insert(qualified).second) {
            throw ParseError("duplicate key '" + qualified + "'", line_no);
        }

        if (section.empty()) {
            if (key == "n") {
                cfg.n = detail::config_integer<std::size_t>(value, line_no);
                if (cfg.n < 3 || cfg.n > 5) {
                    throw ParseError("n must be 3, 4 or 5", line_no);
                }
                have_n = true;
            } else if (key == "shots") {
                cfg.shots = detail::config_integer<std::uint64_t>(value, line_no);
                if (*cfg.shots == 0) {
                    throw ParseError("shots must be at least 1", line_no);
                }
            } else if (key == "seed") {
                cfg.seed = detail::config_integer<std::uint64_t>(value, line_no);
            } else if (key == "mode") {
                if (value == "exact") {
                    cfg.mode = RunMode::Exact;
                } else if (value == "sampled") {
                    cfg.mode = RunMode::Sampled;
                } else {
                    throw ParseError("mode must be exact or sampled", line_no);
                }
            } else if (key == "reduction") {
                if (value == "classes") {
                    cfg.reduction = Reduction::Classes;
                } else if (value == "full-terms") {
                    cfg.reduction = Reduction::FullTerms;
                } else {
                    throw ParseError("reduction must be classes or full-terms", line_no);
                }
            } else if (key == "output") {
                if (value == "json") {
                    cfg.output = OutputFormat::Json;
                } else if (value == "table") {
                    cfg.output = OutputFormat::Table;
                } else if (value == "csv") {
                    cfg.output = OutputFormat::Csv;
                } else {
                    throw ParseError("output must be json, table or csv", line_no);
                }
            } else if (key == "phase") {
                if (value == "optimal") {
                    cfg.phase.reset();
                    cfg.hardware_phase = false;
                } else if (value == "hardware") {
                    cfg.hardware_phase = true;
                } else {
                    const int k = detail::config_integer<int>(value, line_no);
                    if (k > 7) {
                        throw ParseError("phase must be optimal, hardware or 0..7", line_no);
                    }
                    cfg.phase = k;
                }
            } else {
                throw ParseError("unknown key '" + key + "'", line_no);
            }
        } else if (section == "noise") {
            if (key == "depol_1q") {
                cfg.noise.depol_1q = detail::config_probability(value, line_no);
            } else if (key == "depol_2q") {
                if (value == "calibrated") {
                    cfg.calibrate_depol_2q = true;
                } else {
                    cfg.noise.depol_2q = detail::config_probability(value, line_no);
                }
            } else if (key == "readout_flip") {
                cfg.noise.readout_flip = detail::config_probability(value, line_no);
            } else if (key == "calibration_target") {
                double v = 0.0;
                const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
                if (ec != std::errc{} || ptr != value.data() + value.size() || !(v > 0.0)) {
                    throw ParseError("calibration_target must be a positive number", line_no);
                }
                cfg.calibration_target = v;
            } else {
                throw ParseError("unknown key '" + qualified + "'", line_no);
            }
        } else {
            device_line = line_no;
            if (key == "cnot_target") {
                cfg.cnot_target = detail::config_integer<std::size_t>(value, line_no);
            } else if (key == "robustness_rank") {
                std::vector<std::size_t> rank;
                std::size_t i = 0;
                while (i < value.size()) {
                    const auto j = value.find_first_of(" \t,", i);
                    const auto tok = value.substr(i, j == std::string_view::npos ? value.npos : j - i);
                    if (!tok.empty()) {
                        rank.push_back(detail::config_integer<std::size_t>(tok, line_no));
                    }
                    if (j == std::string_view::npos) {
                        break;
                    }
                    i = j + 1;
                }
                cfg.robustness_rank = std::move(rank);
            } else {
                throw ParseError("unknown key '" + qualified + "'", line_no);
            }
        }
    }
    if (!have_n) {
        throw ParseError("missing required key 'n'", 1);
    }
    try {
        (void)cfg.device();
    } catch (const Error &e) {
        throw ParseError(std::string("invalid [device]: ") + e.what(),
                         device_line == 0 ? line_no : device_line);
    }
    return cfg;
}

/// Resolves the phase choice and, if requested, calibrates depol_2q on the
/// n=3 experiment (same device ranking defaults, noise base from `cfg`).
[[nodiscard]] inline PlanOptions plan_options(const RunConfig &cfg,
                                              std::optional<Calibration> *calibration = nullptr) {
    PlanOptions o;
    o.shots = cfg.shots;
    o.seed = cfg.seed;
    o.device = cfg.device();
    o.noise = cfg.noise;
    if (cfg.hardware_phase) {
        o.prep_quarter_turns = hardware_phase(cfg.n);
    } else {
        o.prep_quarter_turns = cfg.phase;
    }
    if (cfg.calibrate_depol_2q) {
        auto cal = calibrate_depol_2q(cfg.noise, cfg.calibration_target);
        o.noise = cal.model;
        if (calibration != nullptr) {
            *calibration = cal;
        }
    }
    return o;
}

} // namespace mermin
