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
/// Exact Mermin values as a function of the noise model, and calibration of
/// the two-qubit depolarizing rate against a measured value.

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mermin/error.hpp"
#include "mermin/experiment.hpp"
#include "mermin/noise.hpp"

namespace mermin {

/// Exact (unsampled) <M_n> through the full lowered pipeline.
[[nodiscard]] inline double exact_mermin_value(std::size_t n, const NoiseModel &m,
                                               PlanOptions options = {}) {
    options.noise = m;
    return run_plan(make_plan(n, options), RunMode::Exact).value;
}

[[nodiscard]] inline std::vector<std::pair<NoiseModel, double>>
degradation_curve(std::size_t n, const std::vector<NoiseModel> &grid, const PlanOptions &options = {}) {
    if (n < 3 || n > 5) {
        throw Error("degradation curve is defined for n = 3, 4, 5");
    }
    std::vector<std::pair<NoiseModel, double>> out;
    out.reserve(grid.size());
    for (const auto &m : grid) {
        out.emplace_back(m, exact_mermin_value(n, m, options));
    }
    return out;
}

struct Calibration {
    NoiseModel model;
    double value = 0.0;
    std::size_t iterations = 0;
};

/// Bisects depol_2q in [0, 1] (other parameters from `base`) until the exact
/// n-party value matches `target` within `tol`. The value is monotone
/// non-increasing in depol_2q, so bisection brackets are valid.
[[nodiscard]] inline Calibration calibrate_depol_2q(const NoiseModel &base, double target,
                                                    std::size_t n = 3, double tol = 1e-6,
                                                    std::size_t max_iterations = 200) {
    NoiseModel lo_model = base;
    lo_model.depol_2q = 0.0;
    NoiseModel hi_model = base;
    hi_model.depol_2q = 1.0;
    const double at_lo = exact_mermin_value(n, lo_model);
    const double at_hi = exact_mermin_value(n, hi_model);
    if (target > at_lo || target < at_hi) {
        throw Error("calibration target is outside the reachable range of depol_2q");
    }
    double lo = 0.0;
    double hi = 1.0;
    Calibration cal{lo_model, at_lo, 0};
    for (std::size_t it = 1; it <= max_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        NoiseModel m = base;
        m.depol_2q = mid;
        const double v = exact_mermin_value(n, m);
        cal = {m, v, it};
        if (std::abs(v - target) <= tol) {
            return cal;
        }
        if (v > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return cal;
}

} // namespace mermin
