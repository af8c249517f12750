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
/// End-to-end Mermin experiment: one lowered circuit per prime-count class
/// (or per term), counts or exact probabilities, parity estimates, weighted
/// combination, error bars and verdicts.
///
/// Error model. A class expectation E is the mean of a +/-1 variable over
/// `shots` independent shots, so its standard error is sqrt((1 - E^2)/shots).
/// This is the full multinomial variance of the parity sum; per-probability
/// errors sqrt(p(1-p)/N) are exposed separately. Classes are independent and
/// combine in quadrature with their weights.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mermin/circuit.hpp"
#include "mermin/error.hpp"
#include "mermin/mermin.hpp"
#include "mermin/noise.hpp"
#include "mermin/sampling.hpp"
#include "mermin/statevector.hpp"
#include "mermin/transpiler.hpp"

namespace mermin {

/// sqrt(p(1-p)/N) for one outcome probability.
[[nodiscard]] inline double stderr_probability(double p, std::uint64_t shots) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error("probability must lie in [0, 1]");
    }
    if (shots == 0) {
        throw Error("shots must be at least 1");
    }
    return std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
}

struct ParityEstimate {
    double expectation = 0.0;
    double stderr = 0.0;
};

[[nodiscard]] inline double parity_stderr(double expectation, std::uint64_t shots) {
    return std::sqrt(std::max(0.0, 1.0 - expectation * expectation) / static_cast<double>(shots));
}

/// Even-parity frequency minus odd-parity frequency.
[[nodiscard]] inline ParityEstimate parity_expectation(const CountsTable &t) {
    if (t.shots == 0 || t.counts.empty()) {
        throw Error("cannot estimate a parity from an empty counts table");
    }
    t.validate();
    std::int64_t signed_total = 0;
    for (const auto &[bits, c] : t.counts) {
        const auto ones = std::count(bits.begin(), bits.end(), '1');
        signed_total += (ones % 2 == 0) ? static_cast<std::int64_t>(c) : -static_cast<std::int64_t>(c);
    }
    const double e = static_cast<double>(signed_total) / static_cast<double>(t.shots);
    return {e, parity_stderr(e, t.shots)};
}

/// Same estimator on measured relative frequencies (which need not be
/// integral multiples of 1/shots); `shots` only sets the error bar.
[[nodiscard]] inline ParityEstimate
parity_expectation(const std::map<std::string, double> &frequencies, std::uint64_t shots) {
    if (frequencies.empty() || shots == 0) {
        throw Error("cannot estimate a parity from an empty frequency table");
    }
    double e = 0.0;
    for (const auto &[bits, f] : frequencies) {
        const auto ones = std::count(bits.begin(), bits.end(), '1');
        e += (ones % 2 == 0) ? f : -f;
    }
    return {e, parity_stderr(std::clamp(e, -1.0, 1.0), shots)};
}

/// One measured circuit's contribution: a class representative, or a single
/// term in a full-term run.
struct ComponentEstimate {
    std::size_t prime_count = 0;
    Index prime_mask = 0;
    std::int64_t weight = 0;
    double expectation = 0.0;
    double stderr = 0.0;
    std::optional<CountsTable> counts;
};

struct Verdicts {
    bool violates_lr = false;
    /// (value - lr_bound) / stderr; empty when stderr is 0.
    std::optional<double> lr_sigma_distance;
    /// value > 8, reported for n = 4 only.
    std::optional<bool> exceeds_genuine_threshold;
};

struct MerminEstimate {
    std::size_t n = 0;
    std::vector<ComponentEstimate> components;
    double value = 0.0;
    double stderr = 0.0;
    double lr_bound = 0.0;
    double qm_bound = 0.0;
    Verdicts verdicts;
};

inline constexpr double kGenuineFourPartyThreshold = 8.0;

/// value = sum weight * expectation; stderr = sqrt(sum (weight * stderr)^2).
[[nodiscard]] inline MerminEstimate combine(std::vector<ComponentEstimate> components) {
    MerminEstimate out;
    double var = 0.0;
    for (const auto &c : components) {
        if (std::abs(c.expectation) > 1.0 + 1e-12) {
            throw Error("component expectation outside [-1, 1]");
        }
        out.value += static_cast<double>(c.weight) * c.expectation;
        var += std::pow(static_cast<double>(c.weight) * c.stderr, 2);
    }
    out.stderr = std::sqrt(var);
    out.components = std::move(components);
    return out;
}

/// Pairs per-class parity estimates with their classes (matched by prime
/// count) and combines them.
[[nodiscard]] inline MerminEstimate
combine(const std::vector<std::pair<std::size_t, ParityEstimate>> &per_class,
        const std::vector<SymmetryClass> &classes) {
    if (per_class.size() != classes.size()) {
        throw Error("need exactly one estimate per symmetry class");
    }
    std::vector<ComponentEstimate> components;
    for (const auto &cls : classes) {
        const auto it = std::find_if(per_class.begin(), per_class.end(),
                                     [&](const auto &e) { return e.first == cls.prime_count; });
        if (it == per_class.end()) {
            throw Error("no estimate for the class with " + std::to_string(cls.prime_count) +
                        " primes");
        }
        components.push_back({cls.prime_count, cls.representative_mask, cls.signed_weight,
                              it->second.expectation, it->second.stderr, std::nullopt});
    }
    return combine(std::move(components));
}

inline void attach_verdicts(MerminEstimate &e, std::size_t n, double lr, double qm) {
    e.n = n;
    e.lr_bound = lr;
    e.qm_bound = qm;
    e.verdicts.violates_lr = e.value - lr > 0.0;
    e.verdicts.lr_sigma_distance =
        e.stderr > 0.0 ? std::optional<double>((e.value - lr) / e.stderr) : std::nullopt;
    e.verdicts.exceeds_genuine_threshold =
        n == 4 ? std::optional<bool>(e.value > kGenuineFourPartyThreshold) : std::nullopt;
}

enum class RunMode { Exact, Sampled };

struct PlannedCircuit {
    SymmetryClass cls;
    Circuit circuit;
};

struct ExperimentPlan {
    std::size_t n = 0;
    int prep_quarter_turns = 0;
    MerminPolynomial polynomial;
    std::vector<PlannedCircuit> classes;
    std::uint64_t shots_per_class = 0;
    std::uint64_t seed = 0;
    DeviceModel device;
    NoiseModel noise;
};

struct PlanOptions {
    /// GHZ relative phase in units of pi/4; empty means the phase that
    /// maximises <M_n> (see maximizing_phase).
    std::optional<int> prep_quarter_turns;
    /// Empty means 1024 shots for n = 3 and 8192 otherwise.
    std::optional<std::uint64_t> shots;
    std::uint64_t seed = 1;
    std::optional<DeviceModel> device;
    NoiseModel noise;
};

[[nodiscard]] inline std::uint64_t default_shots(std::size_t n) { return n == 3 ? 1024 : 8192; }

/// GHZ preparation with the fan-out rooted at the device's CNOT target, the
/// measurement setting for `prime_mask`, lowered onto the device.
[[nodiscard]] inline Circuit setting_circuit(std::size_t n, int quarter_turns, Index prime_mask,
                                             const DeviceModel &device) {
    const Circuit ghz = ghz_circuit(n, quarter_turns, device.cnot_target);
    return transpile(with_setting(ghz, MeasurementSetting(n, prime_mask)), device).circuit;
}

[[nodiscard]] inline ExperimentPlan make_plan(std::size_t n, const PlanOptions &options = {}) {
    MerminPolynomial poly = canonical_polynomial(n);
    const DeviceModel device = options.device.value_or(DeviceModel::default_for(n));
    if (device.n_qubits != n) {
        throw Error("device qubit count must equal n");
    }
    options.noise.validate();
    const int phase = options.prep_quarter_turns.value_or(maximizing_phase(poly).quarter_turns);
    const std::uint64_t shots = options.shots.value_or(default_shots(n));
    if (shots == 0) {
        throw Error("shots must be at least 1");
    }
    std::vector<PlannedCircuit> classes;
    for (const auto &cls : symmetry_classes(poly)) {
        classes.push_back({cls, setting_circuit(n, phase, cls.representative_mask, device)});
    }
    return ExperimentPlan{n,      phase,          std::move(poly), std::move(classes),
                          shots,  options.seed,   device,          options.noise};
}

namespace detail {

[[nodiscard]] inline OutcomeDistribution circuit_distribution(const Circuit &c,
                                                              const NoiseModel &m) {
    if (m.is_zero()) {
        return outcome_distribution(c);
    }
    return noisy_distribution(c, m);
}

[[nodiscard]] inline ComponentEstimate measure(const Circuit &c, const NoiseModel &noise,
                                               RunMode mode, std::uint64_t shots,
                                               std::uint64_t seed) {
    const auto dist = circuit_distribution(c, noise);
    ComponentEstimate out;
    if (mode == RunMode::Exact) {
        out.expectation = std::clamp(dist.parity_expectation(), -1.0, 1.0);
        out.stderr = 0.0;
        return out;
    }
    auto counts = sample_counts(dist, shots, seed);
    const auto est = parity_expectation(counts);
    out.expectation = est.expectation;
    out.stderr = est.stderr;
    out.counts = std::move(counts);
    return out;
}

} // namespace detail

/// Runs one circuit per symmetry class. Class i draws its shots with seed
/// (plan.seed XOR i).
[[nodiscard]] inline MerminEstimate run_plan(const ExperimentPlan &plan, RunMode mode) {
    std::vector<ComponentEstimate> components;
    for (std::size_t i = 0; i < plan.classes.size(); ++i) {
        const auto &pc = plan.classes[i];
        auto c = detail::measure(pc.circuit, plan.noise, mode, plan.shots_per_class,
                                 plan.seed ^ static_cast<std::uint64_t>(i));
        c.prime_count = pc.cls.prime_count;
        c.prime_mask = pc.cls.representative_mask;
        c.weight = pc.cls.signed_weight;
        components.push_back(std::move(c));
    }
    auto est = combine(std::move(components));
    attach_verdicts(est, plan.n, lr_bound(plan.polynomial), qm_bound(plan.polynomial));
    return est;
}

/// Runs one circuit per polynomial term, with no exchange-symmetry
/// assumption. Term i draws its shots with seed (plan.seed XOR i).
[[nodiscard]] inline MerminEstimate full_term_run(const ExperimentPlan &plan, RunMode mode) {
    std::vector<ComponentEstimate> components;
    const auto &terms = plan.polynomial.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Circuit c =
            setting_circuit(plan.n, plan.prep_quarter_turns, terms[i].prime_mask, plan.device);
        auto comp = detail::measure(c, plan.noise, mode, plan.shots_per_class,
                                    plan.seed ^ static_cast<std::uint64_t>(i));
        comp.prime_count = static_cast<std::size_t>(std::popcount(terms[i].prime_mask));
        comp.prime_mask = terms[i].prime_mask;
        comp.weight = terms[i].coefficient;
        components.push_back(std::move(comp));
    }
    auto est = combine(std::move(components));
    attach_verdicts(est, plan.n, lr_bound(plan.polynomial), qm_bound(plan.polynomial));
    return est;
}

/// Prints integers bare and everything else with four decimals
/// (4, 11.3137, 16).
[[nodiscard]] inline std::string format_bound(double v) {
    std::ostringstream out;
    if (std::abs(v - std::round(v)) < 1e-9) {
        out << static_cast<long long>(std::llround(v));
    } else {
        out << std::fixed << std::setprecision(4) << v;
    }
    return out.str();
}

inline void to_json(nlohmann::json &j, const ComponentEstimate &c) {
    j = nlohmann::json{{"prime_count", c.prime_count},
                       {"prime_mask", c.prime_mask},
                       {"weight", c.weight},
                       {"expectation", c.expectation},
                       {"stderr", c.stderr}};
    if (c.counts) {
        j["shots"] = c.counts->shots;
        j["seed"] = c.counts->seed;
        j["rng"] = c.counts->rng_id;
        j["counts"] = c.counts->counts;
    }
}

inline void to_json(nlohmann::json &j, const MerminEstimate &e) {
    nlohmann::json verdicts{{"violates_lr", e.verdicts.violates_lr}};
    verdicts["lr_sigma_distance"] = e.verdicts.lr_sigma_distance
                                        ? nlohmann::json(*e.verdicts.lr_sigma_distance)
                                        : nlohmann::json(nullptr);
    if (e.verdicts.exceeds_genuine_threshold) {
        verdicts["exceeds_genuine_threshold"] = *e.verdicts.exceeds_genuine_threshold;
    }
    j = nlohmann::json{{"n", e.n},
                       {"value", e.value},
                       {"stderr", e.stderr},
                       {"lr_bound", e.lr_bound},
                       {"qm_bound", e.qm_bound},
                       {"components", e.components},
                       {"verdicts", std::move(verdicts)}};
}

/// Human-readable summary with the columns n | LR | QM | EXP +/- err, then a
/// verdict line.
[[nodiscard]] inline std::string format_table(const std::vector<MerminEstimate> &rows) {
    std::ostringstream out;
    out << "n | LR | QM      | EXP\n";
    out << "--+----+---------+------------------\n";
    for (const auto &e : rows) {
        std::ostringstream exp;
        exp << std::fixed << std::setprecision(3) << e.value << " +/- " << e.stderr;
        out << std::left << std::setw(2) << e.n << "| " << std::setw(3) << format_bound(e.lr_bound)
            << "| " << std::setw(8) << format_bound(e.qm_bound) << "| " << exp.str() << '\n';
    }
    for (const auto &e : rows) {
        out << "n=" << e.n << ": ";
        if (e.verdicts.lr_sigma_distance) {
            out << (e.verdicts.violates_lr ? "violates" : "does not violate")
                << " local realism at " << std::fixed << std::setprecision(2)
                << *e.verdicts.lr_sigma_distance << " sigma";
        } else {
            out << (e.verdicts.violates_lr ? "violates" : "does not violate")
                << " local realism (exact, no shot noise)";
        }
        if (e.verdicts.exceeds_genuine_threshold) {
            out << "; genuine 4-party nonlocality (M4 > 8): "
                << (*e.verdicts.exceeds_genuine_threshold ? "yes" : "no");
        }
        out << '\n';
    }
    return out.str();
}

} // namespace mermin
