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


// mermin: command-line front end.
//
// Exit codes: 0 success, 1 bad input (parse errors, bad flags, I/O),
// 2 circuit violates the device constraints.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mermin/all.hpp"

namespace {

using namespace mermin;

constexpr int kExitInput = 1;
constexpr int kExitConstraint = 2;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes to a sibling temp file and renames, so a failed write never leaves
// a partial file behind.
void write_file(const std::string &path, const std::string &content) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write '" + path + "'");
        }
        out << content;
        if (!out.flush()) {
            std::filesystem::remove(tmp);
            throw Error("cannot write '" + path + "'");
        }
    }
    std::filesystem::rename(tmp, target);
}

void emit(const std::string &path, const std::string &content) {
    if (path.empty() || path == "-") {
        std::cout << content;
    } else {
        write_file(path, content);
    }
}

std::vector<std::size_t> parse_rank(const std::string &text) {
    std::vector<std::size_t> out;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        std::istringstream words(tok);
        std::size_t q = 0;
        while (words >> q) {
            out.push_back(q);
        }
        if (!words.eof()) {
            throw Error("bad robustness rank '" + text + "'");
        }
    }
    return out;
}

DeviceModel device_from_flags(std::size_t n, const std::optional<std::size_t> &target,
                              const std::string &rank) {
    DeviceModel d = DeviceModel::default_for(n);
    if (target) {
        d.cnot_target = *target;
    }
    if (!rank.empty()) {
        d.robustness_rank = parse_rank(rank);
    }
    d.validate();
    return d;
}

std::string pretty(const nlohmann::json &j) { return j.dump(2) + "\n"; }

std::string run_csv(const MerminEstimate &e, const ExperimentPlan &plan, RunMode mode) {
    std::ostringstream out;
    out << std::setprecision(17);
    if (mode == RunMode::Sampled) {
        out << "setting,outcome,count\n";
        for (const auto &c : e.components) {
            const std::string setting = to_bitstring(c.prime_mask, e.n);
            for (const auto &[bits, count] : c.counts->counts) {
                out << setting << ',' << bits << ',' << count << '\n';
            }
        }
        return out.str();
    }
    out << "setting,outcome,probability\n";
    for (const auto &c : e.components) {
        const Circuit circuit =
            setting_circuit(e.n, plan.prep_quarter_turns, c.prime_mask, plan.device);
        const auto dist = detail::circuit_distribution(circuit, plan.noise);
        const std::string setting = to_bitstring(c.prime_mask, e.n);
        for (Index i = 0; i < dist.probabilities().size(); ++i) {
            out << setting << ',' << to_bitstring(i, e.n) << ',' << dist.probabilities()[i] << '\n';
        }
    }
    return out.str();
}

int cmd_bounds(std::size_t n, bool json) {
    const auto poly = canonical_polynomial(n);
    const double lr = lr_bound(poly);
    const double qm = qm_bound(poly);
    if (json) {
        std::cout << pretty({{"n", n}, {"lr_bound", lr}, {"qm_bound", qm}});
    } else {
        std::cout << "n=" << n << " LR " << format_bound(lr) << " QM " << format_bound(qm) << '\n';
    }
    return 0;
}

int cmd_build(std::size_t n, const std::string &mask_bits, const std::optional<int> &phase,
              bool hardware, const std::optional<std::size_t> &target, const std::string &rank,
              bool lower, const std::string &out) {
    if (mask_bits.size() != n || mask_bits.find_first_not_of("01") != std::string::npos) {
        throw Error("--mask must be a " + std::to_string(n) + "-bit string");
    }
    const DeviceModel d = device_from_flags(n, target, rank);
    int k = 0;
    if (hardware) {
        k = hardware_phase(n);
    } else if (phase) {
        k = *phase;
    } else {
        k = maximizing_phase(canonical_polynomial(n)).quarter_turns;
    }
    const Circuit c = with_setting(ghz_circuit(n, k, d.cnot_target),
                                   MeasurementSetting(n, from_bitstring(mask_bits)));
    emit(out, serialize_circuit(lower ? transpile(c, d).circuit : c));
    return 0;
}

int cmd_transpile(const std::string &in, const std::optional<std::size_t> &target,
                  const std::string &rank, const std::string &out, const std::string &report) {
    const Circuit c = parse_circuit(read_file(in));
    const DeviceModel d = device_from_flags(c.n_qubits(), target, rank);
    const auto result = transpile(c, d);
    const std::string text = serialize_circuit(result.circuit);
    const std::string json = pretty(nlohmann::json(result.report));
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        write_file(out, text);
    }
    if (report.empty()) {
        std::cerr << json;
    } else {
        write_file(report, json);
    }
    return 0;
}

int cmd_run(const std::string &config_path, const std::string &out) {
    const RunConfig cfg = parse_run_config(read_file(config_path));
    std::optional<Calibration> cal;
    const PlanOptions options = plan_options(cfg, &cal);
    const ExperimentPlan plan = make_plan(cfg.n, options);
    const MerminEstimate e = cfg.reduction == Reduction::Classes ? run_plan(plan, cfg.mode)
                                                                 : full_term_run(plan, cfg.mode);
    std::string text;
    switch (cfg.output) {
    case OutputFormat::Json: {
        nlohmann::json j = e;
        j["mode"] = cfg.mode == RunMode::Exact ? "exact" : "sampled";
        j["reduction"] = cfg.reduction == Reduction::Classes ? "classes" : "full-terms";
        j["prep_phase_quarter_turns"] = plan.prep_quarter_turns;
        j["shots_per_setting"] = plan.shots_per_class;
        j["seed"] = plan.seed;
        j["noise"] = plan.noise;
        j["device"] = {{"cnot_target", plan.device.cnot_target},
                       {"robustness_rank", plan.device.robustness_rank}};
        if (cal) {
            j["calibration"] = {{"depol_2q", cal->model.depol_2q},
                                {"n3_value", cal->value},
                                {"target", cfg.calibration_target}};
        }
        text = pretty(j);
        break;
    }
    case OutputFormat::Table: {
        text = format_table({e});
        if (cal) {
            std::ostringstream note;
            note << std::setprecision(6) << "calibrated depol_2q = " << cal->model.depol_2q
                 << " (n=3 exact value " << cal->value << ")\n";
            text += note.str();
        }
        break;
    }
    case OutputFormat::Csv:
        text = run_csv(e, plan, cfg.mode);
        break;
    }
    emit(out, text);
    return 0;
}

int cmd_degrade(std::size_t n, const std::string &param, std::size_t points, double max,
                const std::string &config_path, bool calibrate, double target) {
    NoiseModel base;
    PlanOptions options;
    if (!config_path.empty()) {
        RunConfig cfg = parse_run_config(read_file(config_path));
        cfg.n = n;
        options = plan_options(cfg);
        base = options.noise;
    }
    std::ostringstream out;
    out << std::setprecision(10);
    if (calibrate) {
        const auto cal = calibrate_depol_2q(base, target);
        out << "n,depol_1q,depol_2q,readout_flip,value,normalized\n";
        for (std::size_t k : {3, 4, 5}) {
            const double v = exact_mermin_value(k, cal.model);
            out << k << ',' << cal.model.depol_1q << ',' << cal.model.depol_2q << ','
                << cal.model.readout_flip << ',' << v << ','
                << v / qm_bound(canonical_polynomial(k)) << '\n';
        }
        std::cout << out.str();
        return 0;
    }
    if (points < 2) {
        throw Error("--points must be at least 2");
    }
    if (!(max >= 0.0 && max <= 1.0)) {
        throw Error("--max must lie in [0, 1]");
    }
    std::vector<NoiseModel> grid;
    for (std::size_t i = 0; i < points; ++i) {
        NoiseModel m = base;
        const double p = max * static_cast<double>(i) / static_cast<double>(points - 1);
        if (param == "depol_1q") {
            m.depol_1q = p;
        } else if (param == "depol_2q") {
            m.depol_2q = p;
        } else {
            m.readout_flip = p;
        }
        grid.push_back(m);
    }
    out << "depol_1q,depol_2q,readout_flip,value\n";
    for (const auto &[m, v] : degradation_curve(n, grid, options)) {
        out << m.depol_1q << ',' << m.depol_2q << ',' << m.readout_flip << ',' << v << '\n';
    }
    std::cout << out.str();
    return 0;
}

int cmd_parse(const std::string &path) {
    std::cout << serialize_circuit(parse_circuit(read_file(path)));
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Mermin inequality experiments on a simulated star-topology device"};
    app.require_subcommand(1);

    std::size_t n = 3;
    bool json = false;
    auto *bounds = app.add_subcommand("bounds", "Print the local-realism and quantum bounds");
    bounds->add_option("n", n, "Number of parties (3, 4 or 5)")->required()->check(CLI::Range(3, 5));
    bounds->add_flag("--json", json, "Emit JSON");

    std::string mask;
    std::optional<int> phase;
    bool hardware = false;
    std::optional<std::size_t> target;
    std::string rank;
    bool lower = false;
    std::string out;
    auto *build = app.add_subcommand("build", "Write the GHZ preparation plus one measurement setting");
    build->add_option("n", n, "Number of qubits")->required()->check(CLI::Range(2, 10));
    build->add_option("--mask", mask, "Prime mask, one bit per party, party 0 first (1 = Y)")
        ->required();
    auto *phase_opt = build->add_option("--phase", phase,
                                        "GHZ relative phase in units of pi/4 (default: maximising)")
                          ->check(CLI::Range(0, 7));
    build->add_flag("--hardware-phase", hardware, "Use the hardware-run preparation phase")
        ->excludes(phase_opt);
    build->add_option("--target", target, "Device CNOT target (default: qubit 2, or n-1 if n < 3)");
    build->add_option("--rank", rank, "Robustness ranking, most robust first (default: 0 1 2 ...)");
    build->add_flag("--lower", lower, "Transpile onto the device");
    build->add_option("-o,--output", out, "Output file (default: stdout)");

    std::string in;
    std::string report;
    auto *transpile_cmd = app.add_subcommand(
        "transpile", "Lower a circuit onto the device; circuit to -o (or stdout), report to "
                     "--report (or stderr). Exit 2 on a constraint violation");
    transpile_cmd->add_option("circuit", in, "Circuit file")->required();
    transpile_cmd->add_option("--target", target, "Device CNOT target (default: qubit 2, or n-1 if n < 3)");
    transpile_cmd->add_option("--rank", rank, "Robustness ranking, most robust first (default: 0 1 2 ...)");
    transpile_cmd->add_option("-o,--output", out, "Output circuit file (default: stdout)");
    transpile_cmd->add_option("--report", report, "JSON report file (default: stderr)");

    std::string config;
    auto *run = app.add_subcommand("run", "Run an experiment from a config file");
    run->add_option("config", config, "Config file")->required();
    run->add_option("-o,--output", out, "Output file (default: stdout)");
    run->footer(R"(Config format (key = value, '#' comments, defaults shown):
  n = 3                   required; 3, 4 or 5
  mode = exact            exact | sampled
  reduction = classes     classes | full-terms
  output = json           json | table | csv
  shots = 1024            per setting; default 1024 for n = 3, else 8192
  seed = 1                setting i samples with seed XOR i
  phase = optimal         optimal | hardware | 0..7 (units of pi/4)
  [noise]
  depol_1q = 0
  depol_2q = 0            or 'calibrated': fit so the exact n=3 value hits calibration_target
  readout_flip = 0
  calibration_target = 2.85
  [device]
  cnot_target = 2         default qubit 2
  robustness_rank = 0 1 2 most robust first; default identity)");

    std::string param = "depol_2q";
    std::size_t points = 5;
    double max = 0.1;
    bool calibrate = false;
    double cal_target = 2.85;
    auto *degrade = app.add_subcommand("degrade", "Exact Mermin value along a noise grid (CSV)");
    degrade->add_option("n", n, "Number of parties (3, 4 or 5)")->required()->check(CLI::Range(3, 5));
    degrade->add_option("--param", param, "Swept parameter")
        ->check(CLI::IsMember({"depol_1q", "depol_2q", "readout_flip"}));
    degrade->add_option("--points", points, "Grid points (default 5)");
    degrade->add_option("--max", max, "Largest swept probability (default 0.1)");
    degrade->add_option("--config", config, "Base noise/device from a run config");
    degrade->add_flag("--calibrate", calibrate,
                      "Fit depol_2q on n=3 and print predictions for n = 3, 4, 5");
    degrade->add_option("--target", cal_target, "Calibration target (default 2.85)");

    auto *parse = app.add_subcommand("parse", "Check a circuit file and print it normalized");
    parse->add_option("circuit", in, "Circuit file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : kExitInput;
    }

    const std::string source = !in.empty() ? in : config;
    try {
        if (*bounds) {
            return cmd_bounds(n, json);
        }
        if (*build) {
            return cmd_build(n, mask, phase, hardware, target, rank, lower, out);
        }
        if (*transpile_cmd) {
            return cmd_transpile(in, target, rank, out, report);
        }
        if (*run) {
            return cmd_run(config, out);
        }
        if (*degrade) {
            return cmd_degrade(n, param, points, max, config, calibrate, cal_target);
        }
        if (*parse) {
            return cmd_parse(in);
        }
    } catch (const ParseError &e) {
        std::string message = e.what();
        const std::string suffix = ", line " + std::to_string(e.line());
        if (message.ends_with(suffix)) {
            message.resize(message.size() - suffix.size());
        }
        std::cerr << "error: " << source << ":" << e.line() << ": " << message << '\n';
        return kExitInput;
    } catch (const ConstraintError &e) {
        std::cerr << "error: constraint violation: " << e.what() << '\n';
        return kExitConstraint;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
