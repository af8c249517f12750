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


#include <gtest/gtest.h>

#include "test_support.hpp"

namespace mermin {
namespace {

std::size_t error_line(const std::string &text) {
    try {
        (void)parse_run_config(text);
    } catch (const ParseError &e) {
        return e.line();
    }
    return 0;
}

TEST(RunConfig, FullExample) {
    const auto cfg = parse_run_config(R"(# four parties
n = 4
mode = sampled
reduction = full-terms
output = table
shots = 2048
seed = 9
phase = hardware

[noise]
depol_1q = 0.01
depol_2q = 0.05
readout_flip = 0.02

[device]
cnot_target = 1
robustness_rank = 3 2 1 0
)");
    EXPECT_EQ(cfg.n, 4U);
    EXPECT_EQ(cfg.mode, RunMode::Sampled);
    EXPECT_EQ(cfg.reduction, Reduction::FullTerms);
    EXPECT_EQ(cfg.output, OutputFormat::Table);
    EXPECT_EQ(cfg.shots, 2048U);
    EXPECT_EQ(cfg.seed, 9U);
    EXPECT_TRUE(cfg.hardware_phase);
    EXPECT_EQ(cfg.noise, (NoiseModel{0.01, 0.05, 0.02}));
    const auto d = cfg.device();
    EXPECT_EQ(d.cnot_target, 1U);
    EXPECT_EQ(d.robustness_rank, (std::vector<std::size_t>{3, 2, 1, 0}));
    const auto o = plan_options(cfg);
    EXPECT_EQ(o.prep_quarter_turns, 7);
    EXPECT_EQ(o.shots, 2048U);
}

TEST(RunConfig, Defaults) {
    const auto cfg = parse_run_config("n = 3\n");
    EXPECT_EQ(cfg.mode, RunMode::Exact);
    EXPECT_EQ(cfg.reduction, Reduction::Classes);
    EXPECT_EQ(cfg.output, OutputFormat::Json);
    EXPECT_FALSE(cfg.shots.has_value());
    EXPECT_EQ(cfg.seed, 1U);
    EXPECT_TRUE(cfg.noise.is_zero());
    EXPECT_EQ(cfg.device().cnot_target, 2U);
    const auto plan = make_plan(3, plan_options(cfg));
    EXPECT_EQ(plan.prep_quarter_turns, 2);
    EXPECT_EQ(plan.shots_per_class, 1024U);
    EXPECT_EQ(parse_run_config("n=5\nphase=4").phase, 4);
}

TEST(RunConfig, CalibratedDepol2q) {
    const auto cfg = parse_run_config("n = 5\n[noise]\ndepol_2q = calibrated\n");
    EXPECT_TRUE(cfg.calibrate_depol_2q);
    std::optional<Calibration> cal;
    const auto o = plan_options(cfg, &cal);
    ASSERT_TRUE(cal.has_value());
    EXPECT_NEAR(cal->value, 2.85, 1e-6);
    EXPECT_EQ(o.noise.depol_2q, cal->model.depol_2q);
}

TEST(RunConfig, ErrorsCarryLineNumbers) {
    EXPECT_EQ(error_line("n = 3\nfoo = 1\n"), 2U);
    EXPECT_EQ(error_line("n = 3\n\n[noise]\ndepol_3q = 0.1\n"), 4U);
    EXPECT_EQ(error_line("n = 3\n[gates]\n"), 2U);
    EXPECT_EQ(error_line("n = 3\n[noise\n"), 2U);
    EXPECT_EQ(error_line("n = 3\nmode exact\n"), 2U);
    EXPECT_EQ(error_line("n = 3\nmode = fast\n"), 2U);
    EXPECT_EQ(error_line("n = 7\n"), 1U);
    EXPECT_EQ(error_line("n = 3\nshots = 0\n"), 2U);
    EXPECT_EQ(error_line("n = 3\nshots = -4\n"), 2U);
    EXPECT_EQ(error_line("n = 3\nn = 4\n"), 2U);
    EXPECT_EQ(error_line("n = 3\n[noise]\ndepol_2q = 1.2\n"), 3U);
    EXPECT_EQ(error_line("n = 3\n[noise]\nreadout_flip = lots\n"), 3U);
    EXPECT_EQ(error_line("n = 3\nphase = 8\n"), 2U);
    EXPECT_EQ(error_line("n = 3\noutput = xml\n"), 2U);
    EXPECT_EQ(error_line("n = 3\nreduction = none\n"), 2U);
    EXPECT_EQ(error_line("n = 3\n[device]\ncnot_target = 3\n"), 3U);
    EXPECT_EQ(error_line("n = 3\n[device]\nrobustness_rank = 0 0 1\n"), 3U);
    EXPECT_EQ(error_line("mode = exact\n"), 1U);  // n missing
    EXPECT_EQ(error_line("n = 3\n= 4\n"), 2U);
    // The same key in a different section is allowed only where defined.
    EXPECT_EQ(error_line("n = 3\n[device]\nn = 3\n"), 3U);
}

TEST(RunConfig, MessageNamesTheProblem) {
    try {
        (void)parse_run_config("n = 3\n[noise]\ndepol_3q = 0.1\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(std::string(e.what()), "unknown key 'noise.depol_3q', line 3");
    }
}

} // namespace
} // namespace mermin
