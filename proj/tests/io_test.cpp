// Copyright 2026 The Geodesic Gates Authors
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

#include "geodesic_gates/io.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "geodesic_gates/geodesic_gates.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace geodesic_gates;
namespace fs = std::filesystem;

namespace {

/// Fresh scratch directory per test.
fs::path scratch(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / ("geodesic_gates_io_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

/// Runs the CLI with stdout and stderr captured into `dir`; returns the exit status.
int run_cli(const std::string &args, const fs::path &dir, const std::string &env = "") {
#ifndef GEODESIC_GATES_CLI
    (void)args;
    (void)dir;
    (void)env;
    return -1;
#else
    const std::string cmd = env + " \"" GEODESIC_GATES_CLI "\" " + args + " > \"" + (dir / "stdout.txt").string() +
                            "\" 2> \"" + (dir / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
}

std::string out_flag(const fs::path &dir) { return "--out \"" + dir.string() + "\""; }

Json read_json(const fs::path &path) { return parse_json(read_file(path.string())); }

void skip_without_cli() {
#ifndef GEODESIC_GATES_CLI
    GTEST_SKIP() << "CLI path not configured";
#endif
}

}  // namespace

TEST(io, NumbersRoundTripExactly) {
    oracle::Uniform u(3);
    for (int k = 0; k < 200; ++k) {
        const double v = std::ldexp(u(-1.0, 1.0), static_cast<int>(u(-60.0, 60.0)));
        EXPECT_EQ(parse_double(format_double(v)), v);
    }
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(-2.5e-10), "-2.5e-10");
    EXPECT_THROW(parse_double("1,5"), ConfigError);
    EXPECT_THROW(parse_double("1.5x"), ConfigError);
    EXPECT_THROW(parse_double(""), ConfigError);
}

TEST(io, CsvRoundTripIsByteIdentical) {
    const Waveform w = synthesize_waveform(find_preset(presets(), "xpi-2q-robust").canonical_params(), 0.5, 257);
    const std::string text = to_csv(waveform_table(w));
    EXPECT_EQ(text.substr(0, 8), "t,omega\n");
    EXPECT_EQ(text.find('\r'), std::string::npos);
    const CsvTable back = parse_csv(text);
    EXPECT_EQ(back.rows.size(), 257u);
    EXPECT_EQ(back.rows.back()[0], w.T);
    EXPECT_EQ(to_csv(back), text);
    EXPECT_THROW(parse_csv("a,b\n1\n"), ConfigError);
    EXPECT_THROW(parse_csv(""), ConfigError);
    EXPECT_THROW(to_csv(CsvTable{{"a"}, {{1.0, 2.0}}}), ContractViolation);
    const Json columns = to_json(CsvTable{{"x", "y"}, {{1.0, 2.0}, {3.0, 4.0}}});
    EXPECT_EQ(columns.dump(), R"({"x":[1.0,3.0],"y":[2.0,4.0]})");
}

TEST(io, RunConfigRoundTripIsByteIdentical) {
    Json j = {{"gate", {{"preset", "xpi-3q-robust"}}},
              {"sweep", {{"domega", {{"lo", -0.05}, {"hi", 0.05}, {"points", 11}}}}},
              {"noise", {{"delta_omega", 0.01}, {"delta_j", -0.02}, {"crosstalk_on", false}}},
              {"optimizer", {{"starts", 3}, {"channel_weights", {1.0, 2.0, 0.5}}}},
              {"seed", 7}};
    const RunConfig c = run_config_from_json(j);
    EXPECT_EQ(c.setting, OptimizerSetting::ThreeQubit);
    EXPECT_EQ(c.system.n_qubits, 3);
    EXPECT_EQ(c.gate_angle, kPi);
    EXPECT_EQ(c.optimizer.seed, 7u);
    EXPECT_EQ(c.sweep.domega.points, 11u);
    EXPECT_EQ(c.sweep.dj.points, 41u);
    const std::string text = dump_json(to_json(c));
    const RunConfig again = run_config_from_json(parse_json(text));
    EXPECT_EQ(dump_json(to_json(again)), text);
    EXPECT_EQ(config_hash(again), config_hash(c));

    Json other = j;
    other["seed"] = 8;
    EXPECT_NE(config_hash(run_config_from_json(other)), config_hash(c));
}

TEST(io, ExplicitParamsTakeTheGateAngle) {
    const RunConfig c = run_config_from_json(
        Json{{"gate", {{"phi", kPi / 2}, {"setting", "3q"}}}, {"params", {{"b1", 1.0}, {"c", 2.0}}}});
    ASSERT_TRUE(c.params.has_value());
    EXPECT_EQ(c.params->a, CurveParams::cubic_for_angle(kPi / 2));
    EXPECT_EQ(c.curve().b1, 1.0);
    EXPECT_EQ(c.system.n_qubits, 3);
}

TEST(io, InvalidConfigsAreRejected) {
    const std::vector<Json> bad = {
        Json{{"gate", {{"preset", "xpi-5q-robust"}}}},
        Json{{"gate", {{"preset", "xhalfpi-2q-robust"}, {"phi", 1.5707963}}}},
        Json{{"gate", {{"preset", "xpi-3q-robust"}, {"setting", "2q-midpoint"}}}},
        Json{{"bogus", 1}},
        Json{{"noise", {{"delta_omega", 0.7}}}},
        Json{{"sweep", {{"dj", {{"points", 500}}}}}},
        Json{{"samples", 10}},
        Json{{"samples", "many"}},
        Json{{"model", "rotating"}},
        Json{{"output", {{"format", "xml"}}}},
        Json{{"optimizer", {{"starts", 0}}}},
        Json{{"gate", {{"phi", 7.0}}}},
    };
    for (const Json &j : bad) {
        EXPECT_THROW(run_config_from_json(j), ConfigError) << j.dump();
    }
    EXPECT_THROW(parse_json("{\"gate\": "), ConfigError);
    EXPECT_THROW(RunConfig{}.curve(), ConfigError);
}

TEST(io, AuditReportCoversEveryRow) {
    const std::vector<AuditRow> rows = audit_report();
    ASSERT_EQ(rows.size(), 8u);
    for (const AuditRow &a : rows) {
        const Json j = to_json(a);
        if (a.name == "xpi-3q-nonrobust") {
            EXPECT_NEAR(*a.b1_oracle, 5.71915, 1e-3);
            EXPECT_NEAR(*a.b1_closed_form / *a.b1_oracle, -0.5, 1e-6);
            EXPECT_NE(std::find(a.flags.begin(), a.flags.end(), "tabled b1 matches quadrature (factor 1)"),
                      a.flags.end());
        }
        if (a.name == "xpi-3q-robust") {
            EXPECT_NEAR(*a.b3_oracle, 101.22649, 1e-3);
            EXPECT_NEAR(*a.b3_closed_form, *a.b3_oracle, 1e-6);
        }
        if (a.name == "xpi-2q-robust") {
            EXPECT_EQ(j.at("c_target"), "n/a");
        }
        EXPECT_GT(a.gate_time, 0.0);
    }
    const std::string text = format_audit(rows);
    EXPECT_NE(text.find("xhalfpi-3q-robust"), std::string::npos);
}

TEST(cli, SynthWritesWaveformCurveAndSummary) {
    skip_without_cli();
    const fs::path dir = scratch("synth");
    ASSERT_EQ(run_cli("synth --preset xpi-2q-robust " + out_flag(dir), dir), 0);
    const CsvTable w = parse_csv(read_file((dir / "waveform.csv").string()));
    ASSERT_EQ(w.header, (std::vector<std::string>{"t", "omega"}));
    EXPECT_EQ(w.rows.size(), 4097u);
    EXPECT_NEAR(w.rows.front()[1], 0.0, 1e-8);
    EXPECT_NEAR(w.rows.back()[1], 0.0, 1e-8);
    const CsvTable curve = parse_csv(read_file((dir / "curve.csv").string()));
    EXPECT_EQ(curve.header, (std::vector<std::string>{"chi", "phi", "theta"}));
    const Json summary = read_json(dir / "synth.json");
    EXPECT_NEAR(summary.at("Phi").get<double>(), kPi, 1e-8);
    EXPECT_NEAR(summary.at("T").get<double>(), w.rows.back()[0], 1e-15);
    EXPECT_EQ(summary.at("seed"), 42);
    EXPECT_EQ(summary.at("config_hash").get<std::string>().size(), 16u);
    EXPECT_EQ(read_file((dir / "stdout.txt").string()), read_file((dir / "synth.json").string()));
    // Re-serializing the written summary reproduces it byte for byte.
    EXPECT_EQ(dump_json(summary), read_file((dir / "synth.json").string()));
    EXPECT_EQ(dump_json(to_json(run_config_from_json(summary.at("config")))), dump_json(summary.at("config")));
}

TEST(cli, SynthReportsZeroAreaForThreeQubitRow) {
    skip_without_cli();
    const fs::path dir = scratch("synth3");
    ASSERT_EQ(run_cli("synth --preset xpi-3q-nonrobust --format json " + out_flag(dir), dir), 0);
    EXPECT_TRUE(fs::exists(dir / "waveform.json"));
    EXPECT_FALSE(fs::exists(dir / "waveform.csv"));
    const Json summary = read_json(dir / "synth.json");
    EXPECT_LT(std::abs(summary.at("C_target").get<double>()), 1e-5);
    EXPECT_EQ(read_json(dir / "waveform.json").at("omega").size(), 4097u);
}

TEST(cli, ExitCodes) {
    skip_without_cli();
    const fs::path dir = scratch("exit");
    EXPECT_EQ(run_cli("synth --phi 1.5707963 --preset xhalfpi-2q-robust " + out_flag(dir), dir), 2);
    EXPECT_NE(read_file((dir / "stderr.txt").string()).find("does not match preset"), std::string::npos);
    EXPECT_EQ(run_cli("synth --phi pi/2 --preset xhalfpi-2q-robust " + out_flag(dir), dir), 0);
    EXPECT_EQ(run_cli("synth --preset nope " + out_flag(dir), dir), 2);
    EXPECT_EQ(run_cli("synth " + out_flag(dir), dir), 2);
    EXPECT_EQ(run_cli("frobnicate", dir), 2);
    EXPECT_EQ(run_cli("", dir), 2);
    EXPECT_EQ(run_cli("simulate --preset xpi-2q-robust --crosstalk maybe " + out_flag(dir), dir), 2);
    EXPECT_EQ(run_cli("sweep --preset xpi-2q-robust --points 300 " + out_flag(dir), dir), 2);
    EXPECT_EQ(run_cli("synth --preset xpi-2q-robust --format xml " + out_flag(dir), dir), 2);
    EXPECT_EQ(run_cli("--help", dir), 0);
    EXPECT_EQ(run_cli("audit", dir), 0);

    const fs::path config = dir / "bad.json";
    write_file(config.string(), "{\"gate\": {\"preset\": \"xpi-2q-robust\"}, \"colour\": 1}");
    EXPECT_EQ(run_cli("synth --config \"" + config.string() + "\" " + out_flag(dir), dir), 2);
    write_file(config.string(), "[1, 2");
    EXPECT_EQ(run_cli("synth --config \"" + config.string() + "\" " + out_flag(dir), dir), 2);
    EXPECT_EQ(run_cli("synth --config \"" + (dir / "missing.json").string() + "\"", dir), 2);

    EXPECT_EQ(run_cli("optimize --setting 2q-midpoint --phi pi --starts 1 --max-iters 3 " + out_flag(dir), dir), 3);
    EXPECT_FALSE(read_json(dir / "optimize.json").at("converged").get<bool>());
}

TEST(cli, ConfigFileAndFlagsCombine) {
    skip_without_cli();
    const fs::path dir = scratch("config");
    const fs::path config = dir / "run.json";
    write_file(config.string(), dump_json(Json{{"gate", {{"preset", "xpi-2q-nonrobust"}}},
                                               {"noise", {{"delta_omega", 0.02}}},
                                               {"seed", 5}}));
    ASSERT_EQ(run_cli("simulate --config \"" + config.string() + "\" --dj 0.01 " + out_flag(dir), dir), 0);
    const Json summary = read_json(dir / "simulate.json");
    EXPECT_EQ(summary.at("noise").at("delta_omega"), 0.02);
    EXPECT_EQ(summary.at("noise").at("delta_j"), 0.01);
    EXPECT_EQ(summary.at("seed"), 5);
    const PresetRow &row = find_preset(presets(), "xpi-2q-nonrobust");
    const FrameData frame = dressing(row.system());
    const Waveform w = synthesize_waveform(row.canonical_params(), frame.design_beta(), 4097);
    const double expected =
        simulate_gate(row.system(), frame, w, kPi, {0.02, 0.01, true}, SimModel::Reduced).infidelity;
    EXPECT_EQ(summary.at("infidelity").get<double>(), expected);
    const CsvTable t = parse_csv(read_file((dir / "simulate.csv").string()));
    EXPECT_EQ(t.rows.at(0).at(3), expected);
}

TEST(cli, RobustCostIsSmaller) {
    skip_without_cli();
    const fs::path dir = scratch("cost");
    ASSERT_EQ(run_cli("cost --preset xpi-2q-robust " + out_flag(dir), dir), 0);
    const double robust = read_json(dir / "cost.json").at("robust").at("total").get<double>();
    ASSERT_EQ(run_cli("cost --preset xpi-2q-nonrobust " + out_flag(dir), dir), 0);
    const double plain = read_json(dir / "cost.json").at("robust").at("total").get<double>();
    EXPECT_LT(100.0 * robust, plain);
    ASSERT_EQ(run_cli("cost --preset xpi-2q-nonrobust --weights 0,0,0 " + out_flag(dir), dir), 0);
    EXPECT_EQ(read_json(dir / "cost.json").at("robust").at("total").get<double>(), 0.0);
    EXPECT_EQ(run_cli("cost --preset xpi-2q-nonrobust --weights 1,2 " + out_flag(dir), dir), 2);
}

TEST(cli, OptimizeIsDeterministic) {
    skip_without_cli();
    const fs::path a = scratch("opt_a");
    const fs::path b = scratch("opt_b");
    const std::string args = "optimize --setting 2q-midpoint --phi pi --seed 42 --starts 2 ";
    ASSERT_EQ(run_cli(args + "--threads 1 " + out_flag(a), a), 0);
    ASSERT_EQ(run_cli(args + "--threads 2 " + out_flag(b), b), 0);
    EXPECT_EQ(read_file((a / "optimize_starts.csv").string()), read_file((b / "optimize_starts.csv").string()));
    // Output paths differ, so compare everything except the output directory.
    Json ja = read_json(a / "optimize.json");
    Json jb = read_json(b / "optimize.json");
    EXPECT_EQ(ja.at("params"), jb.at("params"));
    EXPECT_EQ(ja.at("cost"), jb.at("cost"));
    ja.at("config").at("output").erase("dir");
    jb.at("config").at("output").erase("dir");
    ja.erase("config_hash");
    jb.erase("config_hash");
    EXPECT_EQ(dump_json(ja), dump_json(jb));
    EXPECT_EQ(run_cli(args + "--threads 1 " + out_flag(a), a), 0);
    EXPECT_EQ(read_file((a / "optimize.json").string()), read_file((a / "stdout.txt").string()));
}

TEST(cli, SweepWritesFullGridAndSlopes) {
    skip_without_cli();
    const fs::path dir = scratch("sweep");
    ASSERT_EQ(run_cli("sweep --preset xpi-3q-robust --model reduced " + out_flag(dir), dir), 0);
    const CsvTable t = parse_csv(read_file((dir / "sweep.csv").string()));
    EXPECT_EQ(t.header, (std::vector<std::string>{"domega", "dj", "infidelity"}));
    EXPECT_EQ(t.rows.size(), 1681u);
    const Json summary = read_json(dir / "sweep.json");
    EXPECT_EQ(summary.at("rows"), 1681);
    EXPECT_NEAR(summary.at("slope_domega").at("slope").get<double>(), 3.42, 0.05);
    EXPECT_NEAR(summary.at("floor").get<double>(), 5.14e-5, 0.01e-5);
}

TEST(cli, SweepThreadsFromEnvironment) {
    skip_without_cli();
    const fs::path a = scratch("sweep_env_a");
    const fs::path b = scratch("sweep_env_b");
    const std::string args = "sweep --preset xpi-2q-robust --points 5 --range 0.02 --crosstalk off ";
    ASSERT_EQ(run_cli(args + out_flag(a), a, "GEODESIC_GATES_THREADS=1"), 0);
    ASSERT_EQ(run_cli(args + out_flag(b), b, "GEODESIC_GATES_THREADS=3"), 0);
    EXPECT_EQ(read_file((a / "sweep.csv").string()), read_file((b / "sweep.csv").string()));
    const Json summary = read_json(a / "sweep.json");
    EXPECT_EQ(summary.at("rows"), 25);
    EXPECT_FALSE(summary.at("config").at("sweep").at("crosstalk_on").get<bool>());
    // Five points leave too few above the floor for a fit; the slope is reported as missing.
    EXPECT_TRUE(summary.at("slope_domega").at("slope").is_null());
}

TEST(cli, AuditPrintsAndWritesReport) {
    skip_without_cli();
    const fs::path dir = scratch("audit");
    ASSERT_EQ(run_cli("audit " + out_flag(dir), dir), 0);
    const std::string printed = read_file((dir / "stdout.txt").string());
    EXPECT_NE(printed.find("xpi-3q-nonrobust"), std::string::npos);
    EXPECT_NE(printed.find("tabled b1 matches quadrature (factor 1)"), std::string::npos);
    const Json report = read_json(dir / "audit.json");
    ASSERT_EQ(report.size(), 8u);
    EXPECT_EQ(dump_json(report), read_file((dir / "audit.json").string()));
}
