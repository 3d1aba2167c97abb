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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "geodesic_gates/geodesic_gates.hpp"
#include "geodesic_gates/io.hpp"

namespace gg = geodesic_gates;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNotConverged = 3;

/// Accepts a decimal number or k*pi/m written as "pi", "pi/2", "2pi", "3pi/4".
double parse_angle(const std::string &text) {
    const std::size_t pos = text.find("pi");
    if (pos == std::string::npos) {
        return gg::parse_double(text);
    }
    double numerator = 1.0, denominator = 1.0;
    const std::string head = text.substr(0, pos);
    const std::string tail = text.substr(pos + 2);
    if (!head.empty()) {
        numerator = gg::parse_double(head.back() == '*' ? head.substr(0, head.size() - 1) : head);
    }
    if (!tail.empty()) {
        if (tail[0] != '/') {
            throw gg::ConfigError("cannot parse angle '" + text + "'");
        }
        denominator = gg::parse_double(tail.substr(1));
    }
    if (denominator == 0.0) {
        throw gg::ConfigError("cannot parse angle '" + text + "'");
    }
    return numerator * gg::kPi / denominator;
}

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<unsigned> threads;
    std::optional<std::string> preset;
    std::optional<std::string> phi;
    std::optional<std::string> setting;
    std::optional<std::string> model;
    std::optional<double> b1, b2, b3, c;
    std::optional<std::size_t> samples;
    std::vector<double> weights;
    std::optional<int> starts;
    std::optional<int> max_iters;
    std::optional<double> init_box;
    std::optional<double> domega, dj;
    std::optional<std::string> crosstalk;
    std::optional<std::size_t> points;
    std::optional<double> range;
};

/// Merges the config file (if any) with command-line overrides and validates the result.
gg::RunConfig build_config(const Options &o) {
    gg::Json j = o.config_path.empty() ? gg::Json::object() : gg::parse_json(gg::read_file(o.config_path));
    if (!j.is_object()) {
        throw gg::ConfigError("config file must hold a JSON object");
    }
    auto section = [&](const char *key) -> gg::Json & {
        if (!j.contains(key)) j[key] = gg::Json::object();
        return j[key];
    };
    if (o.preset) section("gate")["preset"] = *o.preset;
    if (o.phi) section("gate")["phi"] = parse_angle(*o.phi);
    if (o.setting) section("gate")["setting"] = *o.setting;
    if (o.setting && !j.contains("system")) {
        j["system"] = gg::to_json(gg::system_for(gg::setting_from_string(*o.setting)));
    }
    if (o.b1 || o.b2 || o.b3 || o.c) {
        gg::Json &p = section("params");
        if (o.b1) p["b1"] = *o.b1;
        if (o.b2) p["b2"] = *o.b2;
        if (o.b3) p["b3"] = *o.b3;
        if (o.c) p["c"] = *o.c;
    }
    if (o.model) j["model"] = *o.model;
    if (o.samples) j["samples"] = *o.samples;
    if (o.seed) j["seed"] = *o.seed;
    if (o.out) section("output")["dir"] = *o.out;
    if (o.format) section("output")["format"] = *o.format;
    if (!o.weights.empty()) section("optimizer")["channel_weights"] = o.weights;
    if (o.starts) section("optimizer")["starts"] = *o.starts;
    if (o.max_iters) section("optimizer")["max_iters"] = *o.max_iters;
    if (o.init_box) section("optimizer")["init_box"] = *o.init_box;
    if (o.domega) section("noise")["delta_omega"] = *o.domega;
    if (o.dj) section("noise")["delta_j"] = *o.dj;
    if (o.crosstalk) {
        if (*o.crosstalk != "on" && *o.crosstalk != "off") {
            throw gg::ConfigError("--crosstalk expects on or off");
        }
        section("noise")["crosstalk_on"] = *o.crosstalk == "on";
        section("sweep")["crosstalk_on"] = *o.crosstalk == "on";
    }
    if (o.points || o.range) {
        gg::Json &sweep = section("sweep");
        for (const char *axis : {"domega", "dj"}) {
            gg::Json a = sweep.contains(axis) ? sweep[axis] : gg::Json::object();
            if (o.points) a["points"] = *o.points;
            if (o.range) {
                a["lo"] = -*o.range;
                a["hi"] = *o.range;
            }
            sweep[axis] = a;
        }
    }
    return gg::run_config_from_json(j);
}

class Output {
   public:
    Output(const gg::RunConfig &cfg, const std::string &command) : cfg_(cfg), command_(command) {
        std::error_code ec;
        std::filesystem::create_directories(cfg.out_dir, ec);
        if (ec) {
            throw gg::ConfigError("cannot create output directory '" + cfg.out_dir + "'");
        }
    }

    /// Writes a bulk table as <stem>.csv or <stem>.json according to the format flag.
    std::string table(const std::string &stem, const gg::CsvTable &t) const {
        const bool csv = cfg_.format == gg::OutputFormat::Csv;
        const std::string path = join(stem + (csv ? ".csv" : ".json"));
        gg::write_file(path, csv ? gg::to_csv(t) : gg::dump_json(gg::to_json(t)));
        return path;
    }

    /// Writes <command>.json with the reproducibility header and prints it.
    void summary(gg::Json body) const {
        gg::Json j;
        j["command"] = command_;
        j["config_hash"] = gg::config_hash(cfg_);
        j["seed"] = cfg_.seed;
        j["config"] = gg::to_json(cfg_);
        for (auto &item : body.items()) {
            j[item.key()] = item.value();
        }
        const std::string text = gg::dump_json(j);
        gg::write_file(join(command_ + ".json"), text);
        std::cout << text;
    }

   private:
    std::string join(const std::string &name) const { return (std::filesystem::path(cfg_.out_dir) / name).string(); }

    const gg::RunConfig &cfg_;
    std::string command_;
};

gg::Json breakdown_json(const gg::CostBreakdown &b) {
    return gg::Json{{"freq", b.freq}, {"coupling", b.coupling}, {"crosstalk", b.crosstalk}, {"total", b.total}};
}

const char *kWeightNote = "optimizer and channel weights are library defaults, not calibrated values";

int cmd_synth(const gg::RunConfig &cfg) {
    const gg::CurveParams params = cfg.curve();
    const gg::FrameData frame = gg::dressing(cfg.system);
    const gg::CurveSamples s = gg::sample_curve(params);
    const gg::Waveform w = gg::synthesize_waveform(s, frame.design_beta(), cfg.samples);
    Output out(cfg, "synth");
    out.table("waveform", gg::waveform_table(w));
    out.table("curve", gg::curve_table(s));
    out.summary({{"params", gg::to_json(params)},
                 {"T", w.T},
                 {"Phi", gg::rotation_angle(s)},
                 {"C_target", gg::area_functional(s)},
                 {"peak_amplitude", w.peak_amplitude()},
                 {"design_beta", frame.design_beta()}});
    return kExitOk;
}

int cmd_cost(const gg::RunConfig &cfg) {
    const gg::CurveParams params = cfg.curve();
    const gg::FrameData frame = gg::dressing(cfg.system);
    const gg::CurveSamples s = gg::sample_curve(params);
    const gg::CostBreakdown b = gg::robust_cost_breakdown(s, cfg.system, frame, cfg.optimizer.channels);
    gg::OptimizerConfig weights = cfg.optimizer;
    Output out(cfg, "cost");
    out.table("cost", {{"c_target", "freq", "coupling", "crosstalk", "robust", "total"},
                       {{gg::area_functional(s), b.freq, b.coupling, b.crosstalk, b.total,
                         gg::total_cost(s, cfg.system, frame, weights)}}});
    out.summary({{"params", gg::to_json(params)},
                 {"C_target", gg::area_functional(s)},
                 {"robust", breakdown_json(b)},
                 {"total_cost", gg::total_cost(s, cfg.system, frame, weights)},
                 {"note", kWeightNote}});
    return kExitOk;
}

int cmd_optimize(const gg::RunConfig &cfg, unsigned threads) {
    const gg::OptimizeResult r = gg::optimize(cfg.gate_angle, cfg.system, cfg.optimizer, threads);
    Output out(cfg, "optimize");
    gg::CsvTable starts{{"start", "cost", "iterations", "converged"}, {}};
    for (std::size_t i = 0; i < r.starts.size(); ++i) {
        starts.rows.push_back({static_cast<double>(i), r.starts[i].cost, static_cast<double>(r.starts[i].iterations),
                               r.starts[i].converged ? 1.0 : 0.0});
    }
    out.table("optimize_starts", starts);
    out.summary({{"params", gg::to_json(r.params)},
                 {"cost", r.cost},
                 {"C_target", r.area},
                 {"robust", breakdown_json(r.robust)},
                 {"converged", r.converged},
                 {"iterations", r.iterations},
                 {"evaluations", r.evaluations},
                 {"best_start", r.best_start},
                 {"gate_time", r.gate_time},
                 {"note", kWeightNote}});
    return r.converged ? kExitOk : kExitNotConverged;
}

int cmd_simulate(const gg::RunConfig &cfg) {
    const gg::FrameData frame = gg::dressing(cfg.system);
    const gg::Waveform w = gg::synthesize_waveform(cfg.curve(), frame.design_beta(), cfg.samples);
    const gg::SimulationResult r = gg::simulate_gate(cfg.system, frame, w, cfg.gate_angle, cfg.noise, cfg.model);
    Output out(cfg, "simulate");
    out.table("simulate", {{"delta_omega", "delta_j", "crosstalk_on", "infidelity", "steps"},
                           {{cfg.noise.delta_omega, cfg.noise.delta_j, cfg.noise.crosstalk_on ? 1.0 : 0.0,
                             r.infidelity, static_cast<double>(r.steps)}}});
    out.summary({{"model", gg::to_string(cfg.model)},
                 {"noise", gg::to_json(cfg.noise)},
                 {"infidelity", r.infidelity},
                 {"steps", r.steps},
                 {"gate_time", w.T}});
    return kExitOk;
}

/// Slope along one axis through the origin of the other; null with a reason when unavailable.
gg::Json axis_slope(const gg::SweepResult &r, bool along_domega, double floor) {
    const std::vector<double> &axis = along_domega ? r.axis_domega : r.axis_dj;
    const std::vector<double> &other = along_domega ? r.axis_dj : r.axis_domega;
    std::optional<std::size_t> zero;
    for (std::size_t k = 0; k < other.size(); ++k) {
        if (other[k] == 0.0) zero = k;
    }
    if (!zero) {
        return gg::Json{{"slope", nullptr}, {"reason", "grid has no zero on the other axis"}};
    }
    std::vector<double> y;
    for (std::size_t k = 0; k < axis.size(); ++k) {
        y.push_back(along_domega ? r.at(k, *zero) : r.at(*zero, k));
    }
    try {
        const gg::SlopeFit fit = gg::slope_fit(axis, y, floor);
        return gg::Json{{"slope", fit.slope}, {"points_used", fit.points_used}};
    } catch (const gg::FitError &e) {
        return gg::Json{{"slope", nullptr}, {"reason", e.what()}};
    }
}

int cmd_sweep(const gg::RunConfig &cfg, unsigned threads) {
    const gg::FrameData frame = gg::dressing(cfg.system);
    const gg::Waveform w = gg::synthesize_waveform(cfg.curve(), frame.design_beta(), cfg.samples);
    const gg::SweepResult r = gg::noise_sweep(cfg.system, frame, w, cfg.gate_angle, cfg.sweep, cfg.model, threads);
    const double floor =
        gg::simulate_gate(cfg.system, frame, w, cfg.gate_angle, {0.0, 0.0, cfg.sweep.crosstalk_on}, cfg.model).infidelity;
    Output out(cfg, "sweep");
    out.table("sweep", gg::sweep_table(r));
    double max_infidelity = 0.0;
    for (double v : r.infidelity) max_infidelity = std::max(max_infidelity, v);
    out.summary({{"model", gg::to_string(r.model)},
                 {"rows", r.infidelity.size()},
                 {"steps", r.steps},
                 {"floor", floor},
                 {"max_infidelity", max_infidelity},
                 {"slope_domega", axis_slope(r, true, floor)},
                 {"slope_dj", axis_slope(r, false, floor)},
                 {"gate_time", w.T}});
    return kExitOk;
}

int cmd_audit(const std::optional<std::string> &out_dir) {
    const std::vector<gg::AuditRow> rows = gg::audit_report();
    std::cout << gg::format_audit(rows);
    if (out_dir) {
        std::filesystem::create_directories(*out_dir);
        gg::Json j = gg::Json::array();
        for (const auto &row : rows) j.push_back(gg::to_json(row));
        gg::write_file((std::filesystem::path(*out_dir) / "audit.json").string(), gg::dump_json(j));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Design, audit and simulate geodesic single-qubit gates under always-on coupling"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--seed", o.seed, "Seed for the multi-start optimizer (default 42)");
    app.add_option("--out", o.out, "Output directory (default .)");
    app.add_option("--format", o.format, "Bulk output format: csv or json");
    app.add_option("--threads", o.threads, "Worker threads (default GEODESIC_GATES_THREADS or all cores)");
    app.add_option("--preset", o.preset, "Preset {xpi|xhalfpi}-{2q|3q}-{robust|nonrobust}");
    app.add_option("--phi", o.phi, "Gate angle, e.g. pi, pi/2 or 1.5707963267948966");
    app.add_option("--setting", o.setting, "2q-midpoint, 2q-resonant or 3q");
    app.add_option("--model", o.model, "reduced or lab");
    app.add_option("--b1", o.b1, "Ansatz coefficient b1");
    app.add_option("--b2", o.b2, "Ansatz coefficient b2");
    app.add_option("--b3", o.b3, "Ansatz coefficient b3");
    app.add_option("--c", o.c, "Ansatz coefficient c");
    app.add_option("--samples", o.samples, "Waveform samples (default 4097)");

    auto *synth = app.add_subcommand("synth", "Synthesize the waveform and curve for a parameter set");
    auto *cost = app.add_subcommand("cost", "Evaluate the area constraint and robustness cost");
    cost->add_option("--weights", o.weights, "Channel weights freq,coupling,crosstalk")->delimiter(',')->expected(3);
    auto *optimize = app.add_subcommand("optimize", "Multi-start search for robust parameters");
    optimize->add_option("--weights", o.weights, "Channel weights freq,coupling,crosstalk")->delimiter(',')->expected(3);
    optimize->add_option("--starts", o.starts, "Number of seeded starts (default 16)");
    optimize->add_option("--max-iters", o.max_iters, "Iteration budget per start");
    optimize->add_option("--init-box", o.init_box, "Half-width of the initial-point box");
    auto *simulate = app.add_subcommand("simulate", "Propagate one gate and report its infidelity");
    simulate->add_option("--domega", o.domega, "Quasi-static frequency offset");
    simulate->add_option("--dj", o.dj, "Quasi-static coupling offset");
    simulate->add_option("--crosstalk", o.crosstalk, "Control crosstalk on or off (default on)");
    auto *sweep = app.add_subcommand("sweep", "Infidelity over a (domega, dJ) grid with slope fits");
    sweep->add_option("--points", o.points, "Points per axis (default 41, at most 201)");
    sweep->add_option("--range", o.range, "Axis half-width (default 0.1)");
    sweep->add_option("--crosstalk", o.crosstalk, "Control crosstalk on or off (default on)");
    auto *audit = app.add_subcommand("audit", "Reconcile the preset tables with closed forms and quadrature");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (audit->parsed()) {
            return cmd_audit(o.out);
        }
        const gg::RunConfig cfg = build_config(o);
        const unsigned threads = o.threads.value_or(gg::default_thread_count());
        if (synth->parsed()) return cmd_synth(cfg);
        if (cost->parsed()) return cmd_cost(cfg);
        if (optimize->parsed()) return cmd_optimize(cfg, threads);
        if (simulate->parsed()) return cmd_simulate(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg, threads);
    } catch (const gg::ConfigError &e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
