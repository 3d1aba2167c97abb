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

#ifndef GEODESIC_GATES_IO_HPP
#define GEODESIC_GATES_IO_HPP

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "geodesic_gates/curve.hpp"
#include "geodesic_gates/dynamics.hpp"
#include "geodesic_gates/error_functionals.hpp"
#include "geodesic_gates/model.hpp"
#include "geodesic_gates/optimizer.hpp"
#include "json.hpp"

namespace geodesic_gates {

using Json = nlohmann::ordered_json;

/// Shortest decimal text that parses back to exactly the same double.
inline std::string format_double(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

inline double parse_double(const std::string &text) {
    double v = 0.0;
    const char *end = text.data() + text.size();
    const auto r = std::from_chars(text.data(), end, v);
    if (r.ec != std::errc() || r.ptr != end) {
        throw ConfigError("not a number: '" + text + "'");
    }
    return v;
}

/// 64-bit FNV-1a, printed as 16 lowercase hex digits.
inline std::string fnv1a_hex(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Compact dump with two-space indentation and a trailing newline.
inline std::string dump_json(const Json &j) { return j.dump(2) + "\n"; }

inline Json parse_json(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
}

namespace detail {

inline void check_keys(const Json &j, const char *where, std::initializer_list<const char *> allowed) {
    if (!j.is_object()) {
        throw ConfigError(std::string(where) + ": expected a JSON object");
    }
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto &item : j.items()) {
        if (!ok.count(item.key())) {
            throw ConfigError(std::string(where) + ": unknown key '" + item.key() + "'");
        }
    }
}

template <class T>
void read_field(const Json &j, const char *key, T &out, const char *where) {
    if (!j.contains(key)) {
        return;
    }
    try {
        out = j.at(key).get<T>();
    } catch (const nlohmann::json::exception &) {
        throw ConfigError(std::string(where) + ": field '" + key + "' has the wrong type");
    }
}

}  // namespace detail

inline Json to_json(const SystemConfig &c) {
    return Json{{"n_qubits", c.n_qubits}, {"delta", c.delta},         {"g1", c.g1},
                {"g2", c.g2},             {"omega_ref", c.omega_ref}, {"drive_choice", to_string(c.drive_choice)}};
}

inline SystemConfig system_from_json(const Json &j) {
    detail::check_keys(j, "system", {"n_qubits", "delta", "g1", "g2", "omega_ref", "drive_choice"});
    SystemConfig c;
    detail::read_field(j, "n_qubits", c.n_qubits, "system");
    if (c.n_qubits == 3) {
        c.drive_choice = DriveChoice::Center;
    }
    detail::read_field(j, "delta", c.delta, "system");
    detail::read_field(j, "g1", c.g1, "system");
    detail::read_field(j, "g2", c.g2, "system");
    detail::read_field(j, "omega_ref", c.omega_ref, "system");
    std::string drive = to_string(c.drive_choice);
    detail::read_field(j, "drive_choice", drive, "system");
    c.drive_choice = drive_choice_from_string(drive);
    c.validate();
    return c;
}

inline Json to_json(const CurveParams &p) {
    return Json{{"phi", p.phi_target}, {"a", p.a}, {"b1", p.b1}, {"b2", p.b2}, {"b3", p.b3}, {"c", p.c}};
}

/// Reads ansatz parameters. When "a" is absent it follows from "phi" as -phi / (32 pi^3).
inline CurveParams params_from_json(const Json &j) {
    detail::check_keys(j, "params", {"phi", "a", "b1", "b2", "b3", "c"});
    CurveParams p;
    detail::read_field(j, "phi", p.phi_target, "params");
    p.a = CurveParams::cubic_for_angle(p.phi_target);
    detail::read_field(j, "a", p.a, "params");
    detail::read_field(j, "b1", p.b1, "params");
    detail::read_field(j, "b2", p.b2, "params");
    detail::read_field(j, "b3", p.b3, "params");
    detail::read_field(j, "c", p.c, "params");
    p.validate();
    return p;
}

inline std::string to_string(AreaConstraint a) {
    switch (a) {
        case AreaConstraint::None:
            return "none";
        case AreaConstraint::Eliminate:
            return "eliminate";
        case AreaConstraint::Penalty:
            return "penalty";
    }
    return "unknown";
}

inline AreaConstraint area_constraint_from_string(const std::string &s) {
    if (s == "none") return AreaConstraint::None;
    if (s == "eliminate") return AreaConstraint::Eliminate;
    if (s == "penalty") return AreaConstraint::Penalty;
    throw ConfigError("unknown area constraint '" + s + "' (expected none, eliminate or penalty)");
}

inline Json to_json(const OptimizerConfig &c) {
    return Json{{"w1", c.w1},
                {"w2", c.w2},
                {"channel_weights", {c.channels.freq, c.channels.coupling, c.channels.crosstalk}},
                {"free_params", c.free_params},
                {"area", to_string(c.area)},
                {"starts", c.starts},
                {"seed", c.seed},
                {"max_iters", c.max_iters},
                {"tol", c.tol},
                {"init_box", c.init_box}};
}

/// Reads optimizer settings on top of the defaults for `setting`.
inline OptimizerConfig optimizer_from_json(const Json &j, OptimizerSetting setting) {
    detail::check_keys(j, "optimizer", {"w1", "w2", "channel_weights", "free_params", "area", "starts", "seed",
                                        "max_iters", "tol", "init_box"});
    OptimizerConfig c = OptimizerConfig::defaults_for(setting);
    detail::read_field(j, "w1", c.w1, "optimizer");
    detail::read_field(j, "w2", c.w2, "optimizer");
    if (j.contains("channel_weights")) {
        std::vector<double> w;
        detail::read_field(j, "channel_weights", w, "optimizer");
        c.channels = ChannelWeights::from_span(w);
    }
    detail::read_field(j, "free_params", c.free_params, "optimizer");
    std::string area = to_string(c.area);
    detail::read_field(j, "area", area, "optimizer");
    c.area = area_constraint_from_string(area);
    detail::read_field(j, "starts", c.starts, "optimizer");
    detail::read_field(j, "seed", c.seed, "optimizer");
    detail::read_field(j, "max_iters", c.max_iters, "optimizer");
    detail::read_field(j, "tol", c.tol, "optimizer");
    detail::read_field(j, "init_box", c.init_box, "optimizer");
    c.validate();
    return c;
}

inline Json to_json(const AxisSpec &a) { return Json{{"lo", a.lo}, {"hi", a.hi}, {"points", a.points}}; }

inline AxisSpec axis_from_json(const Json &j) {
    detail::check_keys(j, "sweep axis", {"lo", "hi", "points"});
    AxisSpec a;
    detail::read_field(j, "lo", a.lo, "sweep axis");
    detail::read_field(j, "hi", a.hi, "sweep axis");
    detail::read_field(j, "points", a.points, "sweep axis");
    a.values();
    return a;
}

inline Json to_json(const GridSpec &g) {
    return Json{{"domega", to_json(g.domega)}, {"dj", to_json(g.dj)}, {"crosstalk_on", g.crosstalk_on}};
}

inline GridSpec grid_from_json(const Json &j) {
    detail::check_keys(j, "sweep", {"domega", "dj", "crosstalk_on"});
    GridSpec g;
    if (j.contains("domega")) g.domega = axis_from_json(j.at("domega"));
    if (j.contains("dj")) g.dj = axis_from_json(j.at("dj"));
    detail::read_field(j, "crosstalk_on", g.crosstalk_on, "sweep");
    return g;
}

inline Json to_json(const NoiseSetting &n) {
    return Json{{"delta_omega", n.delta_omega}, {"delta_j", n.delta_j}, {"crosstalk_on", n.crosstalk_on}};
}

inline NoiseSetting noise_from_json(const Json &j) {
    detail::check_keys(j, "noise", {"delta_omega", "delta_j", "crosstalk_on"});
    NoiseSetting n;
    detail::read_field(j, "delta_omega", n.delta_omega, "noise");
    detail::read_field(j, "delta_j", n.delta_j, "noise");
    detail::read_field(j, "crosstalk_on", n.crosstalk_on, "noise");
    n.validate();
    return n;
}

enum class OutputFormat { Csv, Json };

inline std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

inline OutputFormat output_format_from_string(const std::string &s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ConfigError("unknown format '" + s + "' (expected csv or json)");
}

/// Everything a CLI run depends on. A preset, when named, supplies the parameters and setting.
struct RunConfig {
    SystemConfig system;
    double gate_angle = kPi;
    OptimizerSetting setting = OptimizerSetting::TwoQubitMidpoint;
    std::string preset;
    std::optional<CurveParams> params;
    OptimizerConfig optimizer = OptimizerConfig::defaults_for(OptimizerSetting::TwoQubitMidpoint);
    GridSpec sweep;
    NoiseSetting noise;
    SimModel model = SimModel::Reduced;
    std::size_t samples = 4097;
    std::string out_dir = ".";
    OutputFormat format = OutputFormat::Csv;
    std::uint64_t seed = 42;

    /// Parameters to evaluate: the explicit set, else the canonical preset curve.
    CurveParams curve() const {
        if (params) {
            return *params;
        }
        if (!preset.empty()) {
            return find_preset(presets(), preset).canonical_params();
        }
        throw ConfigError("no curve parameters: give a preset or explicit params");
    }

    void validate() const {
        system.validate();
        if (!(gate_angle > 0.0 && gate_angle <= 2.0 * kPi)) {
            throw ConfigError("gate angle must lie in (0, 2 pi]");
        }
        if (!preset.empty()) {
            const PresetRow &row = find_preset(presets(), preset);
            if (std::abs(row.gate_angle - gate_angle) > 1e-9) {
                throw ConfigError("gate angle " + format_double(gate_angle) + " does not match preset '" + preset +
                                  "' (" + format_double(row.gate_angle) + ")");
            }
            if (row.setting != setting_of(system)) {
                throw ConfigError("system does not match preset '" + preset + "'");
            }
        }
        if (setting_of(system) != setting) {
            throw ConfigError("setting '" + to_string(setting) + "' does not match the system configuration");
        }
        if (params) {
            params->validate();
            if (std::abs(params->a - CurveParams::cubic_for_angle(gate_angle)) > 1e-12 * std::max(1.0, std::abs(params->a))) {
                throw ConfigError("params: cubic coefficient a does not match the gate angle");
            }
        }
        optimizer.validate();
        sweep.domega.values();
        sweep.dj.values();
        noise.validate();
        if (samples < 256) {
            throw ConfigError("samples must be at least 256");
        }
    }
};

inline Json to_json(const RunConfig &c) {
    Json j;
    j["system"] = to_json(c.system);
    j["gate"] = Json{{"phi", c.gate_angle}, {"setting", to_string(c.setting)}, {"preset", c.preset}};
    if (c.params) {
        j["params"] = to_json(*c.params);
    }
    j["optimizer"] = to_json(c.optimizer);
    j["sweep"] = to_json(c.sweep);
    j["noise"] = to_json(c.noise);
    j["model"] = to_string(c.model);
    j["samples"] = c.samples;
    j["output"] = Json{{"dir", c.out_dir}, {"format", to_string(c.format)}};
    j["seed"] = c.seed;
    return j;
}

/// Reads a run configuration. Missing sections take their defaults; a preset fills in the
/// setting, system and gate angle unless those are given explicitly.
inline RunConfig run_config_from_json(const Json &j) {
    detail::check_keys(j, "config",
                       {"system", "gate", "params", "optimizer", "sweep", "noise", "model", "samples", "output", "seed"});
    RunConfig c;
    std::string setting_name;
    bool has_phi = false;
    if (j.contains("gate")) {
        const Json &g = j.at("gate");
        detail::check_keys(g, "gate", {"phi", "setting", "preset"});
        detail::read_field(g, "preset", c.preset, "gate");
        detail::read_field(g, "setting", setting_name, "gate");
        has_phi = g.contains("phi");
        detail::read_field(g, "phi", c.gate_angle, "gate");
    }
    if (!c.preset.empty()) {
        const PresetRow &row = find_preset(presets(), c.preset);
        c.setting = row.setting;
        if (!has_phi) {
            c.gate_angle = row.gate_angle;
        }
    }
    if (!setting_name.empty()) {
        c.setting = setting_from_string(setting_name);
    }
    c.system = j.contains("system") ? system_from_json(j.at("system")) : system_for(c.setting);
    if (j.contains("params")) {
        c.params = params_from_json(j.at("params"));
        if (!j.at("params").contains("phi")) {
            c.params->phi_target = c.gate_angle;
            if (!j.at("params").contains("a")) {
                c.params->a = CurveParams::cubic_for_angle(c.gate_angle);
            }
        }
    }
    c.optimizer = j.contains("optimizer") ? optimizer_from_json(j.at("optimizer"), c.setting)
                                          : OptimizerConfig::defaults_for(c.setting);
    if (j.contains("sweep")) c.sweep = grid_from_json(j.at("sweep"));
    if (j.contains("noise")) c.noise = noise_from_json(j.at("noise"));
    std::string model = to_string(c.model);
    detail::read_field(j, "model", model, "config");
    c.model = sim_model_from_string(model);
    detail::read_field(j, "samples", c.samples, "config");
    if (j.contains("output")) {
        const Json &o = j.at("output");
        detail::check_keys(o, "output", {"dir", "format"});
        detail::read_field(o, "dir", c.out_dir, "output");
        std::string format = to_string(c.format);
        detail::read_field(o, "format", format, "output");
        c.format = output_format_from_string(format);
    }
    detail::read_field(j, "seed", c.seed, "config");
    c.optimizer.seed = c.seed;
    c.validate();
    return c;
}

/// Hash of the canonical JSON form of a run configuration.
inline std::string config_hash(const RunConfig &c) { return fnv1a_hex(to_json(c).dump()); }

/// Numeric table with a header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// '.' decimals, ',' separators, '\n' line endings, shortest round-trip numbers.
inline std::string to_csv(const CsvTable &table) {
    std::string out;
    for (std::size_t k = 0; k < table.header.size(); ++k) {
        out += (k ? "," : "") + table.header[k];
    }
    out += '\n';
    for (const auto &row : table.rows) {
        if (row.size() != table.header.size()) {
            throw ContractViolation("to_csv: row width differs from the header");
        }
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out += ',';
            out += format_double(row[k]);
        }
        out += '\n';
    }
    return out;
}

inline CsvTable parse_csv(const std::string &text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    auto split = [](const std::string &s) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = s.find(',', start);
            cells.push_back(s.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return cells;
    };
    if (!std::getline(in, line)) {
        throw ConfigError("CSV: missing header");
    }
    table.header = split(line);
    while (std::getline(in, line)) {
        std::vector<double> row;
        for (const std::string &cell : split(line)) {
            row.push_back(parse_double(cell));
        }
        if (row.size() != table.header.size()) {
            throw ConfigError("CSV: row width differs from the header");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

/// Column-oriented JSON form of a table: {"column": [values...], ...}.
inline Json to_json(const CsvTable &table) {
    Json j = Json::object();
    for (std::size_t k = 0; k < table.header.size(); ++k) {
        Json column = Json::array();
        for (const auto &row : table.rows) {
            column.push_back(row[k]);
        }
        j[table.header[k]] = std::move(column);
    }
    return j;
}

inline CsvTable waveform_table(const Waveform &w) {
    CsvTable t{{"t", "omega"}, {}};
    t.rows.reserve(w.samples.size());
    for (std::size_t k = 0; k < w.samples.size(); ++k) {
        const double time = (k + 1 == w.samples.size()) ? w.T : static_cast<double>(k) * w.dt;
        t.rows.push_back({time, w.samples[k]});
    }
    return t;
}

/// Curve samples (chi, phi, theta), thinned to every `stride`-th grid point.
inline CsvTable curve_table(const CurveSamples &s, std::size_t stride = 16) {
    CsvTable t{{"chi", "phi", "theta"}, {}};
    for (std::size_t k = 0; k < s.points(); k += stride) {
        t.rows.push_back({s.grid->chi[k], s.phi[k], s.theta[k]});
    }
    if ((s.points() - 1) % stride != 0) {
        const std::size_t k = s.points() - 1;
        t.rows.push_back({s.grid->chi[k], s.phi[k], s.theta[k]});
    }
    return t;
}

/// Long format (domega, dj, infidelity).
inline CsvTable sweep_table(const SweepResult &r) {
    CsvTable t{{"domega", "dj", "infidelity"}, {}};
    for (std::size_t i = 0; i < r.axis_domega.size(); ++i) {
        for (std::size_t j = 0; j < r.axis_dj.size(); ++j) {
            t.rows.push_back({r.axis_domega[i], r.axis_dj[j], r.at(i, j)});
        }
    }
    return t;
}

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << contents) || !out.flush()) {
        throw ConfigError("cannot write '" + path + "'");
    }
}

/// One reconciliation row of the audit report.
struct AuditRow {
    std::string name;
    PresetRow row;
    /// C_target of the canonical curve; empty where the setting does not constrain the area.
    std::optional<double> c_target;
    /// closed_form_b3 and the quadrature zero-area b3 in the table's own orientation.
    std::optional<double> b3_closed_form;
    std::optional<double> b3_oracle;
    /// Closed-form and quadrature shortest zero-area b1, table orientation.
    std::optional<double> b1_closed_form;
    std::optional<double> b1_oracle;
    double robust_cost = 0.0;
    double gate_time = 0.0;
    std::vector<std::string> flags;
};

/// Reconciles every preset row against the closed forms and the quadrature oracles.
inline std::vector<AuditRow> audit_report() {
    std::vector<AuditRow> out;
    for (const PresetRow &row : presets()) {
        AuditRow a;
        a.name = row.name;
        a.row = row;
        const SystemConfig system = row.system();
        const FrameData frame = dressing(system);
        const CurveSamples s = sample_curve(row.canonical_params());
        a.robust_cost = robust_cost_breakdown(s, system, frame, ChannelWeights{}).total;
        a.gate_time = s.arc_length() / frame.design_beta();
        const double mirror_a = row.mirror_params().a;
        if (requires_zero_area(row.setting)) {
            a.c_target = area_functional(s);
            if (std::abs(*a.c_target) > 1e-4) {
                a.flags.push_back("C_target of the tabled curve is not zero");
            }
            if (row.robust) {
                a.b3_closed_form = closed_form_b3(mirror_a, row.b1, row.b2);
                a.b3_oracle = solve_b3_zero_area(row.mirror_params());
                if (std::abs(*a.b3_closed_form - *a.b3_oracle) > 1e-6 * std::max(1.0, std::abs(*a.b3_oracle))) {
                    a.flags.push_back("closed-form b3 disagrees with quadrature");
                }
                if (std::abs(*a.b3_oracle - row.b3) > 1e-3) {
                    a.flags.push_back("tabled b3 differs from the zero-area b3 by " +
                                      format_double(*a.b3_oracle - row.b3));
                }
            } else {
                a.b1_closed_form = shortest_b1(mirror_a);
                a.b1_oracle = solve_b1_zero_area(mirror_a);
                const double ratio = *a.b1_closed_form / *a.b1_oracle;
                if (std::abs(ratio - 1.0) > 1e-6) {
                    a.flags.push_back("closed-form shortest b1 = " + format_double(ratio) + " x quadrature b1");
                }
                if (std::abs(*a.b1_oracle - row.b1) <= 1e-3) {
                    a.flags.push_back("tabled b1 matches quadrature (factor 1)");
                } else if (std::abs(0.5 * *a.b1_oracle - row.b1) <= 1e-3) {
                    a.flags.push_back("tabled b1 matches half of quadrature");
                } else {
                    a.flags.push_back("tabled b1 matches neither quadrature nor its half");
                }
            }
            a.flags.push_back("tabled b, c are the mirror curve; canonical curve negates them");
        } else if (row.robust) {
            a.flags.push_back("tabled b, c are the mirror curve; canonical curve negates them");
        }
        out.push_back(std::move(a));
    }
    for (AuditRow &robust : out) {
        if (!robust.row.robust) continue;
        for (const AuditRow &plain : out) {
            if (!plain.row.robust && plain.row.setting == robust.row.setting &&
                plain.row.gate_angle == robust.row.gate_angle && robust.robust_cost >= plain.robust_cost) {
                robust.flags.push_back("robust row has a larger robust cost than the non-robust row (" +
                                       format_double(robust.robust_cost) + " vs " + format_double(plain.robust_cost) +
                                       ")");
            }
        }
    }
    return out;
}

inline Json to_json(const AuditRow &a) {
    auto opt = [](const std::optional<double> &v) { return v ? Json(*v) : Json("n/a"); };
    return Json{{"preset", a.name},
                {"table", {{"a", a.row.a}, {"b1", a.row.b1}, {"b2", a.row.b2}, {"b3", a.row.b3}, {"c", a.row.c}}},
                {"c_target", opt(a.c_target)},
                {"b3_closed_form", opt(a.b3_closed_form)},
                {"b3_oracle", opt(a.b3_oracle)},
                {"b1_closed_form", opt(a.b1_closed_form)},
                {"b1_oracle", opt(a.b1_oracle)},
                {"robust_cost", a.robust_cost},
                {"gate_time", a.gate_time},
                {"flags", a.flags}};
}

/// Plain-text table of the audit rows.
inline std::string format_audit(const std::vector<AuditRow> &rows) {
    auto cell = [](const std::optional<double> &v) {
        char buf[32];
        if (!v) return std::string("n/a");
        std::snprintf(buf, sizeof(buf), "%.6g", *v);
        return std::string(buf);
    };
    std::string out;
    char line[512];
    std::snprintf(line, sizeof(line), "%-22s %10s %10s %10s %12s %12s %12s %12s %12s %11s %8s\n", "preset", "b1", "b3",
                  "c", "C_target", "b3_closed", "b3_oracle", "b1_closed", "b1_oracle", "robust_cost", "T");
    out += line;
    for (const AuditRow &a : rows) {
        std::snprintf(line, sizeof(line), "%-22s %10.5f %10.5f %10.5f %12s %12s %12s %12s %12s %11.4e %8.3f\n",
                      a.name.c_str(), a.row.b1, a.row.b3, a.row.c, cell(a.c_target).c_str(),
                      cell(a.b3_closed_form).c_str(), cell(a.b3_oracle).c_str(), cell(a.b1_closed_form).c_str(),
                      cell(a.b1_oracle).c_str(), a.robust_cost, a.gate_time);
        out += line;
        for (const std::string &flag : a.flags) {
            out += "    - " + flag + "\n";
        }
    }
    return out;
}

}  // namespace geodesic_gates

#endif  // GEODESIC_GATES_IO_HPP
