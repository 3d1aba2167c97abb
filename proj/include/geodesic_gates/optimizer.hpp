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

#ifndef GEODESIC_GATES_OPTIMIZER_HPP
#define GEODESIC_GATES_OPTIMIZER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "geodesic_gates/curve.hpp"
#include "geodesic_gates/error_functionals.hpp"
#include "geodesic_gates/model.hpp"
#include "geodesic_gates/parallel.hpp"

namespace geodesic_gates {

enum class OptimizerSetting { TwoQubitMidpoint, TwoQubitResonant, ThreeQubit };

inline std::string to_string(OptimizerSetting s) {
    switch (s) {
        case OptimizerSetting::TwoQubitMidpoint:
            return "2q-midpoint";
        case OptimizerSetting::TwoQubitResonant:
            return "2q-resonant";
        case OptimizerSetting::ThreeQubit:
            return "3q";
    }
    return "unknown";
}

inline OptimizerSetting setting_from_string(const std::string &s) {
    if (s == "2q-midpoint") return OptimizerSetting::TwoQubitMidpoint;
    if (s == "2q-resonant") return OptimizerSetting::TwoQubitResonant;
    if (s == "3q") return OptimizerSetting::ThreeQubit;
    throw ConfigError("unknown setting '" + s + "' (expected 2q-midpoint, 2q-resonant or 3q)");
}

inline SystemConfig system_for(OptimizerSetting s) {
    switch (s) {
        case OptimizerSetting::TwoQubitMidpoint:
            return SystemConfig::two_qubit(DriveChoice::Midpoint);
        case OptimizerSetting::TwoQubitResonant:
            return SystemConfig::two_qubit(DriveChoice::ResonantLower);
        case OptimizerSetting::ThreeQubit:
            return SystemConfig::three_qubit();
    }
    return SystemConfig{};
}

inline OptimizerSetting setting_of(const SystemConfig &system) {
    if (system.n_qubits == 3) return OptimizerSetting::ThreeQubit;
    return system.drive_choice == DriveChoice::Midpoint ? OptimizerSetting::TwoQubitMidpoint
                                                        : OptimizerSetting::TwoQubitResonant;
}

/// Zero enclosed area is required whenever a beta = 0 block exists.
inline bool requires_zero_area(OptimizerSetting s) { return s != OptimizerSetting::TwoQubitMidpoint; }

enum class AreaConstraint { None, Eliminate, Penalty };

struct OptimizerConfig {
    double w1 = 1e4;
    double w2 = 1.0;
    ChannelWeights channels;
    /// Subset of {"b1", "b2", "b3", "c"}; the remaining coefficients are held at zero. b3 may
    /// only be free when the area constraint is not eliminated.
    std::vector<std::string> free_params{"b1", "b2", "c"};
    AreaConstraint area = AreaConstraint::Eliminate;
    int starts = 16;
    std::uint64_t seed = 42;
    int max_iters = 2000;
    double tol = 1e-12;
    /// Initial points are drawn uniformly from [-init_box, init_box] per free parameter.
    double init_box = 300.0;
    std::size_t chi_intervals = kChiIntervals;

    /// Defaults per setting: the two-qubit midpoint drive needs no area constraint and its
    /// robust solutions have O(1) coefficients; zero-area settings eliminate b3.
    static OptimizerConfig defaults_for(OptimizerSetting s) {
        OptimizerConfig c;
        if (s == OptimizerSetting::TwoQubitMidpoint) {
            c.w1 = 0.0;
            c.free_params = {"b1", "c"};
            c.area = AreaConstraint::None;
            c.init_box = 10.0;
        } else if (s == OptimizerSetting::TwoQubitResonant) {
            c.init_box = 10.0;
        }
        return c;
    }

    void validate() const {
        if (!(w1 >= 0.0) || !(w2 >= 0.0) || !std::isfinite(w1) || !std::isfinite(w2)) {
            throw ConfigError("optimizer weights must be finite and nonnegative");
        }
        ChannelWeights::from_span(std::vector<double>{channels.freq, channels.coupling, channels.crosstalk});
        if (starts < 1) throw ConfigError("optimizer starts must be at least 1");
        if (max_iters < 1) throw ConfigError("optimizer max_iters must be at least 1");
        if (!(tol > 0.0)) throw ConfigError("optimizer tol must be positive");
        if (!(init_box > 0.0)) throw ConfigError("optimizer init_box must be positive");
        if (free_params.empty()) throw ConfigError("optimizer needs at least one free parameter");
        for (const auto &name : free_params) {
            if (name != "b1" && name != "b2" && name != "b3" && name != "c") {
                throw ConfigError("free parameter '" + name + "' is not one of b1, b2, b3, c");
            }
            if (name == "b3" && area == AreaConstraint::Eliminate) {
                throw ConfigError("b3 cannot be free while the area constraint eliminates it");
            }
        }
    }
};

/// w1 |C_target|^2 + w2 |C_robust|^2.
inline double total_cost(const CurveSamples &samples, const SystemConfig &system, const FrameData &frame,
                         const OptimizerConfig &cfg) {
    double cost = 0.0;
    if (cfg.w1 != 0.0) {
        const double area = area_functional(samples);
        cost += cfg.w1 * area * area;
    }
    if (cfg.w2 != 0.0) {
        cost += cfg.w2 * robust_cost_breakdown(samples, system, frame, cfg.channels).total;
    }
    return cost;
}

inline double total_cost(const CurveParams &params, const SystemConfig &system, const FrameData &frame,
                         const OptimizerConfig &cfg) {
    return total_cost(sample_curve(params, cfg.chi_intervals), system, frame, cfg);
}

struct NelderMeadResult {
    std::vector<double> x;
    double f = std::numeric_limits<double>::infinity();
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

/// Nelder-Mead simplex descent (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
/// Stops when the spread of simplex values is below tol (1 + |f_best|) or after max_iters.
template <class Objective>
NelderMeadResult nelder_mead(Objective &&f, const std::vector<double> &x0, double step, int max_iters, double tol) {
    const std::size_t n = x0.size();
    NelderMeadResult r;
    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += step;
    }
    for (std::size_t i = 0; i <= n; ++i) {
        values[i] = f(simplex[i]);
        ++r.evaluations;
    }
    std::vector<std::size_t> order(n + 1);
    auto point = [&](const std::vector<double> &centroid, const std::vector<double> &worst, double coef) {
        std::vector<double> p(n);
        for (std::size_t j = 0; j < n; ++j) {
            p[j] = centroid[j] + coef * (worst[j] - centroid[j]);
        }
        return p;
    };
    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
        const double spread = values[worst] - values[best];
        double diameter = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                diameter = std::max(diameter, std::abs(simplex[i][j] - simplex[best][j]));
            }
        }
        if (std::isfinite(values[best]) && (spread <= tol * (1.0 + std::abs(values[best])) || diameter <= 1e-13)) {
            r.converged = true;
            break;
        }
        if (r.iterations >= max_iters) {
            break;
        }
        ++r.iterations;
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);
        }
        const std::vector<double> reflected = point(centroid, simplex[worst], -1.0);
        const double fr = f(reflected);
        ++r.evaluations;
        if (fr < values[best]) {
            const std::vector<double> expanded = point(centroid, simplex[worst], -2.0);
            const double fe = f(expanded);
            ++r.evaluations;
            if (fe < fr) {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second]) {
            simplex[worst] = reflected;
            values[worst] = fr;
            continue;
        }
        const bool outside = fr < values[worst];
        const std::vector<double> contracted = point(centroid, simplex[worst], outside ? -0.5 : 0.5);
        const double fc = f(contracted);
        ++r.evaluations;
        if (fc < (outside ? fr : values[worst])) {
            simplex[worst] = contracted;
            values[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < n; ++j) {
                simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
            }
            values[i] = f(simplex[i]);
            ++r.evaluations;
        }
    }
    const auto best_it = std::min_element(values.begin(), values.end());
    r.f = *best_it;
    r.x = simplex[static_cast<std::size_t>(best_it - values.begin())];
    return r;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t &state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Uniform double in [0, 1) with 53 random bits; identical on every platform.
inline double unit_uniform(std::uint64_t &state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Maps free-parameter vectors to ansatz parameters with a fixed cubic term and, when zero area
/// is enforced, b3 from the affine area solve.
class ParameterMap {
   public:
    ParameterMap(double gate_angle, const OptimizerConfig &cfg)
        : gate_angle_(gate_angle), names_(cfg.free_params), eliminate_(cfg.area == AreaConstraint::Eliminate) {
        if (eliminate_) {
            area_ = area_coefficients(cfg.chi_intervals);
        }
    }

    CurveParams operator()(const std::vector<double> &x) const {
        CurveParams p = CurveParams::for_angle(gate_angle_);
        for (std::size_t i = 0; i < names_.size(); ++i) {
            (names_[i] == "b1" ? p.b1 : names_[i] == "b2" ? p.b2 : names_[i] == "b3" ? p.b3 : p.c) = x[i];
        }
        if (eliminate_) {
            p.b3 = -(area_.a * p.a + area_.b1 * p.b1 + area_.b2 * p.b2 + area_.c * p.c) / area_.b3;
        }
        return p;
    }

    std::size_t size() const { return names_.size(); }

   private:
    double gate_angle_;
    std::vector<std::string> names_;
    bool eliminate_;
    AreaCoefficients area_;
};

struct StartRecord {
    std::vector<double> initial;
    double cost = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

struct OptimizeResult {
    CurveParams params;
    double cost = std::numeric_limits<double>::infinity();
    double area = 0.0;
    CostBreakdown robust;
    bool converged = false;
    int iterations = 0;
    int evaluations = 0;
    int best_start = -1;
    double gate_time = 0.0;
    std::vector<StartRecord> starts;
};

/// Deterministic multi-start Nelder-Mead. Start i draws its initial point from a generator
/// seeded by (seed, i), so the result does not depend on the thread count and the best cost is
/// non-increasing in the number of starts. Each start re-launches the simplex from its
/// converged point with a smaller step until no further improvement.
inline OptimizeResult optimize(double gate_angle, const SystemConfig &system, const OptimizerConfig &cfg,
                               unsigned threads = 1) {
    cfg.validate();
    system.validate();
    if (!(gate_angle > 0.0 && gate_angle <= 2.0 * kPi)) {
        throw ConfigError("optimize: gate angle must lie in (0, 2 pi]");
    }
    const FrameData frame = dressing(system);
    const ParameterMap map(gate_angle, cfg);
    auto objective = [&](const std::vector<double> &x) {
        try {
            const double v = total_cost(map(x), system, frame, cfg);
            return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
        } catch (const ConfigError &) {
            return std::numeric_limits<double>::infinity();
        }
    };

    OptimizeResult result;
    result.starts.resize(static_cast<std::size_t>(cfg.starts));
    std::vector<NelderMeadResult> runs(result.starts.size());
    parallel_for(result.starts.size(), threads, [&](std::size_t i) {
        std::uint64_t state = cfg.seed ^ (0xD1B54A32D192ED03ULL * (i + 1));
        std::vector<double> x0(map.size());
        for (double &v : x0) {
            v = cfg.init_box * (2.0 * detail::unit_uniform(state) - 1.0);
        }
        result.starts[i].initial = x0;
        double step = 0.1 * cfg.init_box;
        NelderMeadResult run = nelder_mead(objective, x0, step, cfg.max_iters, cfg.tol);
        int iterations = run.iterations, evaluations = run.evaluations;
        for (int polish = 0; polish < 4 && iterations < cfg.max_iters; ++polish) {
            step = std::max(1e-6, 0.1 * step);
            NelderMeadResult again = nelder_mead(objective, run.x, step, cfg.max_iters - iterations, cfg.tol);
            iterations += again.iterations;
            evaluations += again.evaluations;
            const bool improved = again.f < run.f - cfg.tol * (1.0 + std::abs(run.f));
            if (again.f <= run.f) {
                run.x = again.x;
                run.f = again.f;
            }
            run.converged = again.converged;
            if (!improved) break;
        }
        run.iterations = iterations;
        run.evaluations = evaluations;
        runs[i] = run;
        result.starts[i].cost = run.f;
        result.starts[i].iterations = iterations;
        result.starts[i].converged = run.converged;
    });

    for (std::size_t i = 0; i < runs.size(); ++i) {
        result.iterations += runs[i].iterations;
        result.evaluations += runs[i].evaluations;
        if (runs[i].f < result.cost) {
            result.cost = runs[i].f;
            result.best_start = static_cast<int>(i);
        }
    }
    if (result.best_start < 0) {
        throw ConfigError("optimize: every start produced a non-finite cost");
    }
    const NelderMeadResult &best = runs[static_cast<std::size_t>(result.best_start)];
    result.params = map(best.x);
    result.converged = best.converged;
    const CurveSamples samples = sample_curve(result.params, cfg.chi_intervals);
    result.area = area_functional(samples);
    result.robust = robust_cost_breakdown(samples, system, frame, cfg.channels);
    result.gate_time = samples.arc_length() / frame.design_beta();
    return result;
}

/// One row of the reference parameter tables, stored as printed. The printed b and c values
/// belong to the mirror curve phi -> -phi, whose cubic coefficient is +Phi/(32 pi^3);
/// canonical_params() negates them to pair with the printed cubic term a = -Phi/(32 pi^3).
struct PresetRow {
    std::string name;
    double gate_angle = kPi;
    OptimizerSetting setting = OptimizerSetting::TwoQubitMidpoint;
    bool robust = false;
    double a = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;
    double c = 0.0;

    CurveParams printed_params() const {
        CurveParams p = CurveParams::for_angle(gate_angle, b1, b2, b3, c);
        p.a = a;
        return p;
    }

    /// The printed coefficients with the mirrored cubic term, phi(4 pi) - phi(0) = -Phi.
    CurveParams mirror_params() const { return CurveParams::for_angle(-gate_angle, b1, b2, b3, c); }

    CurveParams canonical_params() const { return CurveParams::for_angle(gate_angle, -b1, -b2, -b3, -c); }

    SystemConfig system() const { return system_for(setting); }
};

using PresetTable = std::vector<PresetRow>;

inline PresetTable presets() {
    const double a_pi = -1.0 / (32.0 * kPi * kPi);
    const double a_half = -1.0 / (64.0 * kPi * kPi);
    const auto two = OptimizerSetting::TwoQubitMidpoint;
    const auto three = OptimizerSetting::ThreeQubit;
    return {
        {"xpi-2q-nonrobust", kPi, two, false, a_pi, 0.0, 0.0, 0.0, 0.0},
        {"xpi-2q-robust", kPi, two, true, a_pi, -5.86744, 0.0, 0.0, 5.46421},
        {"xpi-3q-nonrobust", kPi, three, false, a_pi, 5.71915, 0.0, 0.0, 0.0},
        {"xpi-3q-robust", kPi, three, true, a_pi, 221.65146, -20.91401, 101.22649, -136.55137},
        {"xhalfpi-2q-nonrobust", kPi / 2, two, false, a_half, 0.0, 0.0, 0.0, 0.0},
        {"xhalfpi-2q-robust", kPi / 2, two, true, a_half, -2.93379, 0.0, 0.0, 4.81114},
        {"xhalfpi-3q-nonrobust", kPi / 2, three, false, a_half, 2.85958, 0.0, 0.0, 0.0},
        {"xhalfpi-3q-robust", kPi / 2, three, true, a_half, 124.10776, -12.12601, 57.20512, -73.09143},
    };
}

inline const PresetRow &find_preset(const PresetTable &table, const std::string &name) {
    for (const auto &row : table) {
        if (row.name == name) {
            return row;
        }
    }
    throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace geodesic_gates

#endif  // GEODESIC_GATES_OPTIMIZER_HPP
