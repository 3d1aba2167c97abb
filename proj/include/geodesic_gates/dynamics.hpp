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

#ifndef GEODESIC_GATES_DYNAMICS_HPP
#define GEODESIC_GATES_DYNAMICS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "geodesic_gates/model.hpp"
#include "geodesic_gates/parallel.hpp"
#include "geodesic_gates/tensor.hpp"
#include "geodesic_gates/waveform.hpp"

namespace geodesic_gates {

/// Largest quasi-static offset magnitude accepted, in units of the coupling J.
inline constexpr double kMaxNoise = 0.5;

struct NoiseSetting {
    double delta_omega = 0.0;
    double delta_j = 0.0;
    bool crosstalk_on = true;

    void validate() const {
        if (!std::isfinite(delta_omega) || !std::isfinite(delta_j) || std::abs(delta_omega) > kMaxNoise ||
            std::abs(delta_j) > kMaxNoise) {
            throw ConfigError("noise offsets must be finite with magnitude at most 0.5");
        }
    }
};

enum class SimModel { Reduced, LabFrame };

inline std::string to_string(SimModel m) { return m == SimModel::Reduced ? "reduced" : "lab"; }

inline SimModel sim_model_from_string(const std::string &s) {
    if (s == "reduced") return SimModel::Reduced;
    if (s == "lab") return SimModel::LabFrame;
    throw ConfigError("unknown model '" + s + "' (expected reduced or lab)");
}

struct SimulationOptions {
    /// Initial fourth-order Magnus step count; doubled until the fidelity settles.
    std::size_t initial_steps = 4000;
    double fidelity_tol = 1e-10;
    std::size_t max_steps = std::size_t{1} << 21;
    /// Lab-frame steps satisfy drive_frequency * dt below this bound.
    double carrier_phase_step = 0.05;
    /// When nonzero, propagate with exactly this many steps and skip the doubling loop.
    std::size_t fixed_steps = 0;
};

struct SimulationResult {
    ComplexMatrix U;
    double infidelity = 0.0;
    std::size_t steps = 0;
};

namespace detail {

inline void check_waveform(const FrameData &frame, const Waveform &waveform) {
    if (!(waveform.T > 0.0) || waveform.samples.size() < 2) {
        throw ConfigError("simulate_gate: empty waveform");
    }
    if (waveform.beta_design) {
        const double expected = frame.design_beta();
        const double got = std::abs(*waveform.beta_design);
        if (std::abs(got - expected) > 1e-9 * std::max(1.0, expected)) {
            throw ConfigError("simulate_gate: waveform was synthesized for |beta| = " + std::to_string(got) +
                              " but the system's design detuning is " + std::to_string(expected));
        }
    }
}

/// Smallest multiple of the waveform's sample intervals that is at least `minimum`, so every
/// integration step lies inside one linear segment of the envelope.
inline std::size_t aligned_steps(const Waveform &waveform, std::size_t minimum) {
    const std::size_t intervals = waveform.samples.size() - 1;
    return intervals * std::max<std::size_t>(1, (minimum + intervals - 1) / intervals);
}

/// Propagates each 2x2 diagonal block of static_part + 1/2 Omega(t) X_target separately.
inline ComplexMatrix propagate_blocks(const ComplexMatrix &static_part, const Waveform &waveform, std::size_t steps) {
    const std::size_t blocks = static_cast<std::size_t>(static_part.rows()) / 2;
    ComplexMatrix u = ComplexMatrix::Zero(static_part.rows(), static_part.cols());
    const std::vector<ComplexMatrix> ops_x{ComplexMatrix(0.5 * single_pauli('X'))};
    for (std::size_t i = 0; i < blocks; ++i) {
        const std::vector<ComplexMatrix> ops{ComplexMatrix(static_part.block<2, 2>(2 * i, 2 * i)), ops_x[0]};
        u.block<2, 2>(2 * i, 2 * i) = propagate_magnus4_linear(
            ops,
            [&](double t, double *c) {
                c[0] = 1.0;
                c[1] = waveform.value_at(t);
            },
            waveform.T, steps);
    }
    return u;
}

}  // namespace detail

/// Propagates the gate and scores it against I (x) R_X(gate_angle) in the logical frame.
/// Reduced: direct sum of 1/2 (beta_i Z + Omega X) blocks, plus control crosstalk when enabled.
/// LabFrame: the full driven Hamiltonian with envelope Omega / drive_scale, mapped to the logical
/// frame afterwards. Step counts start at a multiple of the waveform intervals and double until
/// the fidelity changes by less than the tolerance.
inline SimulationResult simulate_gate(const SystemConfig &system, const FrameData &frame, const Waveform &waveform,
                                      double gate_angle, const NoiseSetting &noise, SimModel model,
                                      const SimulationOptions &options = {}) {
    system.validate();
    noise.validate();
    detail::check_waveform(frame, waveform);
    const ComplexMatrix target = logical_target(system, gate_angle);

    std::function<ComplexMatrix(std::size_t)> run;
    std::size_t minimum = options.initial_steps;
    if (model == SimModel::Reduced) {
        auto reduced = std::make_shared<const ReducedModel>(system, frame, noise.crosstalk_on, noise.delta_omega,
                                                            noise.delta_j);
        if (!noise.crosstalk_on) {
            run = [&waveform, reduced](std::size_t n) {
                return detail::propagate_blocks(reduced->static_part(), waveform, n);
            };
        } else {
            run = [&waveform, reduced](std::size_t n) {
                return propagate_magnus4_linear(
                    reduced->operators(),
                    [&](double t, double *c) { reduced->coefficients(waveform.value_at(t), t, c); }, waveform.T, n);
            };
        }
    } else {
        auto lab = std::make_shared<const LabModel>(system, frame, noise.delta_omega, noise.delta_j);
        const double scale = 1.0 / frame.drive_scale;
        run = [&system, &frame, &waveform, lab, scale](std::size_t n) {
            const ComplexMatrix u = propagate_magnus4_linear(
                lab->operators(), [&](double t, double *c) { lab->coefficients(scale * waveform.value_at(t), t, c); },
                waveform.T, n);
            return to_logical_frame(system, frame, u, waveform.T);
        };
        const double carrier = std::abs(frame.drive_frequency) * waveform.T / options.carrier_phase_step;
        minimum = std::max(minimum, static_cast<std::size_t>(std::ceil(carrier)));
    }
    std::size_t steps = detail::aligned_steps(waveform, minimum);

    SimulationResult result;
    if (options.fixed_steps > 0) {
        result.U = run(options.fixed_steps);
        result.steps = options.fixed_steps;
        result.infidelity = gate_infidelity(target, result.U);
        return result;
    }
    result.U = run(steps);
    result.steps = steps;
    result.infidelity = gate_infidelity(target, result.U);
    while (2 * steps <= options.max_steps) {
        steps *= 2;
        ComplexMatrix finer = run(steps);
        const double infidelity = gate_infidelity(target, finer);
        const double change = std::abs(infidelity - result.infidelity);
        result.U = std::move(finer);
        result.steps = steps;
        result.infidelity = infidelity;
        if (change < options.fidelity_tol) {
            break;
        }
    }
    return result;
}

/// Uniform axis of `points` values over [lo, hi]; a single point sits at lo.
struct AxisSpec {
    double lo = -0.1;
    double hi = 0.1;
    std::size_t points = 41;

    std::vector<double> values() const {
        if (points == 0 || points > 201) {
            throw ConfigError("sweep axis must have between 1 and 201 points");
        }
        if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
            throw ConfigError("sweep axis bounds must be finite with lo <= hi");
        }
        std::vector<double> out(points, lo);
        for (std::size_t k = 1; k < points; ++k) {
            out[k] = (k + 1 == points) ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
        }
        return out;
    }
};

struct GridSpec {
    AxisSpec domega;
    AxisSpec dj;
    bool crosstalk_on = true;
};

struct SweepResult {
    std::vector<double> axis_domega;
    std::vector<double> axis_dj;
    /// Row-major: infidelity[i * axis_dj.size() + j] at (axis_domega[i], axis_dj[j]).
    std::vector<double> infidelity;
    SimModel model = SimModel::Reduced;
    std::size_t steps = 0;

    double at(std::size_t i, std::size_t j) const { return infidelity.at(i * axis_dj.size() + j); }
};

/// Infidelity on a (delta_omega, delta_J) grid. The step count is fixed once by the doubling
/// loop at the grid corner with the largest offsets and shared by every point, so each grid
/// value is independent of the thread count.
inline SweepResult noise_sweep(const SystemConfig &system, const FrameData &frame, const Waveform &waveform,
                               double gate_angle, const GridSpec &grid, SimModel model, unsigned threads = 1,
                               const SimulationOptions &options = {}) {
    SweepResult out;
    out.axis_domega = grid.domega.values();
    out.axis_dj = grid.dj.values();
    out.model = model;
    auto largest = [](const std::vector<double> &v) {
        return *std::max_element(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    };
    const NoiseSetting corner{largest(out.axis_domega), largest(out.axis_dj), grid.crosstalk_on};
    SimulationOptions fixed = options;
    fixed.fixed_steps = options.fixed_steps > 0
                            ? options.fixed_steps
                            : simulate_gate(system, frame, waveform, gate_angle, corner, model, options).steps;
    out.steps = fixed.fixed_steps;
    const std::size_t nj = out.axis_dj.size();
    out.infidelity.assign(out.axis_domega.size() * nj, 0.0);
    parallel_for(out.infidelity.size(), threads, [&](std::size_t idx) {
        const NoiseSetting noise{out.axis_domega[idx / nj], out.axis_dj[idx % nj], grid.crosstalk_on};
        out.infidelity[idx] = simulate_gate(system, frame, waveform, gate_angle, noise, model, fixed).infidelity;
    });
    return out;
}

class FitError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t points_used = 0;
};

/// Least-squares slope of log(infidelity) against log|noise|. Points with zero noise or
/// nonpositive infidelity are skipped, as are points within 10x of the zero-noise floor; with
/// subtract_floor the floor is removed before fitting. Needs at least six usable points.
inline SlopeFit slope_fit(const std::vector<double> &noise_values, const std::vector<double> &infidelities,
                          double floor = 0.0, bool subtract_floor = false) {
    if (noise_values.size() != infidelities.size()) {
        throw FitError("slope_fit: noise and infidelity lengths differ");
    }
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < noise_values.size(); ++k) {
        const double x = std::abs(noise_values[k]);
        double y = infidelities[k];
        if (!(x > 0.0) || !(y > 0.0) || y <= 10.0 * floor) {
            continue;
        }
        if (subtract_floor) {
            y -= floor;
        }
        xs.push_back(std::log(x));
        ys.push_back(std::log(y));
    }
    if (xs.size() < 6) {
        throw FitError("slope_fit: fewer than 6 usable points above the noise floor");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k] / n;
        my += ys[k] / n;
    }
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
    }
    if (sxx == 0.0) {
        throw FitError("slope_fit: all usable points share one noise value");
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.points_used = xs.size();
    return fit;
}

/// Omega(t) = (Phi / T)(1 - cos(2 pi t / T)) on n_samples uniform samples; its area is Phi.
inline Waveform cosine_baseline(double gate_angle, double T, std::size_t n_samples = 4097) {
    if (!(gate_angle > 0.0) || !(T > 0.0) || !std::isfinite(gate_angle) || !std::isfinite(T)) {
        throw ConfigError("cosine_baseline: need Phi > 0 and T > 0");
    }
    if (n_samples < 3) {
        throw ConfigError("cosine_baseline: need at least 3 samples");
    }
    Waveform w;
    w.T = T;
    w.dt = T / static_cast<double>(n_samples - 1);
    w.samples.resize(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double t = (k + 1 == n_samples) ? T : static_cast<double>(k) * w.dt;
        w.samples[k] = gate_angle / T * (1.0 - std::cos(2.0 * kPi * t / T));
    }
    return w;
}

}  // namespace geodesic_gates

#endif  // GEODESIC_GATES_DYNAMICS_HPP
