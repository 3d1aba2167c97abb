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

#ifndef GEODESIC_GATES_WAVEFORM_HPP
#define GEODESIC_GATES_WAVEFORM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "geodesic_gates/tensor.hpp"

namespace geodesic_gates {

/// Drive envelope sampled on a uniform time grid t_k = k dt, k = 0 .. samples.size()-1.
struct Waveform {
    double T = 0.0;
    double dt = 0.0;
    std::vector<double> samples;
    /// Block detuning the waveform was synthesized for; empty for designs that are not tied to
    /// a particular detuning (the cosine baseline).
    std::optional<double> beta_design;

    /// Linear interpolation between samples; throws outside [0, T].
    double value_at(double t) const {
        const double slack = 1e-12 * std::max(1.0, T);
        if (t < -slack || t > T + slack || samples.size() < 2) {
            throw ContractViolation("Waveform::value_at: time outside [0, T]");
        }
        const double x = std::clamp(t / dt, 0.0, static_cast<double>(samples.size() - 1));
        const auto k = std::min(static_cast<std::size_t>(x), samples.size() - 2);
        const double frac = x - static_cast<double>(k);
        return samples[k] + frac * (samples[k + 1] - samples[k]);
    }

    double peak_amplitude() const {
        double peak = 0.0;
        for (double v : samples) {
            peak = std::max(peak, std::abs(v));
        }
        return peak;
    }

    Waveform scaled(double factor) const {
        Waveform out = *this;
        for (double &v : out.samples) {
            v *= factor;
        }
        return out;
    }
};

}  // namespace geodesic_gates

#endif  // GEODESIC_GATES_WAVEFORM_HPP
