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

#ifndef GEODESIC_GATES_QUADRATURE_HPP
#define GEODESIC_GATES_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace geodesic_gates {

/// Composite trapezoid rule on a uniform grid with spacing h.
template <class T>
T trapezoid(const std::vector<T> &y, double h) {
    if (y.size() < 2) {
        return T{};
    }
    T sum = 0.5 * (y.front() + y.back());
    for (std::size_t k = 1; k + 1 < y.size(); ++k) {
        sum += y[k];
    }
    return sum * h;
}

/// Composite Simpson weight (in units of the grid step) of point k on a grid of n points with an
/// even number of intervals: 1/3, 4/3, 2/3, ..., 4/3, 1/3.
inline double simpson_weight(std::size_t k, std::size_t n) {
    if (k == 0 || k + 1 == n) {
        return 1.0 / 3.0;
    }
    return (k % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0;
}

/// Composite Simpson rule on a uniform grid; requires an odd number of points.
template <class T>
T simpson(const std::vector<T> &y, double h) {
    T sum{};
    for (std::size_t k = 0; k < y.size(); ++k) {
        sum += simpson_weight(k, y.size()) * y[k];
    }
    return sum * h;
}

/// Running trapezoid integral, out[0] = 0 and out[k] = integral from grid point 0 to k.
template <class T>
std::vector<T> cumulative_trapezoid(const std::vector<T> &y, double h) {
    std::vector<T> out(y.size(), T{});
    for (std::size_t k = 1; k < y.size(); ++k) {
        out[k] = out[k - 1] + 0.5 * h * (y[k - 1] + y[k]);
    }
    return out;
}

/// Running integral with the endpoint-corrected trapezoid rule, which uses the derivative dy to
/// reach fourth order: each interval adds h/2 (y0 + y1) + h^2/12 (dy0 - dy1).
template <class T>
std::vector<T> cumulative_hermite(const std::vector<T> &y, const std::vector<T> &dy, double h) {
    std::vector<T> out(y.size(), T{});
    const double corr = h * h / 12.0;
    for (std::size_t k = 1; k < y.size(); ++k) {
        out[k] = out[k - 1] + 0.5 * h * (y[k - 1] + y[k]) + corr * (dy[k - 1] - dy[k]);
    }
    return out;
}

}  // namespace geodesic_gates

#endif  // GEODESIC_GATES_QUADRATURE_HPP
