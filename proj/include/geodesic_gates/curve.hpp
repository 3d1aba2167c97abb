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

#ifndef GEODESIC_GATES_CURVE_HPP
#define GEODESIC_GATES_CURVE_HPP

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "geodesic_gates/quadrature.hpp"
#include "geodesic_gates/tensor.hpp"
#include "geodesic_gates/waveform.hpp"

namespace geodesic_gates {

/// Number of uniform intervals of the shared chi-grid used by synthesis and all integrals.
inline constexpr std::size_t kChiIntervals = 16384;
inline constexpr double kChiMax = 4.0 * kPi;

/// Ansatz phi(chi) = a (chi - 6 pi) chi^2 + sin^3(chi/2) (b1 sin(chi/4) + b2 sin(3 chi/4)
///                   + b3 cos(chi/2) + c) on chi in [0, 4 pi].
struct CurveParams {
    double a = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;
    double c = 0.0;
    double chi_max = kChiMax;
    double phi_target = 0.0;

    /// Cubic coefficient that enforces phi(4 pi) - phi(0) = phi_target.
    static double cubic_for_angle(double phi_target) {
        return -phi_target / (32.0 * kPi * kPi * kPi);
    }

    static CurveParams for_angle(double phi_target, double b1 = 0.0, double b2 = 0.0, double b3 = 0.0,
                                 double c = 0.0) {
        CurveParams p;
        p.a = cubic_for_angle(phi_target);
        p.b1 = b1;
        p.b2 = b2;
        p.b3 = b3;
        p.c = c;
        p.phi_target = phi_target;
        return p;
    }

    void validate() const {
        if (std::abs(chi_max - kChiMax) > 1e-12) {
            throw ConfigError("CurveParams: chi_max must be 4 pi");
        }
        for (double v : {a, b1, b2, b3, c, phi_target}) {
            if (!std::isfinite(v)) {
                throw ConfigError("CurveParams: non-finite coefficient");
            }
        }
    }

    bool operator==(const CurveParams &) const = default;
};

struct AnsatzValue {
    double phi;
    double dphi;
    double d2phi;
};

namespace detail {

/// Ansatz and its first two derivatives from precomputed trigonometric factors.
inline AnsatzValue evaluate_ansatz(const CurveParams &p, double chi, double s2, double c2, double s4,
                                   double c4, double s34, double c34) {
    const double g = p.b1 * s4 + p.b2 * s34 + p.b3 * c2 + p.c;
    const double gp = 0.25 * p.b1 * c4 + 0.75 * p.b2 * c34 - 0.5 * p.b3 * s2;
    const double gpp = -p.b1 / 16.0 * s4 - 9.0 * p.b2 / 16.0 * s34 - 0.25 * p.b3 * c2;
    const double s2sq = s2 * s2;
    const double s2cube = s2sq * s2;
    AnsatzValue v;
    v.phi = p.a * (chi - 6.0 * kPi) * chi * chi + s2cube * g;
    v.dphi = 3.0 * p.a * chi * (chi - kChiMax) + 1.5 * s2sq * c2 * g + s2cube * gp;
    v.d2phi = p.a * (6.0 * chi - 12.0 * kPi) + 1.5 * s2 * c2 * c2 * g - 0.75 * s2cube * g +
              3.0 * s2sq * c2 * gp + s2cube * gpp;
    return v;
}

inline void check_domain(const CurveParams &p, double chi) {
    if (!(chi >= -1e-12 && chi <= p.chi_max + 1e-12)) {
        throw ContractViolation("chi outside [0, chi_max]");
    }
}

}  // namespace detail

inline AnsatzValue evaluate_ansatz(const CurveParams &p, double chi) {
    detail::check_domain(p, chi);
    return detail::evaluate_ansatz(p, chi, std::sin(0.5 * chi), std::cos(0.5 * chi), std::sin(0.25 * chi),
                                   std::cos(0.25 * chi), std::sin(0.75 * chi), std::cos(0.75 * chi));
}

inline double phi(const CurveParams &p, double chi) { return evaluate_ansatz(p, chi).phi; }
inline double phi_prime(const CurveParams &p, double chi) { return evaluate_ansatz(p, chi).dphi; }
inline double phi_second(const CurveParams &p, double chi) { return evaluate_ansatz(p, chi).d2phi; }

/// Euler angle theta = Arg(sin(chi) phi' - i) + pi, which lies in (0, pi) and is continuous.
inline double theta_from_slope(double s) { return std::arg(Complex(s, -1.0)) + kPi; }

inline double theta_of_chi(const CurveParams &p, double chi) {
    return theta_from_slope(std::sin(chi) * phi_prime(p, chi));
}

/// t'(chi) = sqrt(1 + sin^2(chi) phi'^2), dimensionless arc speed.
inline double arc_speed(const CurveParams &p, double chi) {
    const double s = std::sin(chi) * phi_prime(p, chi);
    return std::sqrt(1.0 + s * s);
}

/// Trigonometric tables for a uniform chi-grid; shared between parameter sets.
struct ChiGrid {
    std::size_t intervals = 0;
    double h = 0.0;
    std::vector<double> chi, sin1, cos1, sin_half, cos_half, sin_quarter, cos_quarter, sin_3q, cos_3q;

    explicit ChiGrid(std::size_t n) : intervals(n), h(kChiMax / static_cast<double>(n)) {
        const std::size_t points = n + 1;
        for (auto *v : {&chi, &sin1, &cos1, &sin_half, &cos_half, &sin_quarter, &cos_quarter, &sin_3q, &cos_3q}) {
            v->resize(points);
        }
        for (std::size_t k = 0; k < points; ++k) {
            const double x = (k == n) ? kChiMax : static_cast<double>(k) * h;
            chi[k] = x;
            sin1[k] = std::sin(x);
            cos1[k] = std::cos(x);
            sin_half[k] = std::sin(0.5 * x);
            cos_half[k] = std::cos(0.5 * x);
            sin_quarter[k] = std::sin(0.25 * x);
            cos_quarter[k] = std::cos(0.25 * x);
            sin_3q[k] = std::sin(0.75 * x);
            cos_3q[k] = std::cos(0.75 * x);
        }
    }

    std::size_t points() const { return intervals + 1; }
};

inline std::shared_ptr<const ChiGrid> chi_grid(std::size_t intervals = kChiIntervals) {
    if (intervals < 16) {
        throw ContractViolation("chi_grid: need at least 16 intervals");
    }
    static std::mutex mutex;
    static std::map<std::size_t, std::shared_ptr<const ChiGrid>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto &slot = cache[intervals];
    if (!slot) {
        slot = std::make_shared<const ChiGrid>(intervals);
    }
    return slot;
}

/// Every curve quantity sampled on the shared chi-grid. `density` is the per-dchi pulse area
/// theta' + cos(chi) phi', `arc` the running integral of t', `running_area` is
/// S(chi) = 1/2 int_0^chi (1 - cos) phi'.
struct CurveSamples {
    CurveParams params;
    std::shared_ptr<const ChiGrid> grid;
    std::vector<double> phi, dphi, d2phi, theta, dtheta, tprime, density, arc, running_area;

    std::size_t points() const { return grid->points(); }
    double h() const { return grid->h; }
    double arc_length() const { return arc.back(); }
};

inline CurveSamples sample_curve(const CurveParams &params, std::size_t intervals = kChiIntervals) {
    params.validate();
    CurveSamples out;
    out.params = params;
    out.grid = chi_grid(intervals);
    const ChiGrid &g = *out.grid;
    const std::size_t n = g.points();
    for (auto *v : {&out.phi, &out.dphi, &out.d2phi, &out.theta, &out.dtheta, &out.tprime, &out.density}) {
        v->resize(n);
    }
    std::vector<double> area_integrand(n), area_slope(n), tprime_slope(n);
    for (std::size_t k = 0; k < n; ++k) {
        const AnsatzValue v = detail::evaluate_ansatz(params, g.chi[k], g.sin_half[k], g.cos_half[k],
                                                      g.sin_quarter[k], g.cos_quarter[k], g.sin_3q[k], g.cos_3q[k]);
        const double s = g.sin1[k] * v.dphi;
        const double one_plus = 1.0 + s * s;
        out.phi[k] = v.phi;
        out.dphi[k] = v.dphi;
        out.d2phi[k] = v.d2phi;
        out.theta[k] = theta_from_slope(s);
        out.dtheta[k] = (g.cos1[k] * v.dphi + g.sin1[k] * v.d2phi) / one_plus;
        out.tprime[k] = std::sqrt(one_plus);
        out.density[k] = out.dtheta[k] + g.cos1[k] * v.dphi;
        area_integrand[k] = (1.0 - g.cos1[k]) * v.dphi;
        area_slope[k] = g.sin1[k] * v.dphi + (1.0 - g.cos1[k]) * v.d2phi;
        tprime_slope[k] = s * (g.cos1[k] * v.dphi + g.sin1[k] * v.d2phi) / out.tprime[k];
    }
    // Nearest-branch tracking: the Arg formula is already continuous, so a jump larger than
    // pi/2 between neighbours means the grid cannot resolve the curve.
    for (std::size_t k = 1; k < n; ++k) {
        double step = out.theta[k] - out.theta[k - 1];
        step -= 2.0 * kPi * std::round(step / (2.0 * kPi));
        if (std::abs(step) > 0.5 * kPi) {
            throw ConfigError("sample_curve: theta jumps by more than pi/2 between grid points; grid too coarse");
        }
        out.theta[k] = out.theta[k - 1] + step;
    }
    out.arc = cumulative_hermite(out.tprime, tprime_slope, g.h);
    out.running_area = cumulative_hermite(area_integrand, area_slope, g.h);
    for (double &v : out.running_area) {
        v *= 0.5;
    }
    return out;
}

/// C_target = int_0^{4 pi} (1 - cos chi) phi'(chi) dchi.
inline double area_functional(const CurveSamples &samples) { return 2.0 * samples.running_area.back(); }

inline double area_functional(const CurveParams &params, std::size_t intervals = kChiIntervals) {
    params.validate();
    const ChiGrid &g = *chi_grid(intervals);
    double sum = 0.0;
    for (std::size_t k = 0; k < g.points(); ++k) {
        const AnsatzValue v = detail::evaluate_ansatz(params, g.chi[k], g.sin_half[k], g.cos_half[k],
                                                      g.sin_quarter[k], g.cos_quarter[k], g.sin_3q[k], g.cos_3q[k]);
        const double weight = (k == 0 || k + 1 == g.points()) ? 0.5 : 1.0;
        sum += weight * (1.0 - g.cos1[k]) * v.dphi;
    }
    return sum * g.h;
}

/// C_target is affine in (a, b1, b2, b3, c); these are its coefficients on a given grid.
struct AreaCoefficients {
    double a = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;
    double c = 0.0;

    double evaluate(const CurveParams &p) const { return a * p.a + b1 * p.b1 + b2 * p.b2 + b3 * p.b3 + c * p.c; }
};

inline AreaCoefficients area_coefficients(std::size_t intervals = kChiIntervals) {
    auto unit = [&](int which) {
        CurveParams p;
        (which == 0 ? p.a : which == 1 ? p.b1 : which == 2 ? p.b2 : which == 3 ? p.b3 : p.c) = 1.0;
        return area_functional(p, intervals);
    };
    return {unit(0), unit(1), unit(2), unit(3), unit(4)};
}

/// Delta theta + Delta phi along the continuous theta branch.
inline double rotation_angle(const CurveSamples &samples) {
    return (samples.theta.back() - samples.theta.front()) + (samples.phi.back() - samples.phi.front());
}

inline double rotation_angle(const CurveParams &params) { return rotation_angle(sample_curve(params)); }

/// Omega(chi) = |beta| density / t', t(chi) = arc(chi) / |beta|, resampled linearly onto
/// n_samples uniform times covering [0, T].
inline Waveform synthesize_waveform(const CurveSamples &samples, double beta, std::size_t n_samples) {
    if (beta == 0.0 || !std::isfinite(beta)) {
        throw ConfigError("synthesize_waveform: beta must be nonzero and finite");
    }
    if (n_samples < 256) {
        throw ConfigError("synthesize_waveform: need at least 256 samples");
    }
    const double scale = std::abs(beta);
    const std::size_t n = samples.points();
    std::vector<double> t(n), omega(n);
    for (std::size_t k = 0; k < n; ++k) {
        t[k] = samples.arc[k] / scale;
        omega[k] = scale * samples.density[k] / samples.tprime[k];
    }
    Waveform w;
    w.T = t.back();
    w.dt = w.T / static_cast<double>(n_samples - 1);
    w.beta_design = beta;
    w.samples.resize(n_samples);
    std::size_t k = 0;
    for (std::size_t j = 0; j < n_samples; ++j) {
        const double tj = (j + 1 == n_samples) ? w.T : static_cast<double>(j) * w.dt;
        while (k + 2 < n && t[k + 1] < tj) {
            ++k;
        }
        const double span = t[k + 1] - t[k];
        const double frac = span > 0 ? std::clamp((tj - t[k]) / span, 0.0, 1.0) : 0.0;
        w.samples[j] = omega[k] + frac * (omega[k + 1] - omega[k]);
    }
    return w;
}

inline Waveform synthesize_waveform(const CurveParams &params, double beta, std::size_t n_samples,
                                    std::size_t intervals = kChiIntervals) {
    return synthesize_waveform(sample_curve(params, intervals), beta, n_samples);
}

/// b3 = -16 a (3 + 4 pi^2) + 4096 (13 b1 - 33 b2) / (45045 pi), the closed-form zero-area choice.
inline double closed_form_b3(double a, double b1, double b2) {
    return -16.0 * a * (3.0 + 4.0 * kPi * kPi) + 4096.0 * (13.0 * b1 - 33.0 * b2) / (45045.0 * kPi);
}

/// Closed-form shortest zero-area b1, (1/512)(-3465) pi (3 + 4 pi^2) a. Kept verbatim for the
/// audit report; solve_b1_zero_area is the value used by the library.
inline double shortest_b1(double a) { return -3465.0 / 512.0 * kPi * (3.0 + 4.0 * kPi * kPi) * a; }

inline CurveParams params_with_cubic(double a, double b1 = 0.0, double b2 = 0.0, double b3 = 0.0, double c = 0.0) {
    CurveParams p = CurveParams::for_angle(-32.0 * kPi * kPi * kPi * a, b1, b2, b3, c);
    p.a = a;
    return p;
}

/// b1 zeroing C_target with b2 = b3 = c = 0. C_target is affine in b1, so two evaluations fix it.
inline double solve_b1_zero_area(double a, std::size_t intervals = kChiIntervals) {
    const double c0 = area_functional(params_with_cubic(a, 0.0), intervals);
    const double c1 = area_functional(params_with_cubic(a, 1.0), intervals);
    return -c0 / (c1 - c0);
}

/// b3 zeroing C_target for the remaining parameters fixed, by the same affine solve.
inline double solve_b3_zero_area(const CurveParams &params, std::size_t intervals = kChiIntervals) {
    CurveParams p = params;
    p.b3 = 0.0;
    const double c0 = area_functional(p, intervals);
    p.b3 = 1.0;
    const double c1 = area_functional(p, intervals);
    return -c0 / (c1 - c0);
}

}  // namespace geodesic_gates

#endif  // GEODESIC_GATES_CURVE_HPP
