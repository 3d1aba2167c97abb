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

#ifndef GEODESIC_GATES_ERROR_FUNCTIONALS_HPP
#define GEODESIC_GATES_ERROR_FUNCTIONALS_HPP

// First-order Magnus susceptibilities evaluated along the 2-sphere curve.
//
// The ansatz starts at phi(0) = 0, theta(0) = pi/2, so the Euler product
// R_X(theta) R_Y(chi) R_X(phi) equals R_X(pi/2) at t = 0. The block propagator with U(0) = I is
// U_+(chi) = R_X(theta) R_Y(chi) R_X(phi - pi/2). The (A_X, A_Y, A_Z) integrals below are the
// Pauli components of int U_euler^dag Z U_euler t' dchi in that Euler frame; the physical
// components of int U_+^dag Z U_+ dt are (A_X, -A_Z, A_Y) / |beta|.
//
// The beta = 0 block evolves as R_X(Theta(chi)) with the running angle
// Theta = (theta - theta(0)) + (phi - phi(0)) - 2 S(chi). At chi = 4 pi this is
// Delta theta + Delta phi - C_target, so zero enclosed area makes both blocks agree. The same
// running angle realises the R_{(IX - ZX)/2}(alpha) factor of the resonant two-qubit
// decomposition, with alpha(t) = 2 S(chi(t)).

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "geodesic_gates/curve.hpp"
#include "geodesic_gates/model.hpp"
#include "geodesic_gates/quadrature.hpp"
#include "geodesic_gates/tensor.hpp"

namespace geodesic_gates {

enum class NoiseChannel { FreqNoise, CouplingNoise, ControlCrosstalk };

/// Detuning class of a logical block relative to the design detuning |beta|.
enum class BlockKind { Plus, Zero, Minus };

/// First-order susceptibilities per unit noise strength. (ax, ay, az) are the Euler-frame
/// integrals of a beta != 0 block, (ay0, az0) those of a beta = 0 block, (ct1, ct2) the two
/// crosstalk integrals of a (beta, 0) block pair. All are dimensionless (measured in t' dchi).
struct Susceptibility {
    NoiseChannel channel = NoiseChannel::FreqNoise;
    double ax = 0.0;
    double ay = 0.0;
    double az = 0.0;
    double ay0 = 0.0;
    double az0 = 0.0;
    Complex ct1{};
    Complex ct2{};
};

struct BetaSusceptibility {
    double ax, ay, az;
};

struct ZeroSusceptibility {
    double ay0, az0;
};

struct CrosstalkAmplitudes {
    Complex ct1, ct2;
};

inline BetaSusceptibility susceptibility_beta(const CurveSamples &s) {
    const ChiGrid &g = *s.grid;
    const std::size_t n = s.points();
    std::vector<double> fx(n), fy(n), fz(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double ct = std::cos(s.theta[k]), st = std::sin(s.theta[k]);
        const double cp = std::cos(s.phi[k]), sp = std::sin(s.phi[k]);
        fx[k] = -ct * g.sin1[k] * s.tprime[k];
        fy[k] = (st * cp + ct * g.cos1[k] * sp) * s.tprime[k];
        fz[k] = (g.cos1[k] * ct * cp - st * sp) * s.tprime[k];
    }
    return {trapezoid(fx, g.h), trapezoid(fy, g.h), trapezoid(fz, g.h)};
}

inline BetaSusceptibility susceptibility_beta(const CurveParams &params) {
    return susceptibility_beta(sample_curve(params));
}

/// Running rotation angle of the beta = 0 block at every grid point.
inline std::vector<double> zero_block_angle(const CurveSamples &s, double angle_offset = 0.0) {
    std::vector<double> out(s.points());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = angle_offset + (s.theta[k] - s.theta[0]) + (s.phi[k] - s.phi[0]) - 2.0 * s.running_area[k];
    }
    return out;
}

inline ZeroSusceptibility susceptibility_beta0(const CurveSamples &s, double angle_offset = 0.0) {
    const std::vector<double> angle = zero_block_angle(s, angle_offset);
    std::vector<double> fy(angle.size()), fz(angle.size());
    for (std::size_t k = 0; k < angle.size(); ++k) {
        fy[k] = std::sin(angle[k]) * s.tprime[k];
        fz[k] = std::cos(angle[k]) * s.tprime[k];
    }
    return {trapezoid(fy, s.h()), trapezoid(fz, s.h())};
}

inline ZeroSusceptibility susceptibility_beta0(const CurveParams &params, double angle_offset = 0.0) {
    return susceptibility_beta0(sample_curve(params), angle_offset);
}

/// ct1 = int density cos(chi/2) e^{-i(S - theta - phi)} e^{i D t} dchi and
/// ct2 = int density sin(chi/2) e^{i(S - theta)} e^{i D t} dchi, t(chi) = arc / |beta|.
inline CrosstalkAmplitudes crosstalk_amplitudes(const CurveSamples &s, double delta_tilde, double beta) {
    if (beta == 0.0) {
        throw ConfigError("crosstalk_amplitudes: beta must be nonzero");
    }
    const ChiGrid &g = *s.grid;
    const std::size_t n = s.points();
    std::vector<Complex> f1(n), f2(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = s.arc[k] / std::abs(beta);
        const double S = s.running_area[k];
        f1[k] = s.density[k] * g.cos_half[k] * std::polar(1.0, -(S - s.theta[k] - s.phi[k]) + delta_tilde * t);
        f2[k] = s.density[k] * g.sin_half[k] * std::polar(1.0, (S - s.theta[k]) + delta_tilde * t);
    }
    return {simpson(f1, g.h), simpson(f2, g.h)};
}

inline CrosstalkAmplitudes crosstalk_amplitudes(const CurveParams &params, double delta_tilde, double beta) {
    return crosstalk_amplitudes(sample_curve(params), delta_tilde, beta);
}

namespace detail {

inline Matrix2c rx(double angle) {
    const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
    Matrix2c m;
    m << c, Complex(0, -s), Complex(0, -s), c;
    return m;
}

inline Matrix2c ry(double angle) {
    const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
    Matrix2c m;
    m << c, -s, s, c;
    return m;
}

inline Matrix2c conjugate_by_x(const Matrix2c &u) {
    Matrix2c out;
    out << u(1, 1), u(1, 0), u(0, 1), u(0, 0);
    return out;
}

}  // namespace detail

/// Closed-form block propagator U(chi_k) with U(0) = I, for the block of the given kind.
inline Matrix2c block_propagator(const CurveSamples &s, std::size_t k, BlockKind kind) {
    if (kind == BlockKind::Zero) {
        return detail::rx((s.theta[k] - s.theta[0]) + (s.phi[k] - s.phi[0]) - 2.0 * s.running_area[k]);
    }
    const Matrix2c plus = detail::rx(s.theta[k]) * detail::ry(s.grid->chi[k]) * detail::rx(s.phi[k] - 0.5 * kPi);
    return kind == BlockKind::Plus ? plus : detail::conjugate_by_x(plus);
}

/// Physical first-order susceptibility (Pauli components of int U^dag Z U dt, time units) of a
/// block of the given kind under a unit Z_target perturbation.
inline Eigen::Vector3d block_susceptibility(const BetaSusceptibility &beta_part, const ZeroSusceptibility &zero_part,
                                            BlockKind kind, double design_beta) {
    const double inv = 1.0 / std::abs(design_beta);
    switch (kind) {
        case BlockKind::Plus:
            return Eigen::Vector3d(beta_part.ax, -beta_part.az, beta_part.ay) * inv;
        case BlockKind::Minus:
            return Eigen::Vector3d(-beta_part.ax, -beta_part.az, beta_part.ay) * inv;
        case BlockKind::Zero:
            return Eigen::Vector3d(0.0, zero_part.ay0, zero_part.az0) * inv;
    }
    return Eigen::Vector3d::Zero();
}

/// Off-diagonal first-order block B = int density e^{-i nu t} U_a^dag Z U_b dchi, which equals
/// int Omega_eff(t) e^{-i nu t} U_a^dag Z U_b dt for a coupling term e^{-i nu t} Omega_eff Z
/// between block a (row) and block b (column).
struct CrosstalkPair {
    std::size_t block_a = 0;
    std::size_t block_b = 0;
    double nu = 0.0;
    /// Coupling strength per unit effective envelope.
    double epsilon = 0.0;
};

inline BlockKind block_kind(double beta_i, double design_beta) {
    if (std::abs(beta_i) <= 1e-12 * std::max(1.0, std::abs(design_beta))) {
        return BlockKind::Zero;
    }
    if (std::abs(std::abs(beta_i) - std::abs(design_beta)) > 1e-9 * std::abs(design_beta)) {
        throw ConfigError("block detunings must be 0 or +-design beta");
    }
    return beta_i > 0 ? BlockKind::Plus : BlockKind::Minus;
}

inline std::vector<BlockKind> block_kinds(const FrameData &frame) {
    std::vector<BlockKind> out;
    for (double b : frame.betas) {
        out.push_back(block_kind(b, frame.design_beta()));
    }
    return out;
}

/// Leading-order control-crosstalk couplings between logical blocks.
inline std::vector<CrosstalkPair> crosstalk_pairs(const SystemConfig &config, const FrameData &frame) {
    if (config.n_qubits == 2) {
        return {{0, 1, frame.delta_tilde, 0.5 * std::tan(frame.mixing_angle)}};
    }
    // Spectator 1 flips couple blocks (00,10) and (01,11) with phase e^{-i D t}; spectator 2
    // flips couple (00,01) and (10,11) with -e^{+i D t}. The sign is dropped.
    const double eps = 0.25 * frame.lambda / frame.drive_scale;
    return {{0, 2, frame.delta_tilde, eps},
            {1, 3, frame.delta_tilde, eps},
            {0, 1, -frame.delta_tilde, eps},
            {2, 3, -frame.delta_tilde, eps}};
}

inline std::vector<Matrix2c> crosstalk_blocks(const CurveSamples &s, double design_beta,
                                              const std::vector<BlockKind> &kinds,
                                              const std::vector<CrosstalkPair> &pairs) {
    if (design_beta == 0.0) {
        throw ConfigError("crosstalk_blocks: design beta must be nonzero");
    }
    const std::size_t n = s.points();
    const double h = s.h();
    const Matrix2c z = Eigen::Vector2cd(1.0, -1.0).asDiagonal();
    std::vector<Matrix2c> out(pairs.size(), Matrix2c::Zero());
    std::array<Matrix2c, 3> u;
    for (std::size_t k = 0; k < n; ++k) {
        u[0] = block_propagator(s, k, BlockKind::Plus);
        u[1] = block_propagator(s, k, BlockKind::Zero);
        u[2] = detail::conjugate_by_x(u[0]);
        const double t = s.arc[k] / std::abs(design_beta);
        const double weight = simpson_weight(k, n) * h * s.density[k];
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const Matrix2c &ua = u[static_cast<int>(kinds[pairs[p].block_a])];
            const Matrix2c &ub = u[static_cast<int>(kinds[pairs[p].block_b])];
            out[p] += (weight * std::polar(1.0, -pairs[p].nu * t)) * (ua.adjoint() * z * ub);
        }
    }
    return out;
}

inline Matrix2c crosstalk_block(const CurveSamples &s, BlockKind a, BlockKind b, double nu, double design_beta) {
    return crosstalk_blocks(s, design_beta, {a, b}, {{0, 1, nu, 1.0}})[0];
}

/// A_1(T) = int_0^T U0^dag(t) dH(t) U0(t) dt by the trapezoid rule on round(T/dt) intervals.
template <class PropagatorAt, class PerturbationAt>
ComplexMatrix magnus_oracle(PropagatorAt &&u0_at, PerturbationAt &&delta_h_at, double T, double dt) {
    if (!(T > 0) || !(dt > 0)) {
        throw ContractViolation("magnus_oracle: need T > 0 and dt > 0");
    }
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(T / dt)));
    const double h = T / static_cast<double>(steps);
    ComplexMatrix sum;
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = (k == steps) ? T : static_cast<double>(k) * h;
        const ComplexMatrix u = u0_at(t);
        const ComplexMatrix term = u.adjoint() * delta_h_at(t) * u;
        const double w = (k == 0 || k == steps) ? 0.5 * h : h;
        if (k == 0) {
            sum = w * term;
        } else {
            sum += w * term;
        }
    }
    return sum;
}

/// Noise-free propagator cached at the grid points t_k = k T / steps (midpoint rule).
class PropagatorTrajectory {
   public:
    template <class HamiltonianAt>
    PropagatorTrajectory(HamiltonianAt &&hamiltonian_at, double T, std::size_t steps)
        : T_(T), h_(T / static_cast<double>(steps)) {
        ComplexMatrix u;
        cache_.reserve(steps + 1);
        for (std::size_t k = 0; k < steps; ++k) {
            const ComplexMatrix hk = hamiltonian_at((static_cast<double>(k) + 0.5) * h_);
            if (k == 0) {
                u = ComplexMatrix::Identity(hk.rows(), hk.cols());
                cache_.push_back(u);
            }
            u = expm_hermitian(hk, h_) * u;
            cache_.push_back(u);
        }
    }

    /// Propagator at a cached grid time; other times are a contract violation.
    const ComplexMatrix &operator()(double t) const {
        const double x = t / h_;
        const auto k = static_cast<std::size_t>(std::llround(x));
        if (std::abs(x - static_cast<double>(k)) > 1e-6 || k >= cache_.size()) {
            throw ContractViolation("PropagatorTrajectory: time is not a cached grid point");
        }
        return cache_[k];
    }

    double step() const { return h_; }
    double duration() const { return T_; }

   private:
    double T_;
    double h_;
    std::vector<ComplexMatrix> cache_;
};

struct ChannelWeights {
    double freq = 1.0;
    double coupling = 1.0;
    double crosstalk = 1.0;

    /// Weights in the order {FreqNoise, CouplingNoise, ControlCrosstalk}.
    static ChannelWeights from_span(std::span<const double> w) {
        if (w.size() != 3) {
            throw ConfigError("channel weights: expected 3 entries {freq, coupling, crosstalk}");
        }
        for (double v : w) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw ConfigError("channel weights must be finite and nonnegative");
            }
        }
        return {w[0], w[1], w[2]};
    }
};

struct CostBreakdown {
    double freq = 0.0;
    double coupling = 0.0;
    double crosstalk = 0.0;
    double total = 0.0;
    /// Physical per-block susceptibility vectors for a unit Z_target perturbation.
    std::vector<Eigen::Vector3d> block_vectors;
};

/// Per-block weights w_i of a diagonal noise operator restricted to block i, where the block
/// restriction must have the form w_i Z (+ identity).
inline std::vector<double> block_noise_weights(const ComplexMatrix &diagonal_noise, std::size_t blocks) {
    std::vector<double> out(blocks);
    for (std::size_t i = 0; i < blocks; ++i) {
        out[i] = 0.5 * (diagonal_noise(2 * i, 2 * i).real() - diagonal_noise(2 * i + 1, 2 * i + 1).real());
    }
    return out;
}

/// sum_i w_i^2 |a_i|^2 for a diagonal noise operator with block weights w_i.
inline double noise_channel_norm2(const std::vector<Eigen::Vector3d> &block_vectors,
                                  const std::vector<double> &weights) {
    double sum = 0.0;
    for (std::size_t i = 0; i < block_vectors.size(); ++i) {
        sum += weights[i] * weights[i] * block_vectors[i].squaredNorm();
    }
    return sum;
}

/// Weighted |C_robust|^2 = c_freq |A_w|^2 + c_J |A_J|^2 + c_eps sum_pairs eps^2 ||B||_F^2.
inline CostBreakdown robust_cost_breakdown(const CurveSamples &s, const SystemConfig &system, const FrameData &frame,
                                           const ChannelWeights &weights) {
    const double beta = frame.design_beta();
    const std::vector<BlockKind> kinds = block_kinds(frame);
    CostBreakdown out;
    const bool need_beta = frame.design_beta() > 0.0;
    const BetaSusceptibility bp = need_beta ? susceptibility_beta(s) : BetaSusceptibility{0, 0, 0};
    const ZeroSusceptibility zp = susceptibility_beta0(s);
    for (BlockKind k : kinds) {
        out.block_vectors.push_back(block_susceptibility(bp, zp, k, beta));
    }
    const std::size_t blocks = kinds.size();
    out.freq = noise_channel_norm2(out.block_vectors, block_noise_weights(frequency_noise_operator(system), blocks));
    out.coupling = noise_channel_norm2(out.block_vectors, block_noise_weights(coupling_noise_operator(system), blocks));
    if (weights.crosstalk != 0.0) {
        const std::vector<CrosstalkPair> pairs = crosstalk_pairs(system, frame);
        const std::vector<Matrix2c> b = crosstalk_blocks(s, beta, kinds, pairs);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            out.crosstalk += pairs[p].epsilon * pairs[p].epsilon * b[p].squaredNorm();
        }
    }
    out.total = weights.freq * out.freq + weights.coupling * out.coupling + weights.crosstalk * out.crosstalk;
    return out;
}

inline double robust_cost(const CurveParams &params, const SystemConfig &system, const FrameData &frame,
                          const ChannelWeights &weights) {
    return robust_cost_breakdown(sample_curve(params), system, frame, weights).total;
}

inline double robust_cost(const CurveParams &params, const SystemConfig &system, const FrameData &frame,
                          std::span<const double> weights) {
    return robust_cost(params, system, frame, ChannelWeights::from_span(weights));
}

/// Resonant two-qubit decomposition: frequency noise acts as IZ on both blocks while coupling
/// noise, with the drive locked to the lower split line, acts as IZ + ZZ and so only shifts the
/// beta != 0 block. Returns {|A_w|^2, |A_J|^2} per unit noise.
inline std::array<double, 2> resonant_case_susceptibilities(const CurveSamples &s, const SystemConfig &system,
                                                            const FrameData &frame) {
    if (system.n_qubits != 2 || system.drive_choice != DriveChoice::ResonantLower) {
        throw ConfigError("resonant_case_susceptibilities: needs the two-qubit resonant configuration");
    }
    const CostBreakdown b = robust_cost_breakdown(s, system, frame, ChannelWeights{1.0, 0.0, 0.0});
    const ComplexMatrix iz_plus_zz = pauli_string("IZ") + pauli_string("ZZ");
    return {b.freq, noise_channel_norm2(b.block_vectors, block_noise_weights(iz_plus_zz, 2))};
}

}  // namespace geodesic_gates

#endif  // GEODESIC_GATES_ERROR_FUNCTIONALS_HPP
