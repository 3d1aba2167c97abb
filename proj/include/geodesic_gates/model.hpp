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

#ifndef GEODESIC_GATES_MODEL_HPP
#define GEODESIC_GATES_MODEL_HPP

// Basis ordering: |q1 q2> (two qubits) and |q1 q2 q3> (three qubits), qubit 1 most significant.
// The driven (target) qubit is always the last one, so the logical Hamiltonian is a direct sum
// of 2x2 target blocks labelled by the spectator bits.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "geodesic_gates/tensor.hpp"
#include "geodesic_gates/waveform.hpp"

namespace geodesic_gates {

enum class DriveChoice { Midpoint, ResonantLower, Center };

struct SystemConfig {
    int n_qubits = 2;
    double delta = 20.0;
    double g1 = 1.0;
    double g2 = 1.0;
    double omega_ref = 100.0;
    DriveChoice drive_choice = DriveChoice::Midpoint;

    static SystemConfig two_qubit(DriveChoice drive = DriveChoice::Midpoint) {
        SystemConfig c;
        c.drive_choice = drive;
        return c;
    }

    static SystemConfig three_qubit() {
        SystemConfig c;
        c.n_qubits = 3;
        c.drive_choice = DriveChoice::Center;
        return c;
    }

    std::size_t dim() const { return std::size_t{1} << n_qubits; }

    /// Transverse coupling over detuning, the dressing expansion parameter.
    double lambda() const { return g1 / delta; }

    void validate() const {
        if (n_qubits != 2 && n_qubits != 3) {
            throw ConfigError("SystemConfig: n_qubits must be 2 or 3");
        }
        for (double v : {delta, g1, g2, omega_ref}) {
            if (!std::isfinite(v)) {
                throw ConfigError("SystemConfig: non-finite parameter");
            }
        }
        if (delta == 0.0) {
            throw ConfigError("SystemConfig: delta must be nonzero");
        }
        if (std::abs(g1 / delta) >= 1.0) {
            throw ConfigError("SystemConfig: |g1/delta| must be below 1");
        }
        if (n_qubits == 2 && drive_choice == DriveChoice::Center) {
            throw ConfigError("SystemConfig: two-qubit drive must be Midpoint or ResonantLower");
        }
        if (n_qubits == 3 && drive_choice != DriveChoice::Center) {
            throw ConfigError("SystemConfig: three-qubit drive must be Center");
        }
    }

    /// Bare qubit frequencies. Two qubits: omega_2 = omega_ref and omega_1 = omega_2 + delta.
    /// Three qubits: omega_1 = omega_ref - delta, omega_2 = omega_ref + delta, omega_3 = omega_ref.
    std::vector<double> qubit_frequencies() const {
        if (n_qubits == 2) {
            return {omega_ref + delta, omega_ref};
        }
        return {omega_ref - delta, omega_ref + delta, omega_ref};
    }
};

inline std::string to_string(DriveChoice d) {
    switch (d) {
        case DriveChoice::Midpoint:
            return "midpoint";
        case DriveChoice::ResonantLower:
            return "resonant-lower";
        case DriveChoice::Center:
            return "center";
    }
    return "unknown";
}

inline DriveChoice drive_choice_from_string(const std::string &s) {
    if (s == "midpoint") return DriveChoice::Midpoint;
    if (s == "resonant-lower") return DriveChoice::ResonantLower;
    if (s == "center") return DriveChoice::Center;
    throw ConfigError("unknown drive choice '" + s + "'");
}

/// Derived frame quantities. In the two-qubit case `mixing_angle` is the dressing angle
/// -atan(g1/delta)/2; the three-qubit rotation angles are alpha, kappa, gamma.
struct FrameData {
    ComplexMatrix S;
    std::vector<double> betas;
    double delta_tilde = 0.0;
    double drive_scale = 1.0;
    /// Diagonal of the rotating-frame generator K: the frame is R(t) = exp(-i K t) with
    /// K = 1/2 sum_q rotating_freqs[q] Z_q.
    std::vector<double> rotating_freqs;
    double drive_frequency = 0.0;
    double mixing_angle = 0.0;
    double lambda = 0.0;
    double alpha = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;

    /// Largest |beta_i|, the detuning the waveform is designed for.
    double design_beta() const {
        double b = 0.0;
        for (double v : betas) {
            b = std::max(b, std::abs(v));
        }
        return b;
    }
};

/// Undriven Hamiltonian: 1/2 sum omega_q Z_q + 1/4 sum_edges (g1 (XX + YY) + g2 ZZ). The
/// three-qubit chain couples qubits 1 and 2 to the central target qubit 3.
inline ComplexMatrix static_hamiltonian(const SystemConfig &config) {
    config.validate();
    const std::vector<double> w = config.qubit_frequencies();
    if (config.n_qubits == 2) {
        return 0.5 * (w[0] * pauli_string("ZI") + w[1] * pauli_string("IZ")) +
               0.25 * (config.g1 * (pauli_string("XX") + pauli_string("YY")) + config.g2 * pauli_string("ZZ"));
    }
    return 0.5 * (w[0] * pauli_string("ZII") + w[1] * pauli_string("IZI") + w[2] * pauli_string("IIZ")) +
           0.25 * config.g1 *
               (pauli_string("XIX") + pauli_string("YIY") + pauli_string("IXX") + pauli_string("IYY")) +
           0.25 * config.g2 * (pauli_string("ZIZ") + pauli_string("IZZ"));
}

inline FrameData two_qubit_dressing(const SystemConfig &config) {
    config.validate();
    if (config.n_qubits != 2) {
        throw ConfigError("two_qubit_dressing: configuration is not two-qubit");
    }
    FrameData f;
    const double theta = -0.5 * std::atan(config.g1 / config.delta);
    f.mixing_angle = theta;
    f.lambda = config.lambda();
    f.S = ComplexMatrix::Identity(4, 4);
    f.S(1, 1) = std::cos(theta);
    f.S(1, 2) = -std::sin(theta);
    f.S(2, 1) = std::sin(theta);
    f.S(2, 2) = std::cos(theta);

    const std::vector<double> w = config.qubit_frequencies();
    // Dressed splitting delta sec(2 theta) = sign(delta) sqrt(delta^2 + g1^2).
    const double dressed = config.delta / std::cos(2.0 * theta);
    const double w2_tilde = w[1] + 0.5 * (config.delta - dressed);
    const double w1_tilde = w[0] - 0.5 * (config.delta - dressed);
    if (config.drive_choice == DriveChoice::Midpoint) {
        f.drive_frequency = w2_tilde;
        f.betas = {0.5 * config.g2, -0.5 * config.g2};
    } else {
        f.drive_frequency = w2_tilde - 0.5 * config.g2;
        f.betas = {config.g2, 0.0};
    }
    f.delta_tilde = f.drive_frequency - w1_tilde;
    f.drive_scale = std::cos(theta);
    f.rotating_freqs = {w1_tilde, f.drive_frequency};
    return f;
}

namespace detail {

inline ComplexMatrix three_qubit_generator(int which) {
    if (which == 1) {
        return pauli_string("XZY") - pauli_string("YZX") + pauli_string("ZXY") - pauli_string("ZYX");
    }
    if (which == 2) {
        return pauli_string("XIY") - pauli_string("YIX") - pauli_string("IXY") + pauli_string("IYX");
    }
    return pauli_string("XYI") - pauli_string("YXI");
}

/// R(angle, P) = exp(i angle P).
inline ComplexMatrix r_rotation(double angle, const ComplexMatrix &p) { return expm_hermitian(p, -angle); }

}  // namespace detail

inline constexpr double kMaxThreeQubitLambda = 0.2;

inline FrameData three_qubit_dressing(const SystemConfig &config) {
    config.validate();
    if (config.n_qubits != 3) {
        throw ConfigError("three_qubit_dressing: configuration is not three-qubit");
    }
    const double lambda = config.lambda();
    if (std::abs(lambda) > kMaxThreeQubitLambda) {
        throw ConfigError("three_qubit_dressing: |g1/delta| exceeds 0.2, outside the dressing expansion");
    }
    FrameData f;
    f.lambda = lambda;
    // alpha_2 lambda^2 = -(g2 / (4 g1)) lambda^2 = -g2 g1 / (4 delta^2), finite at g1 = 0.
    const double second_order = -config.g2 * config.g1 / (4.0 * config.delta * config.delta);
    f.alpha = 0.5 * lambda + second_order;
    f.kappa = -0.5 * lambda + second_order;
    f.gamma = 0.5 * std::atan(lambda * lambda / (4.0 + lambda * lambda));

    const ComplexMatrix p1 = detail::three_qubit_generator(1);
    const ComplexMatrix p2 = detail::three_qubit_generator(2);
    const ComplexMatrix p3 = detail::three_qubit_generator(3);
    f.S = detail::r_rotation(0.5 * f.gamma, p3) * detail::r_rotation(0.25 * f.kappa, p1 - p2) *
          detail::r_rotation(0.25 * f.alpha, p1 + p2);

    const double l2 = lambda * lambda;
    f.delta_tilde = config.delta * (1.0 + l2 / 4.0 + l2 * l2 / 32.0);
    f.drive_scale = 1.0 - l2 / 4.0;
    f.betas = {config.g2, 0.0, 0.0, -config.g2};
    f.drive_frequency = config.omega_ref;
    f.rotating_freqs = {config.omega_ref - f.delta_tilde, config.omega_ref + f.delta_tilde, f.drive_frequency};
    return f;
}

inline FrameData dressing(const SystemConfig &config) {
    config.validate();
    return config.n_qubits == 2 ? two_qubit_dressing(config) : three_qubit_dressing(config);
}

/// delta_omega Z_target.
inline ComplexMatrix frequency_noise_operator(const SystemConfig &config) {
    return config.n_qubits == 2 ? pauli_string("IZ") : pauli_string("IIZ");
}

/// sum over neighbours of Z_target Z_neighbour.
inline ComplexMatrix coupling_noise_operator(const SystemConfig &config) {
    return config.n_qubits == 2 ? pauli_string("ZZ") : ComplexMatrix(pauli_string("ZIZ") + pauli_string("IZZ"));
}

/// Lab-frame model H0 + (Omega(t)/2)(cos(w_d t) X_target + sin(w_d t) Y_target) plus optional
/// static noise terms. The Hamiltonian is sum_k c_k(Omega, t) O_k over fixed operators O_k.
class LabModel {
   public:
    LabModel(const SystemConfig &config, const FrameData &frame, double delta_omega = 0.0, double delta_j = 0.0)
        : drive_frequency_(frame.drive_frequency) {
        const ComplexMatrix h0 = static_hamiltonian(config) + delta_omega * frequency_noise_operator(config) +
                                 delta_j * coupling_noise_operator(config);
        const ComplexMatrix x = config.n_qubits == 2 ? pauli_string("IX") : pauli_string("IIX");
        const ComplexMatrix y = config.n_qubits == 2 ? pauli_string("IY") : pauli_string("IIY");
        operators_ = {h0, 0.5 * x, 0.5 * y};
    }

    const std::vector<ComplexMatrix> &operators() const { return operators_; }

    /// Coefficients of operators() for the lab envelope value omega_lab at time t.
    void coefficients(double omega_lab, double t, double *c) const {
        const double wt = drive_frequency_ * t;
        c[0] = 1.0;
        c[1] = omega_lab * std::cos(wt);
        c[2] = omega_lab * std::sin(wt);
    }

    ComplexMatrix hamiltonian(double omega_lab, double t) const {
        double c[3];
        coefficients(omega_lab, t, c);
        return c[0] * operators_[0] + c[1] * operators_[1] + c[2] * operators_[2];
    }

    double drive_frequency() const { return drive_frequency_; }

   private:
    double drive_frequency_;
    std::vector<ComplexMatrix> operators_;
};

inline ComplexMatrix lab_hamiltonian(const SystemConfig &config, const Waveform &pulse, double t) {
    if (t < 0.0 || t > pulse.T) {
        throw ContractViolation("lab_hamiltonian: t outside [0, T]");
    }
    const FrameData frame = dressing(config);
    return LabModel(config, frame).hamiltonian(pulse.value_at(t), t);
}

/// Logical rotating-frame model: direct sum of 1/2 (beta_i Z + Omega_eff X) blocks plus the
/// control-crosstalk term, plus optional static noise terms. The Hamiltonian is
/// sum_k c_k(Omega_eff, t) O_k over fixed operators O_k.
class ReducedModel {
   public:
    ReducedModel(const SystemConfig &config, const FrameData &frame, bool crosstalk_on = true,
                 double delta_omega = 0.0, double delta_j = 0.0)
        : n_qubits_(config.n_qubits),
          crosstalk_on_(crosstalk_on),
          delta_tilde_(frame.delta_tilde),
          crosstalk_scale_(config.n_qubits == 2 ? 1.0 : 1.0 / frame.drive_scale) {
        const std::size_t dim = config.dim();
        ComplexMatrix h0 = ComplexMatrix::Zero(dim, dim);
        for (std::size_t i = 0; i < frame.betas.size(); ++i) {
            h0(2 * i, 2 * i) = 0.5 * frame.betas[i];
            h0(2 * i + 1, 2 * i + 1) = -0.5 * frame.betas[i];
        }
        h0 += delta_omega * frequency_noise_operator(config) + delta_j * coupling_noise_operator(config);
        operators_ = {h0, 0.5 * (n_qubits_ == 2 ? pauli_string("IX") : pauli_string("IIX"))};
        if (!crosstalk_on_) {
            return;
        }
        if (n_qubits_ == 2) {
            // 1/2 tan(theta) Omega_eff (cos(D t) XZ + sin(D t) YZ).
            operators_.push_back(0.5 * std::tan(frame.mixing_angle) * pauli_string("XZ"));
            operators_.push_back(0.5 * std::tan(frame.mixing_angle) * pauli_string("YZ"));
        } else {
            // Omega_lab (lambda/4 (V1 + V2) + g2/(8 g1) lambda^2 (V1' + V2' + V12')), where
            // g2/(8 g1) lambda^2 = g2 g1 / (8 delta^2).
            const double first = 0.25 * frame.lambda;
            const double second = config.g2 * config.g1 / (8.0 * config.delta * config.delta);
            operators_.push_back(first * (pauli_string("XIZ") - pauli_string("IXZ")) +
                                 second * (-pauli_string("XZZ") - pauli_string("ZXZ")));
            operators_.push_back(first * (pauli_string("YIZ") + pauli_string("IYZ")) +
                                 second * (-pauli_string("YZZ") + pauli_string("ZYZ")));
            operators_.push_back(second * (pauli_string("XXX") + pauli_string("YYX")));
            operators_.push_back(second * (pauli_string("YXX") - pauli_string("XYX")));
        }
    }

    const std::vector<ComplexMatrix> &operators() const { return operators_; }

    /// Coefficients of operators() for the effective envelope value omega_eff at time t.
    void coefficients(double omega_eff, double t, double *c) const {
        c[0] = 1.0;
        c[1] = omega_eff;
        if (!crosstalk_on_) {
            return;
        }
        const double phase = delta_tilde_ * t;
        const double scaled = crosstalk_scale_ * omega_eff;
        c[2] = scaled * std::cos(phase);
        c[3] = scaled * std::sin(phase);
        if (n_qubits_ == 3) {
            c[4] = scaled * std::cos(2.0 * phase);
            c[5] = scaled * std::sin(2.0 * phase);
        }
    }

    /// Hamiltonian at time t for the effective (logical-frame) envelope value omega_eff.
    ComplexMatrix hamiltonian(double omega_eff, double t) const {
        double c[6];
        coefficients(omega_eff, t, c);
        ComplexMatrix h = operators_[0];
        for (std::size_t k = 1; k < operators_.size(); ++k) {
            h += c[k] * operators_[k];
        }
        return h;
    }

    const ComplexMatrix &static_part() const { return operators_[0]; }

   private:
    int n_qubits_;
    bool crosstalk_on_;
    double delta_tilde_;
    double crosstalk_scale_;
    std::vector<ComplexMatrix> operators_;
};

template <class Envelope>
ComplexMatrix reduced_hamiltonian(const SystemConfig &config, const FrameData &frame, Envelope &&envelope, double t,
                                  bool crosstalk_on = true) {
    return ReducedModel(config, frame, crosstalk_on).hamiltonian(envelope(t), t);
}

/// I (x) R_X(phi) or I (x) I (x) R_X(phi) with R_X(phi) = exp(-i phi X / 2).
inline ComplexMatrix logical_target(const SystemConfig &config, double gate_angle) {
    config.validate();
    if (!(gate_angle > 0.0 && gate_angle <= 2.0 * kPi + 1e-12)) {
        throw ConfigError("logical_target: gate angle must lie in (0, 2 pi]");
    }
    const std::size_t blocks = config.dim() / 2;
    const Matrix2c rx = rotation('X', gate_angle);
    ComplexMatrix out = ComplexMatrix::Zero(config.dim(), config.dim());
    for (std::size_t i = 0; i < blocks; ++i) {
        out.block<2, 2>(2 * i, 2 * i) = rx;
    }
    return out;
}

/// exp(i K T) S U_lab S^dag, the lab propagator seen in the logical rotating frame.
inline ComplexMatrix to_logical_frame(const SystemConfig &config, const FrameData &frame, const ComplexMatrix &u_lab,
                                      double T) {
    const std::size_t dim = config.dim();
    Eigen::VectorXcd unwind(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        double k = 0.0;
        for (int q = 0; q < config.n_qubits; ++q) {
            const bool excited = (idx >> (config.n_qubits - 1 - q)) & 1U;
            k += 0.5 * frame.rotating_freqs[q] * (excited ? -1.0 : 1.0);
        }
        unwind(idx) = std::polar(1.0, k * T);
    }
    return unwind.asDiagonal() * (frame.S * u_lab * frame.S.adjoint());
}

}  // namespace geodesic_gates

#endif  // GEODESIC_GATES_MODEL_HPP
