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

#include "geodesic_gates/model.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace geodesic_gates;

namespace {

double max_off_diagonal(const ComplexMatrix &m) {
    double out = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (r != c) {
                out = std::max(out, std::abs(m(r, c)));
            }
        }
    }
    return out;
}

std::vector<double> sorted_eigenvalues(const ComplexMatrix &h) {
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + h.rows());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> sorted_diagonal(const ComplexMatrix &h) {
    std::vector<double> out;
    for (Eigen::Index k = 0; k < h.rows(); ++k) {
        out.push_back(h(k, k).real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

SystemConfig three_qubit_with_lambda(double lambda) {
    SystemConfig c = SystemConfig::three_qubit();
    c.g1 = lambda * c.delta;
    c.g2 = c.g1;
    return c;
}

Waveform constant_waveform(double value, double T) {
    Waveform w;
    w.T = T;
    w.dt = T / 4.0;
    w.samples.assign(5, value);
    return w;
}

}  // namespace

TEST(model, ConfigValidation) {
    SystemConfig c = SystemConfig::two_qubit();
    c.delta = 0.0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = SystemConfig::two_qubit();
    c.g1 = 25.0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = SystemConfig::two_qubit();
    c.n_qubits = 4;
    EXPECT_THROW(c.validate(), ConfigError);
    c = SystemConfig::three_qubit();
    c.drive_choice = DriveChoice::Midpoint;
    EXPECT_THROW(c.validate(), ConfigError);
    EXPECT_THROW(three_qubit_dressing(three_qubit_with_lambda(0.3)), ConfigError);
    EXPECT_THROW(two_qubit_dressing(SystemConfig::three_qubit()), ConfigError);
    EXPECT_THROW(three_qubit_dressing(SystemConfig::two_qubit()), ConfigError);
}

TEST(model, DecoupledTwoQubitHamiltonian) {
    SystemConfig c = SystemConfig::two_qubit();
    c.g1 = 0.0;
    c.g2 = 0.0;
    const ComplexMatrix h = lab_hamiltonian(c, constant_waveform(0.0, 1.0), 0.3);
    const std::vector<double> w = c.qubit_frequencies();
    const ComplexMatrix expected = 0.5 * (w[0] * pauli_string("ZI") + w[1] * pauli_string("IZ"));
    EXPECT_EQ(max_abs(h - expected), 0.0);
    const FrameData f = two_qubit_dressing(c);
    EXPECT_LT(max_abs(f.S - ComplexMatrix::Identity(4, 4)), 1e-15);
    EXPECT_EQ(f.drive_scale, 1.0);
}

TEST(model, LabHamiltonianDrive) {
    const SystemConfig c = SystemConfig::two_qubit();
    const FrameData f = two_qubit_dressing(c);
    const double t = 0.37;
    const ComplexMatrix drive = lab_hamiltonian(c, constant_waveform(0.8, 1.0), t) - static_hamiltonian(c);
    const double wt = f.drive_frequency * t;
    const ComplexMatrix expected = 0.4 * (std::cos(wt) * pauli_string("IX") + std::sin(wt) * pauli_string("IY"));
    EXPECT_LT(max_abs(drive - expected), 1e-13);
    EXPECT_TRUE(is_hermitian(drive, 1e-15));
    EXPECT_THROW(lab_hamiltonian(c, constant_waveform(0.8, 1.0), 1.5), ContractViolation);
}

TEST(model, TwoQubitMixingAngleAndBetas) {
    SystemConfig c = SystemConfig::two_qubit();
    const FrameData mid = two_qubit_dressing(c);
    EXPECT_NEAR(mid.mixing_angle, -0.0249792, 1e-7);
    EXPECT_NEAR(mid.mixing_angle, -0.5 * std::atan(0.05), 1e-16);
    EXPECT_EQ(mid.betas, (std::vector<double>{0.5, -0.5}));
    EXPECT_NEAR(mid.delta_tilde, -std::sqrt(401.0), 1e-12);
    EXPECT_NEAR(mid.drive_scale, std::cos(mid.mixing_angle), 1e-16);
    c.drive_choice = DriveChoice::ResonantLower;
    const FrameData res = two_qubit_dressing(c);
    EXPECT_EQ(res.betas, (std::vector<double>{1.0, 0.0}));
    EXPECT_NEAR(res.delta_tilde, -std::sqrt(401.0) - 0.5, 1e-12);
}

TEST(model, TwoQubitDressingDiagonalizesExactly) {
    oracle::Uniform u(4);
    for (int trial = 0; trial < 20; ++trial) {
        SystemConfig c = SystemConfig::two_qubit(trial % 2 ? DriveChoice::Midpoint : DriveChoice::ResonantLower);
        c.delta = u(5.0, 40.0) * (trial % 3 ? 1.0 : -1.0);
        c.g1 = u(0.0, 0.5) * std::abs(c.delta);
        c.g2 = u(-2.0, 2.0);
        const FrameData f = two_qubit_dressing(c);
        const ComplexMatrix h0 = static_hamiltonian(c);
        const ComplexMatrix d = f.S * h0 * f.S.adjoint();
        EXPECT_LT(max_off_diagonal(d), 1e-12 * std::max(1.0, max_abs(h0)));
        EXPECT_LT(max_abs(f.S.adjoint() * f.S - ComplexMatrix::Identity(4, 4)), 1e-14);
        const std::vector<double> exact = sorted_eigenvalues(h0);
        const std::vector<double> diag = sorted_diagonal(d);
        for (std::size_t k = 0; k < 4; ++k) {
            EXPECT_NEAR(exact[k], diag[k], 1e-10);
        }
    }
}

TEST(model, ThreeQubitFrameConstants) {
    const FrameData f = three_qubit_dressing(three_qubit_with_lambda(0.05));
    EXPECT_NEAR(f.gamma, 3.1231e-4, 1e-8);
    EXPECT_NEAR(f.gamma, 0.5 * std::atan(0.0025 / 4.0025), 1e-16);
    EXPECT_NEAR(f.delta_tilde / 20.0, 1.0 + 6.25e-4 + 1.953125e-7, 1e-15);
    EXPECT_NEAR(f.drive_scale, 1.0 - 0.0025 / 4.0, 1e-16);
    EXPECT_EQ(f.betas, (std::vector<double>{1.0, 0.0, 0.0, -1.0}));
    EXPECT_LT(max_abs(f.S.adjoint() * f.S - ComplexMatrix::Identity(8, 8)), 1e-13);
    // alpha = lambda/2 - g2/(4 g1) lambda^2, kappa = -lambda/2 - g2/(4 g1) lambda^2.
    EXPECT_NEAR(f.alpha, 0.025 - 0.0025 / 4.0, 1e-16);
    EXPECT_NEAR(f.kappa, -0.025 - 0.0025 / 4.0, 1e-16);
}

TEST(model, ThreeQubitDecoupledLimit) {
    const FrameData f = three_qubit_dressing(three_qubit_with_lambda(0.0));
    EXPECT_LT(max_abs(f.S - ComplexMatrix::Identity(8, 8)), 1e-15);
    EXPECT_EQ(f.betas, (std::vector<double>{0.0, 0.0, 0.0, -0.0}));
    SystemConfig c = SystemConfig::three_qubit();
    c.g1 = 0.0;
    const FrameData g = three_qubit_dressing(c);
    EXPECT_LT(max_abs(g.S - ComplexMatrix::Identity(8, 8)), 1e-15);
    EXPECT_EQ(g.betas, (std::vector<double>{1.0, 0.0, 0.0, -1.0}));
}

TEST(model, ThreeQubitResidualScalesCubically) {
    std::vector<double> log_l, log_r;
    for (int k = 1; k <= 100; ++k) {
        const double lambda = 0.001 * k;
        const SystemConfig c = three_qubit_with_lambda(lambda);
        const FrameData f = three_qubit_dressing(c);
        const double r = max_off_diagonal(f.S * static_hamiltonian(c) * f.S.adjoint());
        log_l.push_back(std::log(lambda));
        log_r.push_back(std::log(r));
    }
    const double n = static_cast<double>(log_l.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < log_l.size(); ++k) {
        sx += log_l[k];
        sy += log_r[k];
        sxx += log_l[k] * log_l[k];
        sxy += log_l[k] * log_r[k];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    EXPECT_NEAR(slope, 3.0, 0.2);
}

TEST(model, ThreeQubitSpectrumMatchesBruteForce) {
    const SystemConfig c = three_qubit_with_lambda(0.05);
    const FrameData f = three_qubit_dressing(c);
    const ComplexMatrix h0 = static_hamiltonian(c);
    const std::vector<double> exact = sorted_eigenvalues(h0);
    const std::vector<double> diag = sorted_diagonal(f.S * h0 * f.S.adjoint());
    for (std::size_t k = 0; k < 8; ++k) {
        // Residual couplings are O(lambda^3 delta) and shift levels at second order in them.
        EXPECT_NEAR(exact[k], diag[k], 1e-5);
    }
    // The dressed splittings of the spectators reproduce delta_tilde.
    EXPECT_NEAR(f.rotating_freqs[1] - f.rotating_freqs[0], 2.0 * f.delta_tilde, 1e-12);
}

TEST(model, ReducedHamiltonianStaticPart) {
    for (const SystemConfig &c : {SystemConfig::two_qubit(), SystemConfig::two_qubit(DriveChoice::ResonantLower),
                                  SystemConfig::three_qubit()}) {
        const FrameData f = dressing(c);
        const ComplexMatrix h = reduced_hamiltonian(c, f, [](double) { return 0.0; }, 0.2);
        EXPECT_LT(max_off_diagonal(h), 1e-16);
        for (std::size_t i = 0; i < f.betas.size(); ++i) {
            EXPECT_EQ(h(2 * i, 2 * i).real(), 0.5 * f.betas[i]);
            EXPECT_EQ(h(2 * i + 1, 2 * i + 1).real(), -0.5 * f.betas[i]);
        }
    }
}

TEST(model, TwoQubitCrosstalkEntries) {
    const SystemConfig c = SystemConfig::two_qubit();
    const FrameData f = two_qubit_dressing(c);
    const double omega0 = 0.7;
    const ComplexMatrix h = reduced_hamiltonian(c, f, [&](double) { return omega0; }, 0.0);
    const ComplexMatrix bare = reduced_hamiltonian(c, f, [&](double) { return omega0; }, 0.0, false);
    const ComplexMatrix v = h - bare;
    const double amp = 0.5 * std::tan(f.mixing_angle) * omega0;
    EXPECT_NEAR(v(0, 2).real(), amp, 1e-16);
    EXPECT_NEAR(v(2, 0).real(), amp, 1e-16);
    EXPECT_NEAR(v(1, 3).real(), -amp, 1e-16);
    EXPECT_NEAR(v(3, 1).real(), -amp, 1e-16);
    EXPECT_NEAR(max_abs(v), std::abs(amp), 1e-16);
    EXPECT_TRUE(is_hermitian(h, 1e-16));
    // Vanishing mixing angle leaves the blocks uncoupled.
    SystemConfig weak = c;
    weak.g1 = 0.0;
    const FrameData fw = two_qubit_dressing(weak);
    const ComplexMatrix hw = reduced_hamiltonian(weak, fw, [&](double) { return omega0; }, 0.4);
    EXPECT_EQ(hw(0, 2), Complex(0.0));
    EXPECT_EQ(hw(1, 3), Complex(0.0));
}

TEST(model, ThreeQubitCrosstalkLeadingOrder) {
    const SystemConfig c = three_qubit_with_lambda(0.05);
    const FrameData f = three_qubit_dressing(c);
    const double omega_eff = 0.9;
    const ComplexMatrix v = reduced_hamiltonian(c, f, [&](double) { return omega_eff; }, 0.0) -
                            reduced_hamiltonian(c, f, [&](double) { return omega_eff; }, 0.0, false);
    const double omega_lab = omega_eff / f.drive_scale;
    // First-order entries lambda/4 Omega_lab, with lambda^2 corrections on top.
    EXPECT_NEAR(max_abs(v) / omega_lab, 0.25 * 0.05, 0.05 * 0.05);
    EXPECT_TRUE(is_hermitian(v, 1e-16));
    EXPECT_EQ(v(0, 1), Complex(0.0));
}

TEST(model, LogicalTargets) {
    const ComplexMatrix t2 = logical_target(SystemConfig::two_qubit(), kPi);
    EXPECT_LT(max_abs(t2 - ComplexMatrix(-kI * pauli_string("IX"))), 1e-15);
    const ComplexMatrix t3 = logical_target(SystemConfig::three_qubit(), 2.0 * kPi);
    EXPECT_LT(max_abs(t3 + ComplexMatrix::Identity(8, 8)), 1e-15);
    const ComplexMatrix h3 = logical_target(SystemConfig::three_qubit(), kPi / 2);
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(h3(2 * i, 2 * i) - std::cos(kPi / 4)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(h3(2 * i, 2 * i + 1) - Complex(0.0, -std::sin(kPi / 4))), 0.0, 1e-15);
    }
    EXPECT_THROW(logical_target(SystemConfig::two_qubit(), 0.0), ConfigError);
}

TEST(model, FrameTransformOfStaticEvolution) {
    // Undriven lab evolution, viewed in the logical rotating frame, only accumulates the
    // block detunings (up to a global phase).
    const SystemConfig c = SystemConfig::two_qubit();
    const FrameData f = two_qubit_dressing(c);
    const double T = 3.7;
    const ComplexMatrix u_lab = expm_hermitian(static_hamiltonian(c), T);
    const ComplexMatrix logical = to_logical_frame(c, f, u_lab, T);
    const ReducedModel reduced(c, f, false);
    const ComplexMatrix expected = expm_hermitian(reduced.static_part(), T);
    EXPECT_LT(gate_infidelity(logical, expected), 1e-12);
}
