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

#ifndef GEODESIC_GATES_TENSOR_HPP
#define GEODESIC_GATES_TENSOR_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace geodesic_gates {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Matrix2c = Eigen::Matrix2cd;

/// Raised when a caller breaks a documented precondition (non-Hermitian input, bad dimensions).
class ContractViolation : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Raised for invalid user-facing configuration (bad parameters, inconsistent inputs).
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

namespace detail {

inline Matrix2c single_pauli(char letter) {
    Matrix2c m;
    switch (letter) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, -kI, kI, 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            throw std::invalid_argument(std::string("unknown Pauli letter '") + letter + "'");
    }
    return m;
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

template <int Dim>
Eigen::Matrix<Complex, Dim, Dim> expm_hermitian_fixed(const Eigen::Matrix<Complex, Dim, Dim> &h, double s) {
    using Fixed = Eigen::Matrix<Complex, Dim, Dim>;
    Eigen::SelfAdjointEigenSolver<Fixed> solver(h, Eigen::ComputeEigenvectors);
    const Fixed &v = solver.eigenvectors();
    Eigen::Matrix<Complex, Dim, 1> phases;
    for (int k = 0; k < Dim; ++k) {
        phases(k) = std::polar(1.0, -s * solver.eigenvalues()(k));
    }
    return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace detail

/// Kronecker product of single-qubit Paulis in qubit order 1 (x) 2 (x) 3; qubit 1 is the most
/// significant bit of the basis index.
inline ComplexMatrix pauli_string(std::string_view label) {
    if (label.empty() || label.size() > 3) {
        throw std::invalid_argument("Pauli string length must be 1, 2 or 3, got " +
                                    std::to_string(label.size()));
    }
    ComplexMatrix out = detail::single_pauli(label[0]);
    for (std::size_t k = 1; k < label.size(); ++k) {
        out = detail::kron(out, detail::single_pauli(label[k]));
    }
    return out;
}

inline double max_abs(const ComplexMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix &h, double tol) {
    return h.rows() == h.cols() && max_abs(h - h.adjoint()) <= tol;
}

/// exp(-i s h) for a 2x2 Hermitian h, using h = h0 I + n.sigma.
inline Matrix2c expm_hermitian_2x2(const Matrix2c &h, double s) {
    const double h0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double nz = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const double nx = h(1, 0).real();
    const double ny = h(1, 0).imag();
    const double r = std::sqrt(nx * nx + ny * ny + nz * nz);
    const double c = std::cos(s * r);
    const double sinc = r > 0 ? std::sin(s * r) / r : s;
    const Complex phase = std::polar(1.0, -s * h0);
    Matrix2c u;
    u(0, 0) = phase * Complex(c, -sinc * nz);
    u(1, 1) = phase * Complex(c, sinc * nz);
    u(0, 1) = phase * (-kI * sinc) * Complex(nx, -ny);
    u(1, 0) = phase * (-kI * sinc) * Complex(nx, ny);
    return u;
}

/// exp(-i s H) for Hermitian H; throws ContractViolation if H is not Hermitian.
inline ComplexMatrix expm_hermitian(const ComplexMatrix &h, double s) {
    const double tol = 1e-12 * std::max(1.0, max_abs(h));
    if (!is_hermitian(h, tol)) {
        throw ContractViolation("expm_hermitian: input is not Hermitian");
    }
    switch (h.rows()) {
        case 1:
            return ComplexMatrix::Constant(1, 1, std::polar(1.0, -s * h(0, 0).real()));
        case 2:
            return expm_hermitian_2x2(Matrix2c(h), s);
        case 4:
            return detail::expm_hermitian_fixed<4>(Eigen::Matrix<Complex, 4, 4>(h), s);
        case 8:
            return detail::expm_hermitian_fixed<8>(Eigen::Matrix<Complex, 8, 8>(h), s);
        default: {
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::ComputeEigenvectors);
            Eigen::VectorXcd phases(h.rows());
            for (Eigen::Index k = 0; k < h.rows(); ++k) {
                phases(k) = std::polar(1.0, -s * solver.eigenvalues()(k));
            }
            return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
        }
    }
}

/// Midpoint piecewise-constant propagator with exactly `steps` equal steps over [0, T].
template <class HamiltonianAt>
ComplexMatrix propagate_steps(HamiltonianAt &&hamiltonian_at, double T, std::size_t steps) {
    if (!(T > 0) || steps == 0) {
        throw ContractViolation("propagate: need T > 0 and at least one step");
    }
    const double dt = T / static_cast<double>(steps);
    ComplexMatrix u;
    for (std::size_t k = 0; k < steps; ++k) {
        const ComplexMatrix h = hamiltonian_at((static_cast<double>(k) + 0.5) * dt);
        if (k == 0) {
            u = ComplexMatrix::Identity(h.rows(), h.cols());
        }
        u = expm_hermitian(h, dt) * u;
    }
    return u;
}

/// U(T) = prod_k exp(-i H(t_k + dt/2) dt), applied right to left. The step is shrunk so that
/// an integer number of steps spans [0, T] exactly.
template <class HamiltonianAt>
ComplexMatrix propagate(HamiltonianAt &&hamiltonian_at, double T, double dt) {
    if (!(T > 0) || !(dt > 0)) {
        throw ContractViolation("propagate: need T > 0 and dt > 0");
    }
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(T / dt - 1e-9)));
    return propagate_steps(hamiltonian_at, T, steps);
}

/// Fourth-order Magnus propagator with two Gauss-Legendre nodes per step:
/// Omega = dt/2 (H1 + H2) - i sqrt(3)/12 dt^2 [H2, H1].
template <class HamiltonianAt>
ComplexMatrix propagate_magnus4(HamiltonianAt &&hamiltonian_at, double T, std::size_t steps) {
    if (!(T > 0) || steps == 0) {
        throw ContractViolation("propagate_magnus4: need T > 0 and at least one step");
    }
    const double dt = T / static_cast<double>(steps);
    const double offset = std::sqrt(3.0) / 6.0;
    const double commutator_weight = std::sqrt(3.0) / 12.0 * dt * dt;
    ComplexMatrix u;
    for (std::size_t k = 0; k < steps; ++k) {
        const double t0 = static_cast<double>(k) * dt;
        const ComplexMatrix h1 = hamiltonian_at(t0 + dt * (0.5 - offset));
        const ComplexMatrix h2 = hamiltonian_at(t0 + dt * (0.5 + offset));
        if (k == 0) {
            u = ComplexMatrix::Identity(h1.rows(), h1.cols());
        }
        // -i c [H2, H1] is Hermitian, so the effective generator stays Hermitian.
        ComplexMatrix generator = 0.5 * dt * (h1 + h2) - kI * commutator_weight * (h2 * h1 - h1 * h2);
        generator = 0.5 * (generator + generator.adjoint()).eval();
        u = expm_hermitian(generator, 1.0) * u;
    }
    return u;
}

namespace detail {

/// Complex matrix stored as separate real and imaginary parts, so that small fixed-size products
/// run as vectorized real products.
template <int Dim>
struct SplitMatrix {
    using Real = Eigen::Matrix<double, Dim, Dim>;
    Real re = Real::Zero();
    Real im = Real::Zero();

    static SplitMatrix identity() {
        SplitMatrix m;
        m.re.setIdentity();
        return m;
    }

    static SplitMatrix from(const ComplexMatrix &m) { return {m.real(), m.imag()}; }

    Eigen::Matrix<Complex, Dim, Dim> complex() const {
        Eigen::Matrix<Complex, Dim, Dim> out;
        out.real() = re;
        out.imag() = im;
        return out;
    }

    friend SplitMatrix operator*(const SplitMatrix &a, const SplitMatrix &b) {
        return {(a.re.lazyProduct(b.re) - a.im.lazyProduct(b.im)).eval(),
                (a.re.lazyProduct(b.im) + a.im.lazyProduct(b.re)).eval()};
    }
};

/// exp(-i G) for a Hermitian step generator. Small generators (induced 1-norm at most 1/4) use
/// the Taylor series summed until the terms drop below 1e-17 relative; larger ones the
/// eigendecomposition.
template <int Dim>
SplitMatrix<Dim> expm_hermitian_step(const SplitMatrix<Dim> &g) {
    // |re| + |im| bounds each modulus, so this overestimates the 1-norm by at most sqrt(2).
    const double norm = (g.re.cwiseAbs() + g.im.cwiseAbs()).colwise().sum().maxCoeff();
    if (norm > 0.25) {
        const Eigen::Matrix<Complex, Dim, Dim> e = expm_hermitian_fixed<Dim>(g.complex(), 1.0);
        return {e.real(), e.imag()};
    }
    // -i G = Im(G) - i Re(G).
    const SplitMatrix<Dim> step{g.im, -g.re};
    SplitMatrix<Dim> term = SplitMatrix<Dim>::identity();
    SplitMatrix<Dim> sum = term;
    double bound = 1.0;
    for (int k = 1; k < 30 && bound > 1e-17; ++k) {
        term = term * step;
        term.re /= static_cast<double>(k);
        term.im /= static_cast<double>(k);
        sum.re += term.re;
        sum.im += term.im;
        bound *= norm / static_cast<double>(k);
    }
    return sum;
}

template <int Dim, class Coefficients>
ComplexMatrix propagate_magnus4_linear_fixed(const std::vector<ComplexMatrix> &ops, Coefficients &&coefficients,
                                             double T, std::size_t steps) {
    using Split = SplitMatrix<Dim>;
    std::vector<Split> split_ops;
    for (const ComplexMatrix &op : ops) {
        split_ops.push_back(Split::from(op));
    }
    std::vector<double> c1(ops.size(), 0.0), c2(ops.size(), 0.0);
    const double dt = T / static_cast<double>(steps);
    const double offset = std::sqrt(3.0) / 6.0;
    const double commutator_weight = std::sqrt(3.0) / 12.0 * dt * dt;
    Split u = Split::identity();
    for (std::size_t k = 0; k < steps; ++k) {
        const double t0 = static_cast<double>(k) * dt;
        coefficients(t0 + dt * (0.5 - offset), c1.data());
        coefficients(t0 + dt * (0.5 + offset), c2.data());
        Split h1, h2;
        for (std::size_t j = 0; j < split_ops.size(); ++j) {
            h1.re += c1[j] * split_ops[j].re;
            h1.im += c1[j] * split_ops[j].im;
            h2.re += c2[j] * split_ops[j].re;
            h2.im += c2[j] * split_ops[j].im;
        }
        // Generator dt/2 (H1 + H2) - i c [H2, H1]; -i c (R + i I) = c I - i c R.
        const Split a = h2 * h1, b = h1 * h2;
        Split generator;
        generator.re = 0.5 * dt * (h1.re + h2.re) + commutator_weight * (a.im - b.im);
        generator.im = 0.5 * dt * (h1.im + h2.im) - commutator_weight * (a.re - b.re);
        // Hermitian part: symmetric real, antisymmetric imaginary.
        generator.re = (0.5 * (generator.re + generator.re.transpose())).eval();
        generator.im = (0.5 * (generator.im - generator.im.transpose())).eval();
        if constexpr (Dim == 2) {
            const Matrix2c e = expm_hermitian_2x2(generator.complex(), 1.0);
            u = Split{e.real(), e.imag()} * u;
        } else {
            u = expm_hermitian_step<Dim>(generator) * u;
        }
    }
    return u.complex();
}

}  // namespace detail

/// propagate_magnus4 for H(t) = sum_k c_k(t) ops[k] with constant operators; coefficients(t, c)
/// writes the ops.size() coefficient values into c. Dimensions 2, 4 and 8 run in fixed-size
/// arithmetic.
template <class Coefficients>
ComplexMatrix propagate_magnus4_linear(const std::vector<ComplexMatrix> &ops, Coefficients &&coefficients, double T,
                                       std::size_t steps) {
    if (!(T > 0) || steps == 0 || ops.empty()) {
        throw ContractViolation("propagate_magnus4_linear: need T > 0, at least one step and one operator");
    }
    switch (ops[0].rows()) {
        case 2:
            return detail::propagate_magnus4_linear_fixed<2>(ops, coefficients, T, steps);
        case 4:
            return detail::propagate_magnus4_linear_fixed<4>(ops, coefficients, T, steps);
        case 8:
            return detail::propagate_magnus4_linear_fixed<8>(ops, coefficients, T, steps);
        default: {
            std::vector<double> c(ops.size(), 0.0);
            return propagate_magnus4(
                [&](double t) {
                    coefficients(t, c.data());
                    ComplexMatrix h = c[0] * ops[0];
                    for (std::size_t k = 1; k < ops.size(); ++k) {
                        h += c[k] * ops[k];
                    }
                    return h;
                },
                T, steps);
        }
    }
}

/// F = |Tr(U^dag V)|^2 / dim^2.
inline double gate_fidelity(const ComplexMatrix &u, const ComplexMatrix &v) {
    if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols()) {
        throw ContractViolation("gate_fidelity: dimension mismatch");
    }
    const double dim = static_cast<double>(u.rows());
    const Complex overlap = (u.adjoint() * v).trace();
    return std::min(1.0, std::norm(overlap) / (dim * dim));
}

inline double gate_infidelity(const ComplexMatrix &u, const ComplexMatrix &v) {
    return 1.0 - gate_fidelity(u, v);
}

/// Single-qubit rotation exp(-i angle P / 2) for P in {X, Y, Z}.
inline Matrix2c rotation(char axis, double angle) {
    return expm_hermitian_2x2(detail::single_pauli(axis), 0.5 * angle);
}

/// Pauli coefficients (x, y, z) of a 2x2 matrix, Tr(P M) / 2.
inline Eigen::Vector3cd pauli_components(const Matrix2c &m) {
    return {0.5 * (m(0, 1) + m(1, 0)), 0.5 * kI * (m(0, 1) - m(1, 0)), 0.5 * (m(0, 0) - m(1, 1))};
}

}  // namespace geodesic_gates

#endif  // GEODESIC_GATES_TENSOR_HPP
