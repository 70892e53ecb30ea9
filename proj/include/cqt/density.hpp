// Copyright 2026 The cqtsim Authors
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

#ifndef CQT_DENSITY_HPP
#define CQT_DENSITY_HPP

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cqt {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;
/// Polarization state of one photon, (H, V) amplitudes.
using Jones = Eigen::Vector2cd;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Hermitian, positive semidefinite, unit-trace operator on n qubits.
/// Qubit 0 is the most significant bit of the basis index.
class DensityOperator {
   public:
    static constexpr double kHermitianTol = 1e-12;
    static constexpr double kTraceTol = 1e-12;
    static constexpr double kEigenSlack = 1e-10;

    DensityOperator() = default;
    /// Validates and normalizes `m` to unit trace. Throws std::invalid_argument
    /// on non-square, non-power-of-two, non-Hermitian or non-PSD input.
    explicit DensityOperator(Matrix m);

    static DensityOperator from_pure(const Vector &psi);
    static DensityOperator maximally_mixed(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    Eigen::Index dim() const { return matrix_.rows(); }
    const Matrix &matrix() const { return matrix_; }
    std::complex<double> operator()(Eigen::Index r, Eigen::Index c) const { return matrix_(r, c); }

    double trace_distance(const DensityOperator &other) const;
    double purity() const;
    double min_eigenvalue() const;

    /// Keeps the qubits with `keep_mask` bits set (bit i refers to qubit i).
    DensityOperator partial_trace_keep(unsigned keep_mask) const;

    DensityOperator mixed_with(const DensityOperator &other, double weight_other) const;
    DensityOperator conjugated(const Matrix &unitary) const;

   private:
    Matrix matrix_;
    int num_qubits_ = 0;
};

/// <psi|rho|psi> with psi normalized internally.
double fidelity(const DensityOperator &rho, const Vector &psi);

namespace qubit {

Jones h();
Jones v();
Jones plus();
Jones minus();
/// (|H> + i|V>)/sqrt(2)
Jones right();
Jones left();
/// The orthogonal Jones vector (-conj(b), conj(a)).
Jones orthogonal(const Jones &j);
/// Bloch-sphere state cos(theta/2)|H> + e^{i phi} sin(theta/2)|V>.
Jones bloch(double theta, double phi);
/// H, V, +, -, R, L.
std::array<Jones, 6> axial_states();
/// Label of an axial state or throws. Accepts H V D A R L plus minus + -.
Jones from_label(const std::string &label);

Mat2 pauli(int k);  // 0 I, 1 X, 2 Y, 3 Z
Vector kron(const Vector &a, const Vector &b);
Matrix kron(const Matrix &a, const Matrix &b);

/// Bell states over two qubits, in the order phi+, phi-, psi+, psi-.
Vector bell(int index);
Vector phi_plus();
Vector phi_minus();
Vector psi_plus();
Vector psi_minus();

/// Two unit vectors equal up to a global phase.
bool equal_up_to_phase(const Vector &a, const Vector &b, double tol);

}  // namespace qubit

}  // namespace cqt

#endif
