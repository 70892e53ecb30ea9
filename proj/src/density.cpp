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

#include "cqt/density.hpp"

#include <cmath>

namespace cqt {

namespace {

using cplx = std::complex<double>;

int log2_exact(Eigen::Index d) {
    int n = 0;
    while ((Eigen::Index{1} << n) < d) {
        n++;
    }
    if ((Eigen::Index{1} << n) != d) {
        throw DimensionError("density operator dimension " + std::to_string(d) + " is not a power of two");
    }
    return n;
}

}  // namespace

DensityOperator::DensityOperator(Matrix m) : matrix_(std::move(m)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
        throw DimensionError("density operator must be square and non-empty");
    }
    num_qubits_ = log2_exact(matrix_.rows());
    double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
    if (asym > kHermitianTol * scale) {
        throw std::invalid_argument("density operator is not Hermitian (deviation " + std::to_string(asym) + ")");
    }
    matrix_ = (matrix_ + matrix_.adjoint()) * 0.5;
    double tr = matrix_.trace().real();
    if (!(tr > 0.0)) {
        throw std::invalid_argument("density operator has non-positive trace");
    }
    matrix_ /= tr;
    if (min_eigenvalue() < -kEigenSlack) {
        throw std::invalid_argument("density operator is not positive semidefinite");
    }
}

DensityOperator DensityOperator::from_pure(const Vector &psi) {
    Vector n = psi / psi.norm();
    return DensityOperator(n * n.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(int num_qubits) {
    Eigen::Index d = Eigen::Index{1} << num_qubits;
    return DensityOperator(Matrix::Identity(d, d));
}

double DensityOperator::trace_distance(const DensityOperator &other) const {
    if (other.dim() != dim()) {
        throw DimensionError("trace_distance: dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_ - other.matrix_, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double DensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

double DensityOperator::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

DensityOperator DensityOperator::partial_trace_keep(unsigned keep_mask) const {
    std::vector<int> kept;
    for (int q = 0; q < num_qubits_; q++) {
        if (keep_mask & (1u << q)) {
            kept.push_back(q);
        }
    }
    const int nk = static_cast<int>(kept.size());
    Matrix out = Matrix::Zero(Eigen::Index{1} << nk, Eigen::Index{1} << nk);
    auto reduced = [&](Eigen::Index full) {
        Eigen::Index r = 0;
        for (int q : kept) {
            r = (r << 1) | ((full >> (num_qubits_ - 1 - q)) & 1);
        }
        return r;
    };
    Eigen::Index traced_bits = 0;
    for (int q = 0; q < num_qubits_; q++) {
        if (!(keep_mask & (1u << q))) {
            traced_bits |= Eigen::Index{1} << (num_qubits_ - 1 - q);
        }
    }
    for (Eigen::Index r = 0; r < dim(); r++) {
        for (Eigen::Index c = 0; c < dim(); c++) {
            if ((r & traced_bits) == (c & traced_bits)) {
                out(reduced(r), reduced(c)) += matrix_(r, c);
            }
        }
    }
    return DensityOperator(out);
}

DensityOperator DensityOperator::mixed_with(const DensityOperator &other, double weight_other) const {
    if (other.dim() != dim()) {
        throw DimensionError("mixed_with: dimension mismatch");
    }
    return DensityOperator(matrix_ * (1.0 - weight_other) + other.matrix_ * weight_other);
}

DensityOperator DensityOperator::conjugated(const Matrix &unitary) const {
    if (unitary.rows() != dim() || unitary.cols() != dim()) {
        throw DimensionError("conjugated: dimension mismatch");
    }
    return DensityOperator(unitary * matrix_ * unitary.adjoint());
}

double fidelity(const DensityOperator &rho, const Vector &psi) {
    if (psi.size() != rho.dim()) {
        throw DimensionError("fidelity: state has dimension " + std::to_string(psi.size()) +
                             ", operator has " + std::to_string(rho.dim()));
    }
    Vector n = psi / psi.norm();
    cplx f = n.dot(rho.matrix() * n);  // dot conjugates the left argument
    return std::clamp(f.real(), 0.0, 1.0);
}

namespace qubit {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const cplx kI{0.0, 1.0};
}  // namespace

Jones h() { return Jones(1.0, 0.0); }
Jones v() { return Jones(0.0, 1.0); }
Jones plus() { return Jones(kInvSqrt2, kInvSqrt2); }
Jones minus() { return Jones(kInvSqrt2, -kInvSqrt2); }
Jones right() { return Jones(kInvSqrt2, kI * kInvSqrt2); }
Jones left() { return Jones(kInvSqrt2, -kI * kInvSqrt2); }

Jones orthogonal(const Jones &j) { return Jones(-std::conj(j(1)), std::conj(j(0))); }

Jones bloch(double theta, double phi) {
    return Jones(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi));
}

std::array<Jones, 6> axial_states() { return {h(), v(), plus(), minus(), right(), left()}; }

Jones from_label(const std::string &label) {
    if (label == "H" || label == "h") return h();
    if (label == "V" || label == "v") return v();
    if (label == "D" || label == "+" || label == "plus") return plus();
    if (label == "A" || label == "-" || label == "minus") return minus();
    if (label == "R" || label == "right") return right();
    if (label == "L" || label == "left") return left();
    throw std::invalid_argument("unknown polarization label '" + label + "'");
}

Mat2 pauli(int k) {
    Mat2 m;
    switch (k) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -kI, kI, 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw std::out_of_range("pauli index must be 0..3");
    }
    return m;
}

Vector kron(const Vector &a, const Vector &b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); i++) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Vector bell(int index) {
    Vector out = Vector::Zero(4);
    switch (index) {
        case 0: out(0) = kInvSqrt2; out(3) = kInvSqrt2; break;
        case 1: out(0) = kInvSqrt2; out(3) = -kInvSqrt2; break;
        case 2: out(1) = kInvSqrt2; out(2) = kInvSqrt2; break;
        case 3: out(1) = kInvSqrt2; out(2) = -kInvSqrt2; break;
        default: throw std::out_of_range("bell index must be 0..3");
    }
    return out;
}

Vector phi_plus() { return bell(0); }
Vector phi_minus() { return bell(1); }
Vector psi_plus() { return bell(2); }
Vector psi_minus() { return bell(3); }

bool equal_up_to_phase(const Vector &a, const Vector &b, double tol) {
    if (a.size() != b.size()) {
        return false;
    }
    cplx overlap = a.dot(b);
    if (std::abs(overlap) < 1e-300) {
        return a.norm() < tol && b.norm() < tol;
    }
    cplx phase = overlap / std::abs(overlap);
    return (a * phase - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace qubit

}  // namespace cqt
