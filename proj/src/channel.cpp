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

#include "cqt/channel.hpp"

#include <cmath>

namespace cqt {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

int bit(Eigen::Index index, int qubit, int num_qubits) { return static_cast<int>((index >> (num_qubits - 1 - qubit)) & 1); }

void check_probability(double x, const char *name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error(std::string(name) + " must lie in [0, 1]");
    }
}

// Maps (sender, input) Bell projection and an optional controller projection
// onto the receiver qubit. Register: channel qubits 0..2, input qubit 3.
Matrix receiver_map(int bell_k, const Jones &controller, QubitRoles roles) {
    const Vector bell = alice_bell_state(bell_k);
    Matrix m = Matrix::Zero(2, 16);
    for (Eigen::Index i = 0; i < 16; i++) {
        int bs = bit(i, roles.sender, 4);
        int bin = bit(i, 3, 4);
        int bc = bit(i, roles.controller, 4);
        int br = bit(i, roles.receiver, 4);
        m(br, i) = std::conj(bell(2 * bs + bin)) * std::conj(controller(bc));
    }
    return m;
}

// Two-qubit channel (sender 0, receiver 1) with the input as qubit 2 and a
// Bell projection over (sender, input) indexed by `m` in qubit::bell order.
Matrix two_qubit_receiver_map(int m) {
    const Vector bell = qubit::bell(m);
    Matrix out = Matrix::Zero(2, 8);
    for (Eigen::Index i = 0; i < 8; i++) {
        int bs = bit(i, 0, 3);
        int br = bit(i, 1, 3);
        int bin = bit(i, 2, 3);
        out(br, i) = std::conj(bell(2 * bs + bin));
    }
    return out;
}

// Inverse (up to scale) of the linear map input -> receiver state.
Mat2 unitary_inverse(const Mat2 &v) {
    double s = std::sqrt(std::abs(v.determinant()));
    if (s < 1e-14) {
        throw std::runtime_error("teleportation map is singular; no frame correction exists");
    }
    Mat2 u = v.adjoint() / s;
    if ((u * u.adjoint() - Mat2::Identity()).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::runtime_error("teleportation map is not proportional to a unitary");
    }
    return u;
}

// Correction for Bell outcome m when the channel is the Bell state k.
Mat2 correction_for(int m, int k) {
    Matrix map = two_qubit_receiver_map(m);
    Mat2 v;
    for (int j = 0; j < 2; j++) {
        Vector e = Vector::Zero(2);
        e(j) = 1.0;
        v.col(j) = map * qubit::kron(qubit::bell(k), e);
    }
    return unitary_inverse(v);
}

std::vector<std::array<double, 4>> bell_overlaps(std::span<const ConditionalChannel> branches) {
    std::vector<std::array<double, 4>> out;
    for (const auto &b : branches) {
        if (b.two_qubit_state.num_qubits() != 2) {
            throw DimensionError("teleportation channel must be a two-qubit state");
        }
        std::array<double, 4> ov{};
        for (int k = 0; k < 4; k++) {
            ov[k] = fidelity(b.two_qubit_state, qubit::bell(k));
        }
        out.push_back(ov);
    }
    return out;
}

double total_probability(std::span<const ConditionalChannel> branches) {
    double total = 0.0;
    for (const auto &b : branches) {
        total += b.probability;
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("branches carry no probability");
    }
    return total;
}

// Frame index per branch under the given strategy.
std::vector<int> choose_frames(std::span<const ConditionalChannel> branches, Strategy strategy) {
    auto ov = bell_overlaps(branches);
    std::vector<int> frames(branches.size(), 0);
    if (strategy == Strategy::WithFeedforward) {
        for (size_t b = 0; b < branches.size(); b++) {
            frames[b] = static_cast<int>(std::max_element(ov[b].begin(), ov[b].end()) - ov[b].begin());
        }
        return frames;
    }
    std::array<double, 4> avg{};
    for (size_t b = 0; b < branches.size(); b++) {
        for (int k = 0; k < 4; k++) {
            avg[k] += branches[b].probability * ov[b][k];
        }
    }
    int best = static_cast<int>(std::max_element(avg.begin(), avg.end()) - avg.begin());
    std::fill(frames.begin(), frames.end(), best);
    return frames;
}

}  // namespace

Vector ghz1() {
    Vector g = Vector::Zero(8);
    g(0b000) = kInvSqrt2;
    g(0b111) = kInvSqrt2;
    return g;
}

Vector ghz2() {
    Vector g = Vector::Zero(8);
    g(0b001) = kInvSqrt2;
    g(0b110) = kInvSqrt2;
    return g;
}

Vector chi(int sign) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("chi sign must be +1 or -1");
    }
    Vector pair = Vector::Zero(4);
    pair(0) = 1.0;
    pair(3) = static_cast<double>(sign);
    Vector third(2);
    third << static_cast<double>(sign), 1.0;
    return 0.5 * qubit::kron(pair, third);
}

ChannelSpec ChannelSpec::ghz_mixture(double p) {
    ChannelSpec s;
    s.kind = Kind::GHZMixture;
    s.p = p;
    return s;
}

ChannelSpec ChannelSpec::werner(double q) {
    ChannelSpec s;
    s.kind = Kind::Werner;
    s.q = q;
    return s;
}

ChannelSpec ChannelSpec::explicit_density(DensityOperator rho) {
    ChannelSpec s;
    s.kind = Kind::ExplicitDensity;
    s.density = std::move(rho);
    return s;
}

DensityOperator make_channel(const ChannelSpec &spec) {
    switch (spec.kind) {
        case ChannelSpec::Kind::GHZMixture: {
            check_probability(spec.p, "p");
            Vector g1 = ghz1(), g2 = ghz2();
            return DensityOperator(g1 * g1.adjoint() * (1.0 - spec.p) + g2 * g2.adjoint() * spec.p);
        }
        case ChannelSpec::Kind::Werner: {
            check_probability(spec.q, "q");
            Vector g1 = ghz1();
            return DensityOperator(g1 * g1.adjoint() * spec.q + Matrix::Identity(8, 8) * ((1.0 - spec.q) / 8.0));
        }
        case ChannelSpec::Kind::ExplicitDensity:
            if (!spec.density || spec.density->num_qubits() != 3) {
                throw DimensionError("explicit channel must be a three-qubit density operator");
            }
            return *spec.density;
    }
    throw std::invalid_argument("unknown channel kind");
}

ConditionalChannel condition_on_controller(const DensityOperator &channel, const Jones &outcome, std::string label,
                                           int controller_qubit) {
    if (channel.num_qubits() != 3) {
        throw DimensionError("condition_on_controller expects a three-qubit channel");
    }
    if (controller_qubit < 0 || controller_qubit > 2) {
        throw std::out_of_range("controller qubit must be 0..2");
    }
    Jones o = outcome / outcome.norm();
    Matrix m = Matrix::Zero(4, 8);
    for (Eigen::Index i = 0; i < 8; i++) {
        int row = 0;
        for (int q = 0; q < 3; q++) {
            if (q != controller_qubit) {
                row = (row << 1) | bit(i, q, 3);
            }
        }
        m(row, i) = std::conj(o(bit(i, controller_qubit, 3)));
    }
    Matrix reduced = m * channel.matrix() * m.adjoint();
    double probability = reduced.trace().real();
    if (probability < 1e-14) {
        throw PostSelectionError("controller outcome '" + label + "' never occurs");
    }
    return {std::move(label), probability, DensityOperator(reduced)};
}

std::vector<ConditionalChannel> condition_on_controller(const DensityOperator &channel, const PolarizationBasis &basis,
                                                        int controller_qubit) {
    std::vector<ConditionalChannel> out;
    for (int k = 0; k < 2; k++) {
        try {
            out.push_back(condition_on_controller(channel, basis.vectors[k], basis.labels[k], controller_qubit));
        } catch (const PostSelectionError &) {
        }
    }
    return out;
}

double avg_teleport_fidelity(std::span<const ConditionalChannel> branches, Strategy strategy) {
    const double total = total_probability(branches);
    auto ov = bell_overlaps(branches);
    auto frames = choose_frames(branches, strategy);
    double fe = 0.0;
    for (size_t b = 0; b < branches.size(); b++) {
        fe += branches[b].probability / total * ov[b][frames[b]];
    }
    return (2.0 * fe + 1.0) / 3.0;
}

double avg_teleport_fidelity(const DensityOperator &two_qubit_channel, Strategy strategy) {
    ConditionalChannel only{"", 1.0, two_qubit_channel};
    return avg_teleport_fidelity(std::span<const ConditionalChannel>(&only, 1), strategy);
}

double single_state_teleport_fidelity(std::span<const ConditionalChannel> branches, const Jones &input,
                                      Strategy strategy) {
    const double total = total_probability(branches);
    const Jones psi = input / input.norm();
    const Matrix in = psi * psi.adjoint();
    auto frames = choose_frames(branches, strategy);
    double f = 0.0;
    for (size_t b = 0; b < branches.size(); b++) {
        Matrix joint = qubit::kron(branches[b].two_qubit_state.matrix(), in);
        Mat2 out = Mat2::Zero();
        for (int m = 0; m < 4; m++) {
            Matrix map = two_qubit_receiver_map(m);
            Mat2 c = correction_for(m, frames[b]);
            Mat2 received = map * joint * map.adjoint();
            out += c * received * c.adjoint();
        }
        double fb = (psi.adjoint() * out * psi)(0, 0).real() / out.trace().real();
        f += branches[b].probability / total * fb;
    }
    return f;
}

Vector alice_bell_state(int k) {
    Vector psi_m = qubit::psi_minus();
    Matrix p = qubit::kron(Matrix(qubit::pauli(k)), Matrix(Mat2::Identity()));
    return p * psi_m;
}

TeleportOutput teleport_output(const DensityOperator &channel, const Jones &input,
                               const std::optional<Jones> &controller_outcome, int bell_k, QubitRoles roles) {
    if (channel.num_qubits() != 3) {
        throw DimensionError("teleport_output expects a three-qubit channel");
    }
    const Jones psi = input / input.norm();
    Matrix joint = qubit::kron(channel.matrix(), Matrix(psi * psi.adjoint()));
    Mat2 out = Mat2::Zero();
    if (controller_outcome) {
        Matrix m = receiver_map(bell_k, *controller_outcome / controller_outcome->norm(), roles);
        out = m * joint * m.adjoint();
    } else {
        for (const Jones &o : {qubit::h(), qubit::v()}) {
            Matrix m = receiver_map(bell_k, o, roles);
            out += m * joint * m.adjoint();
        }
    }
    double probability = out.trace().real();
    if (probability < 1e-14) {
        throw PostSelectionError("teleportation branch never occurs");
    }
    return {probability, DensityOperator(Matrix(out))};
}

Mat2 frame_correction(const Vector &pure_channel, const std::optional<Jones> &controller_outcome, int bell_k,
                      QubitRoles roles) {
    if (pure_channel.size() != 8) {
        throw DimensionError("frame_correction expects a three-qubit channel vector");
    }
    if (!controller_outcome) {
        throw std::invalid_argument("frame_correction needs the controller outcome");
    }
    Matrix m = receiver_map(bell_k, *controller_outcome / controller_outcome->norm(), roles);
    Mat2 v;
    for (int j = 0; j < 2; j++) {
        Vector e = Vector::Zero(2);
        e(j) = 1.0;
        v.col(j) = m * qubit::kron(pure_channel, e);
    }
    Mat2 u = unitary_inverse(v);
    int k = pauli_index(u);
    return k >= 0 ? qubit::pauli(k) : u;
}

int pauli_index(const Mat2 &u, double tol) {
    for (int k = 0; k < 4; k++) {
        if (std::abs(std::abs((qubit::pauli(k).adjoint() * u).trace()) - 2.0) < tol) {
            return k;
        }
    }
    return -1;
}

std::vector<WernerRow> werner_scan(std::span<const double> q_grid) {
    std::vector<WernerRow> rows;
    for (double q : q_grid) {
        auto rho = make_channel(ChannelSpec::werner(q));
        auto allowed = condition_on_controller(rho, PolarizationBasis::pm());
        auto denied = condition_on_controller(rho, PolarizationBasis::hv());
        WernerRow row;
        row.q = q;
        row.f_allowed = avg_teleport_fidelity(allowed, Strategy::WithFeedforward);
        row.f_denied = avg_teleport_fidelity(denied, Strategy::WithFeedforward);
        row.f_allowed_plus = single_state_teleport_fidelity(allowed, qubit::plus(), Strategy::WithFeedforward);
        row.f_denied_plus = single_state_teleport_fidelity(denied, qubit::plus(), Strategy::WithFeedforward);
        rows.push_back(row);
    }
    return rows;
}

double werner_threshold(double bound) {
    auto f = [bound](double q) {
        double grid[] = {q};
        return werner_scan(grid).front().f_allowed - bound;
    };
    double lo = 0.0, hi = 1.0;
    if (f(lo) > 0 || f(hi) < 0) {
        throw std::domain_error("bound is not crossed on q in [0, 1]");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15; it++) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double classical_control_baseline(Knowledge knowledge, const std::optional<Jones> &input) {
    std::vector<ConditionalChannel> branches{
        {"phi+", 0.5, DensityOperator::from_pure(qubit::phi_plus())},
        {"phi-", 0.5, DensityOperator::from_pure(qubit::phi_minus())},
    };
    Strategy s = knowledge == Knowledge::Shared ? Strategy::WithFeedforward : Strategy::WithoutControllerInfo;
    return input ? single_state_teleport_fidelity(branches, *input, s) : avg_teleport_fidelity(branches, s);
}

}  // namespace cqt
