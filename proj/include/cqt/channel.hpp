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

#ifndef CQT_CHANNEL_HPP
#define CQT_CHANNEL_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cqt/density.hpp"
#include "cqt/optics.hpp"

namespace cqt {

// Three-qubit registers are ordered (mode 1, mode 2, mode 3); qubit 0 is the
// most significant bit. Mode 3 is the controller unless roles say otherwise.

/// (|HHH> + |VVV>)/sqrt2
Vector ghz1();
/// (|HHV> + |VVH>)/sqrt2
Vector ghz2();
/// (1/2)(|HH> +- |VV>) (x) (+-|H> + |V>), sign = +1 or -1.
Vector chi(int sign);

struct ChannelSpec {
    enum class Kind { GHZMixture, Werner, ExplicitDensity };

    Kind kind = Kind::GHZMixture;
    double p = 0.0;
    double q = 1.0;
    std::optional<DensityOperator> density;

    static ChannelSpec ghz_mixture(double p);
    static ChannelSpec werner(double q);
    static ChannelSpec explicit_density(DensityOperator rho);
};

/// (1-p)|G1><G1| + p|G2><G2|, q|G1><G1| + (1-q) I/8, or the given 8x8 operator.
DensityOperator make_channel(const ChannelSpec &spec);

struct ConditionalChannel {
    std::string outcome;
    double probability = 0.0;
    DensityOperator two_qubit_state;  // qubits (mode 1, mode 2)
};

/// Projects the controller qubit onto `outcome` and returns the renormalized
/// state of the other two qubits. Throws PostSelectionError when the outcome
/// probability is below 1e-14.
ConditionalChannel condition_on_controller(const DensityOperator &channel, const Jones &outcome,
                                           std::string label = {}, int controller_qubit = 2);

/// Both outcomes of a controller measurement in `basis`. Outcomes that never
/// occur are omitted.
std::vector<ConditionalChannel> condition_on_controller(const DensityOperator &channel, const PolarizationBasis &basis,
                                                        int controller_qubit = 2);

enum class Strategy { WithFeedforward, WithoutControllerInfo };

/// Haar-averaged teleportation fidelity with a full Bell measurement and
/// Pauli-frame corrections. With feed-forward each controller branch gets its
/// own best frame; without, one frame is fixed for all branches. Uses
/// F = (2 F_e + 1) / 3 with F_e the (branch-averaged) best Bell-state overlap.
double avg_teleport_fidelity(std::span<const ConditionalChannel> branches, Strategy strategy);
double avg_teleport_fidelity(const DensityOperator &two_qubit_channel, Strategy strategy);

/// Same protocol and frame choice as avg_teleport_fidelity, evaluated for one
/// input state instead of the Haar average.
double single_state_teleport_fidelity(std::span<const ConditionalChannel> branches, const Jones &input,
                                      Strategy strategy);

/// (P_k (x) I)|psi->, the state Alice's Bell measurement post-selects.
Vector alice_bell_state(int k);

/// Which register qubit plays which role.
struct QubitRoles {
    int sender = 0;
    int receiver = 1;
    int controller = 2;
};

struct TeleportOutput {
    double probability = 0.0;
    DensityOperator receiver_state;  // before any correction
};

/// Runs the teleportation step on a three-qubit channel: the input qubit and
/// the sender's qubit are projected onto alice_bell_state(bell_k), the
/// controller's qubit onto `controller_outcome` (traced out when nullopt).
TeleportOutput teleport_output(const DensityOperator &channel, const Jones &input,
                               const std::optional<Jones> &controller_outcome, int bell_k = 0,
                               QubitRoles roles = {});

/// Unitary that returns the receiver's qubit to the input state for a pure
/// channel vector. For GHZ-type channels it is a Pauli matrix.
Mat2 frame_correction(const Vector &pure_channel, const std::optional<Jones> &controller_outcome, int bell_k = 0,
                      QubitRoles roles = {});

/// Index 0..3 of the Pauli matrix equal to `u` up to phase, or -1.
int pauli_index(const Mat2 &u, double tol = 1e-10);

struct WernerRow {
    double q = 0.0;
    double f_allowed = 0.0;       // Haar average, controller outcome fed forward
    double f_denied = 0.0;        // Haar average after an H/V controller measurement
    double f_allowed_plus = 0.0;  // single input |+>
    double f_denied_plus = 0.0;
};

std::vector<WernerRow> werner_scan(std::span<const double> q_grid);

/// q where f_allowed crosses `bound` (2/3 by default), found by bisection.
double werner_threshold(double bound = 2.0 / 3.0);

inline constexpr double kClassicalLimit = 2.0 / 3.0;

enum class Knowledge { Shared, Withheld };

/// Alice and Bob share |phi+> or |phi-> with probability 1/2 each; only the
/// controller knows which. With an input, the single-state fidelity; without,
/// the Haar average.
double classical_control_baseline(Knowledge knowledge, const std::optional<Jones> &input = std::nullopt);

}  // namespace cqt

#endif
