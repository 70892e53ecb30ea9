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

#ifndef CQT_PROTOCOL_HPP
#define CQT_PROTOCOL_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cqt/channel.hpp"
#include "cqt/fock.hpp"
#include "cqt/optics.hpp"
#include "cqt/spdc.hpp"

namespace cqt {

enum class ChannelVariant { G1, G2, UncontrolledReference };
enum class CharlieAction { Allow, Deny, None };

std::string to_string(ChannelVariant v);
std::string to_string(CharlieAction a);

// Spatial modes of the setup. Modes 1..3 leave the GHZ stage owned by
// Alice, Bob and Charlie; mode 4 carries the input photon.
inline constexpr int kAliceMode = 1;
inline constexpr int kBobMode = 2;
inline constexpr int kCharlieMode = 3;
inline constexpr int kInputMode = 4;

struct Roles {
    int sender = kAliceMode;
    int receiver = kBobMode;
    int controller = kCharlieMode;

    void validate() const;
    bool is_default() const;
    QubitRoles qubits() const { return {sender - 1, receiver - 1, controller - 1}; }
};

struct InputQubit {
    cplx alpha{1.0 / 1.4142135623730951, 0.0};
    cplx beta{1.0 / 1.4142135623730951, 0.0};

    static InputQubit from_jones(const Jones &j);
    static InputQubit from_label(const std::string &label);
    Jones jones() const { return Jones(alpha, beta); }
    /// Throws std::invalid_argument unless |alpha|^2 + |beta|^2 = 1 within 1e-12.
    void validate() const;
};

struct BobAnalyzer {
    Jones parallel;
    Jones perpendicular;

    static BobAnalyzer along(const Jones &parallel);
    void validate() const;
};

struct ProtocolConfig {
    ChannelVariant variant = ChannelVariant::G1;
    CharlieAction action = CharlieAction::Allow;
    InputQubit input;
    /// nullopt runs the ideal |1111> singles source.
    std::optional<SourceParams> source;
    double pbs_epsilon = 0.0;
    /// nullopt picks the analyzer matched to the ideal channel's "+" branch.
    std::optional<BobAnalyzer> analyzer;
    Roles roles;

    void validate() const;
};

struct TermCounts {
    double weight = 0.0;
    double f_parallel = 0.0;  // four-fold probability of the normalized term
    double f_perp = 0.0;
};

struct CountRecord {
    double f_parallel = 0.0;
    double f_perp = 0.0;
    double success_probability = 0.0;
    std::map<std::string, TermCounts> breakdown;
    std::string settings;

    double fidelity() const;
    /// Share of coincidences from double-pair terms.
    double undesired_fraction() const;
};

struct PauliCorrection {
    int k = 0;

    explicit PauliCorrection(int k = 0);
    Mat2 matrix() const { return qubit::pauli(k); }
};

struct ProtocolResult {
    CountRecord counts;
    /// Receiver's polarization state before any correction, from linear
    /// inversion of the six axial analyzer settings.
    DensityOperator bob_state;
    /// Frame correction expected for the ideal channel and the "+" outcome.
    Mat2 correction;
    /// Four-fold probabilities with the analyzer on H, V, +, -, R, L.
    std::array<double, 6> axial{};
};

/// Linear inversion of axial click probabilities; the Bloch vector is clipped
/// to the unit ball.
DensityOperator state_from_axial(const std::array<double, 6> &axial);

struct GhzPreparation {
    PureState state;
    double success_probability = 0.0;
};

struct WaveplatePair {
    double hwp_before = 0.0;  // on Bob's mode before the PBS
    double hwp_after = 0.0;   // on Bob's output after the PBS
    double phase_mode1 = 0.0;
};

WaveplatePair ghz_waveplates(ChannelVariant v);

/// Optics from the source modes to the three GHZ output modes.
std::vector<OpticalElement> ghz_optics(ChannelVariant variant, double pbs_epsilon);

GhzPreparation prepare_ghz(const PureState &source_state, double pbs_epsilon,
                           ChannelVariant variant = ChannelVariant::G1);

/// Balanced BS on (a, b), then one photon in each output.
Projection singlet_projection(const PureState &state, int a = kAliceMode, int b = kInputMode);

/// Elements of Charlie's station on `mode`. Empty for CharlieAction::None.
std::vector<OpticalElement> charlie_station(CharlieAction action, int mode = kCharlieMode);
/// Polarization Charlie's station effectively projects onto.
std::optional<Jones> charlie_projection(CharlieAction action);

/// Ideal three-qubit channel vector for a variant in qubit order (1, 2, 3).
Vector ideal_channel(ChannelVariant v);

ProtocolResult run_protocol(const ProtocolConfig &config);

/// Four-fold probabilities only, for a fixed analyzer.
CountRecord run_counts(const ProtocolConfig &config);

CountRecord emulate_mixture(const CountRecord &g1, const CountRecord &g2, double p);
ProtocolResult emulate_mixture(const ProtocolResult &g1, const ProtocolResult &g2, double p);

/// Correction for Alice's Bell outcome (Pauli frame applied to psi-) and
/// Charlie's outcome on the ideal channel of `variant`.
Mat2 bob_correction(PauliCorrection bell_outcome, const Jones &charlie_outcome,
                    ChannelVariant variant = ChannelVariant::G1);

struct RoleSwapResult {
    CountRecord counts;
    double fidelity = 0.0;
    double joint_success = 0.0;
    /// Four-fold probability carried by the (2,0)/(0,2) sectors after the PBS.
    double conflicting_probability = 0.0;
};

RoleSwapResult swap_roles(const ProtocolConfig &config);

struct StageTrace {
    std::vector<std::pair<std::string, double>> stages;  // conditional probabilities
    double joint = 0.0;                                  // one-shot post-selection
};

/// Sequential post-selection on the ideal singles source with the analyzer
/// set to the parallel projection.
StageTrace trace_stages(const ProtocolConfig &config);

}  // namespace cqt

#endif
