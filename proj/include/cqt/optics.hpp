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

#ifndef CQT_OPTICS_HPP
#define CQT_OPTICS_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

#include "cqt/density.hpp"
#include "cqt/fock.hpp"

namespace cqt {

inline constexpr int kMaxSpatialModes = 16;

enum class ElementKind { BalancedBS, PBS, HWP, QWP, Polarizer, PhasePlate };

std::string to_string(ElementKind kind);

// Jones conventions used throughout:
//   HWP(t) = [[cos 2t, sin 2t], [sin 2t, -cos 2t]]
//   QWP(t) = R(t) diag(1, i) R(-t),  R(t) = [[cos t, -sin t], [sin t, cos t]]
//   balanced BS: a -> (c + i d)/sqrt2, b -> (d + i c)/sqrt2
//   PBS: H transmits (a->c, b->d), V reflects (a->d, b->c); an imperfect PBS
//   sends H to the reflected port with amplitude i sqrt(eps).
Mat2 hwp_matrix(double theta);
Mat2 qwp_matrix(double theta);
Mat2 phase_plate_matrix(double phi);

/// One linear-optical component acting on photon creation operators.
///
/// Two-port elements (BalancedBS, PBS) map inputs (a, b) to outputs (c, d);
/// single-mode elements act in place on `inputs[0]`. Output labels may reuse
/// input labels since substitution is simultaneous.
class OpticalElement {
   public:
    struct Target {
        ModeIndex mode;
        cplx coefficient;
    };

    static OpticalElement balanced_bs(int a, int b, int c, int d);
    static OpticalElement pbs(int a, int b, int c, int d, double epsilon = 0.0);
    static OpticalElement hwp(int mode, double theta);
    static OpticalElement qwp(int mode, double theta);
    /// Projective, trace-decreasing: keeps the component along `pass`.
    static OpticalElement polarizer(int mode, const Jones &pass);
    /// Relative phase e^{i phi} on V.
    static OpticalElement phase_plate(int mode, double phi);

    ElementKind kind() const { return kind_; }
    double angle() const { return angle_; }
    double epsilon() const { return epsilon_; }
    double phase() const { return phase_; }
    const Jones &pass() const { return pass_; }
    const std::vector<int> &inputs() const { return inputs_; }
    const std::vector<int> &outputs() const { return outputs_; }
    bool lossless() const { return kind_ != ElementKind::Polarizer; }

    /// Image of a†(mode) for each input mode; modes not listed pass unchanged.
    std::vector<std::pair<ModeIndex, std::vector<Target>>> substitution() const;

    std::string str() const;

   private:
    OpticalElement() = default;
    void validate() const;

    ElementKind kind_ = ElementKind::HWP;
    double angle_ = 0.0;
    double epsilon_ = 0.0;
    double phase_ = 0.0;
    Jones pass_ = Jones(1.0, 0.0);
    std::vector<int> inputs_;
    std::vector<int> outputs_;
};

/// Substitutes every creation operator on the element's input modes and
/// re-expands each Fock term. Multi-photon terms expand multinomially.
PureState apply(const OpticalElement &element, const PureState &state);
PureState apply(std::span<const OpticalElement> elements, PureState state);

/// PBS on the GHZ-preparation ports: photon 2 enters a, photon 3 enters b,
/// outputs c and d keep the labels 2 and 3.
OpticalElement pbs_with_imperfection(double epsilon, int a = 2, int b = 3, int c = 2, int d = 3);

struct PolarizationBasis {
    std::array<std::string, 2> labels;
    std::array<Jones, 2> vectors;

    static PolarizationBasis hv();
    static PolarizationBasis pm();
    static PolarizationBasis rl();
    /// {j, j_perp} labelled "j" and "j_perp".
    static PolarizationBasis from_jones(const Jones &j);
};

struct MeasurementOutcome {
    std::string label;
    Jones vector;
    double probability;
    /// Remaining modes after the detected photon is absorbed, renormalized.
    PureState conditional;
};

/// Projective polarization measurement of the single photon in `mode`.
/// Terms with other than one photon in `mode` are discarded, so probabilities
/// sum to the weight of the one-photon sector.
std::vector<MeasurementOutcome> measure_polarization(const PureState &state, int mode,
                                                     const PolarizationBasis &basis);

/// Waveplate angles (radians) for preparing or analyzing a polarization.
struct WaveplateSetting {
    double hwp = 0.0;
    double qwp = 0.0;
};

/// QWP(qwp) * HWP(hwp) * |H> equals `target` up to a global phase.
WaveplateSetting encoding_waveplates(const Jones &target);
/// HWP(hwp) * QWP(qwp) * `target` equals |H> up to a global phase, so a
/// subsequent H polarizer (or PBS transmission) projects onto `target`.
WaveplateSetting analyzer_waveplates(const Jones &target);

}  // namespace cqt

#endif
