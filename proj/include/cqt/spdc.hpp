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

#ifndef CQT_SPDC_HPP
#define CQT_SPDC_HPP

#include <string>
#include <vector>

#include "cqt/fock.hpp"

namespace cqt {

/// Polarization structure of one down-converted pair: the pair creation
/// operator is sum_{p,q} amplitudes(p, q) a†_{signal,p} a†_{idler,q}.
struct PairPolarization {
    enum class Kind { EntangledPhiPlus, ProductHH, Custom };

    Kind kind = Kind::ProductHH;
    Mat2 amplitudes = Mat2::Zero();

    /// (|HH> - i|VV>)/sqrt2
    static PairPolarization entangled_phi_plus();
    static PairPolarization product_hh();
    /// Product pair with the given signal and idler Jones vectors.
    static PairPolarization custom(const Jones &signal, const Jones &idler);

    std::string str() const;
};

struct SourceParams {
    cplx kappa_forward{0.1, 0.0};
    cplx kappa_backward{0.1, 0.0};
    /// Highest total power of kappa kept in the four-mode state.
    int truncation_order = 2;
    PairPolarization forward_pair = PairPolarization::entangled_phi_plus();
    PairPolarization backward_pair = PairPolarization::product_hh();

    /// Throws std::domain_error on |kappa| >= 0.5 or truncation_order < 1.
    void validate() const;
    double ratio() const;  // |kappa_backward / kappa_forward|
};

/// Applies the pair creation operator once (bosonic sqrt(n+1) factors included).
PureState apply_pair_creation(const PureState &state, const PairPolarization &pair, int signal, int idler);

/// sum_{n <= order} kappa^n (P†)^n / n! |0>, normalized. For a single
/// polarization this is |00> + kappa|11> + kappa^2|22> + ...
PureState two_mode_spdc(cplx kappa, int truncation_order, const PairPolarization &pair = PairPolarization::product_hh(),
                        int signal = 1, int idler = 2);

/// Component of the four-mode state with a fixed number of forward (modes 1,2)
/// and backward (modes 3,4) pairs.
struct SourceTerm {
    int forward_pairs = 0;
    int backward_pairs = 0;
    /// Share of the total norm carried by this component.
    double weight = 0.0;
    /// The component, renormalized.
    PureState state;

    /// Occupation label such as "2200".
    std::string label() const;
};

/// Forward pair in modes 1,2 and backward pair in modes 3,4, all components
/// with forward+backward pairs <= truncation_order, normalized.
PureState four_mode_source(const SourceParams &params);

/// The non-vanishing components of four_mode_source, each renormalized.
std::vector<SourceTerm> source_terms(const SourceParams &params);

/// The components that can fire a four-fold coincidence: 1111, 2200, 0022.
std::vector<SourceTerm> coincidence_terms(const SourceParams &params);

/// |Phi+_12> (x) |H_3 H_4>: one photon per mode with no higher-order terms.
PureState ideal_singles();

}  // namespace cqt

#endif
