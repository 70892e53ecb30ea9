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

#ifndef CQT_TESTS_HELPERS_HPP
#define CQT_TESTS_HELPERS_HPP

#include <random>
#include <vector>

#include "cqt/fock.hpp"

namespace cqt::testing {

/// One photon per listed mode, polarization amplitudes from a qubit vector
/// (first mode most significant).
inline PureState from_qubits(const Vector &v, const std::vector<int> &modes) {
    PureState::TermMap t;
    const int n = static_cast<int>(modes.size());
    for (Eigen::Index i = 0; i < v.size(); i++) {
        if (std::abs(v(i)) == 0.0) {
            continue;
        }
        FockBasisState b;
        for (int q = 0; q < n; q++) {
            bool vpol = (i >> (n - 1 - q)) & 1;
            b.add_photon(vpol ? mode_v(modes[q]) : mode_h(modes[q]));
        }
        t[b] += v(i);
    }
    return PureState(std::move(t));
}

inline double max_abs_diff(const Matrix &a, const Matrix &b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Random superposition of up to `photons` photons over modes 1..modes.
inline PureState random_state(std::mt19937_64 &rng, int modes, int photons, int terms) {
    std::uniform_int_distribution<int> mode(1, modes), pol(0, 1), count(0, photons);
    std::normal_distribution<double> g;
    PureState::TermMap t;
    for (int k = 0; k < terms; k++) {
        FockBasisState b;
        int n = count(rng);
        for (int i = 0; i < n; i++) {
            b.add_photon({mode(rng), pol(rng) ? Polarization::V : Polarization::H});
        }
        t[b] += cplx(g(rng), g(rng));
    }
    return PureState(std::move(t)).normalized();
}

}  // namespace cqt::testing

#endif
