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

#ifndef CQT_REFERENCE_DATA_HPP
#define CQT_REFERENCE_DATA_HPP

#include <string>
#include <vector>

namespace cqt {

/// One published channel/scenario row. Fidelities and weights are fractions.
struct MeasuredFidelity {
    std::string channel;   // "ref", "p=0", "p=1", "p=1/2"
    std::string scenario;  // "allowed" or "denied"
    double raw = 0.0;
    double raw_sigma = 0.0;
    double background_weight = 0.0;
    double corrected = 0.0;
    double corrected_sigma = 0.0;
};

std::vector<MeasuredFidelity> measured_fidelities();

inline constexpr double kWeightReference = 0.130;
inline constexpr double kWeightAllowed = 0.554;
inline constexpr double kWeightDenied = 0.301;
inline constexpr double kPbsReflectionH = 0.05;

}  // namespace cqt

#endif
