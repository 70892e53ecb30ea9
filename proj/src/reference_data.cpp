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

#include "cqt/reference_data.hpp"

namespace cqt {

std::vector<MeasuredFidelity> measured_fidelities() {
    return {
        {"ref", "allowed", 0.788, 0.047, kWeightReference, 0.831, 0.049},
        {"p=0", "allowed", 0.624, 0.016, kWeightAllowed, 0.779, 0.081},
        {"p=0", "denied", 0.550, 0.014, kWeightDenied, 0.572, 0.050},
        {"p=1", "allowed", 0.647, 0.019, kWeightAllowed, 0.830, 0.075},
        {"p=1", "denied", 0.512, 0.009, kWeightDenied, 0.518, 0.067},
        {"p=1/2", "allowed", 0.635, 0.012, kWeightAllowed, 0.802, 0.057},
        {"p=1/2", "denied", 0.535, 0.009, kWeightDenied, 0.551, 0.050},
    };
}

}  // namespace cqt
