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

#ifndef CQT_SOURCE_FIT_HPP
#define CQT_SOURCE_FIT_HPP

#include <span>
#include <string>
#include <vector>

#include "cqt/protocol.hpp"
#include "cqt/spdc.hpp"

namespace cqt {

/// Best single ratio for the default targets with eps = 0.05 (see fit_ratio).
inline constexpr double kFittedRatio = 0.8987;

struct HeraldedFraction {
    double desired = 0.0;
    double undesired = 0.0;
};

/// Four-fold shares of the |1111> term and of the double-pair terms when
/// `config` is driven by `params`.
HeraldedFraction heralded_fraction(const SourceParams &params, const ProtocolConfig &config);

/// Source with |kappa_b / kappa_f| = ratio and the larger strength at `scale`.
SourceParams params_for_ratio(double ratio, double scale = 0.1, const SourceParams &base = {});

struct FitTarget {
    std::string name;
    ProtocolConfig config;
    double target = 0.0;
};

/// Reference, G1 allow and G1 deny with a |+> input and PBS imperfection eps.
std::vector<FitTarget> default_fit_targets(double eps = 0.05, double ref = 0.130, double allow = 0.554,
                                           double deny = 0.301);

struct FitRow {
    std::string name;
    double target = 0.0;
    double achieved = 0.0;
    double residual = 0.0;  // achieved - target
};

struct FitResult {
    double ratio = 1.0;
    double sse = 0.0;
    bool converged = false;
    /// Objective flat over the whole scan; `ratio` is then meaningless.
    bool unconstrained = false;
    std::vector<FitRow> rows;
};

struct FitOptions {
    double log10_min = -3.0;
    double log10_max = 3.0;
    int grid_points = 241;
    SourceParams base;  // pair polarizations and truncation order
};

FitResult fit_ratio(std::span<const FitTarget> targets, const FitOptions &options = {});

}  // namespace cqt

#endif
