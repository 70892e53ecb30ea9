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

#ifndef CQT_ESTIMATION_HPP
#define CQT_ESTIMATION_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqt/density.hpp"

namespace cqt {

struct CsvError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// f_par / (f_par + f_perp). Throws std::domain_error when both are zero.
double fidelity_from_counts(double f_parallel, double f_perp);

struct ProjectionSetting {
    std::string label;
    Jones projector;  // normalized
    double count = 0.0;
};

struct ProjectionCounts {
    std::vector<ProjectionSetting> settings;
    std::optional<double> total_exposure;

    double total() const;
    /// Rank of the projector span over 2x2 Hermitian matrices (4 = complete).
    int informational_rank() const;
};

/// Axis labels (H V D A R L + - plus minus) or "jones:are;aim;bre;bim".
Jones parse_projector(const std::string &spec);

/// Columns: label, projector, count. Lines starting with '#' are skipped,
/// as is a header row whose count column is literally "count".
ProjectionCounts parse_counts_csv(std::istream &in);

/// Expected (noiseless) counts for `rho` under each projector.
ProjectionCounts synthesize_counts(const DensityOperator &rho, const std::vector<Jones> &projectors,
                                   double counts_per_setting, const std::vector<std::string> &labels = {});

ProjectionCounts axial_counts(const DensityOperator &rho, double counts_per_setting);

/// Multinomial log-likelihood per count, with the probabilities normalized
/// over the settings.
double log_likelihood(const ProjectionCounts &counts, const DensityOperator &rho);

struct MlOptions {
    double relative_tolerance = 1e-12;
    int max_iterations = 100000;
};

struct MlResult {
    DensityOperator rho;
    int iterations = 0;
    bool converged = false;
    std::vector<double> likelihood_trace;
};

MlResult ml_reconstruct(const ProjectionCounts &counts, const MlOptions &options = {});

struct CorrectionParams {
    double w = 0.0;

    void validate() const;  // 0 <= w < 1
};

struct CorrectionResult {
    DensityOperator rho;
    bool clipped = false;
    double min_eigenvalue = 0.0;  // of (raw - w I/2)/(1 - w) before clipping
};

inline constexpr double kPsdSlack = 1e-9;
inline constexpr double kPsdHardLimit = -1e-3;

/// Subtracts a white background of weight w and renormalizes. Small negative
/// eigenvalues are clipped and flagged; below kPsdHardLimit it throws.
CorrectionResult correct_for_background(const DensityOperator &raw, CorrectionParams params);

/// Fidelity map induced by correct_for_background on an unclipped state.
double corrected_fidelity(double f_raw, double w);

struct FidelityEstimate {
    double value = 0.0;
    double uncertainty = 0.0;
    int resamples_used = 0;
};

inline constexpr int kDefaultResamples = 10000;

/// Resamples both counts from Poisson laws and recomputes the fidelity,
/// optionally followed by the background correction (clamped to [0, 1]).
FidelityEstimate poisson_uncertainty(double n_parallel, double n_perp, int n_resamples, uint64_t seed,
                                     double w = 0.0);

/// Same for tomography: each resample is reconstructed and scored against
/// `target`, with the background correction when w > 0.
FidelityEstimate poisson_uncertainty(const ProjectionCounts &counts, const Jones &target, int n_resamples,
                                     uint64_t seed, double w = 0.0);

}  // namespace cqt

#endif
