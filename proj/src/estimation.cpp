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

#include <algorithm>
#include <cmath>
#include <random>

#include "cqt/estimation.hpp"

namespace cqt {

namespace {

// Independent stream per resample so results do not depend on ordering.
std::mt19937_64 resample_rng(uint64_t seed, int index) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(index)};
    return std::mt19937_64(seq);
}

double poisson(std::mt19937_64 &rng, double mean) {
    if (mean <= 0.0) {
        return 0.0;
    }
    return static_cast<double>(std::poisson_distribution<long long>(mean)(rng));
}

void check_resamples(int n) {
    if (n < 100) {
        throw std::invalid_argument("at least 100 resamples are required");
    }
}

FidelityEstimate summarize(const std::vector<double> &values) {
    if (values.empty()) {
        throw std::domain_error("no valid resamples");
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    var = values.size() > 1 ? var / static_cast<double>(values.size() - 1) : 0.0;
    return {mean, std::sqrt(var), static_cast<int>(values.size())};
}

}  // namespace

double fidelity_from_counts(double f_parallel, double f_perp) {
    if (f_parallel < 0.0 || f_perp < 0.0) {
        throw std::domain_error("coincidence rates must be non-negative");
    }
    if (f_parallel + f_perp <= 0.0) {
        throw std::domain_error("both coincidence rates are zero");
    }
    return f_parallel / (f_parallel + f_perp);
}

void CorrectionParams::validate() const {
    if (!(w >= 0.0 && w < 1.0)) {
        throw std::domain_error("background weight must satisfy 0 <= w < 1");
    }
}

CorrectionResult correct_for_background(const DensityOperator &raw, CorrectionParams params) {
    params.validate();
    const Eigen::Index d = raw.dim();
    Matrix m = (raw.matrix() - params.w * Matrix::Identity(d, d) / static_cast<double>(d)) / (1.0 - params.w);
    m = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    CorrectionResult out;
    out.min_eigenvalue = es.eigenvalues().minCoeff();
    if (out.min_eigenvalue < kPsdHardLimit) {
        throw std::domain_error("background subtraction leaves a non-physical state (min eigenvalue " +
                                std::to_string(out.min_eigenvalue) + ")");
    }
    if (out.min_eigenvalue < 0.0) {
        Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
        m = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
        // Dips within the slack are rounding noise and not reported.
        out.clipped = out.min_eigenvalue < -kPsdSlack;
    }
    out.rho = DensityOperator(m);
    return out;
}

double corrected_fidelity(double f_raw, double w) {
    CorrectionParams{w}.validate();
    return (f_raw - w / 2.0) / (1.0 - w);
}

FidelityEstimate poisson_uncertainty(double n_parallel, double n_perp, int n_resamples, uint64_t seed, double w) {
    check_resamples(n_resamples);
    CorrectionParams{w}.validate();
    if (n_parallel < 0.0 || n_perp < 0.0) {
        throw std::domain_error("counts must be non-negative");
    }
    if (n_parallel + n_perp <= 0.0) {
        throw std::domain_error("all counts are zero");
    }
    std::vector<double> values;
    values.reserve(static_cast<size_t>(n_resamples));
    for (int i = 0; i < n_resamples; i++) {
        auto rng = resample_rng(seed, i);
        double a = poisson(rng, n_parallel);
        double b = poisson(rng, n_perp);
        if (a + b <= 0.0) {
            continue;
        }
        double f = a / (a + b);
        if (w > 0.0) {
            f = std::clamp(corrected_fidelity(f, w), 0.0, 1.0);
        }
        values.push_back(f);
    }
    return summarize(values);
}

FidelityEstimate poisson_uncertainty(const ProjectionCounts &counts, const Jones &target, int n_resamples,
                                     uint64_t seed, double w) {
    check_resamples(n_resamples);
    CorrectionParams{w}.validate();
    if (counts.total() <= 0.0) {
        throw std::domain_error("all counts are zero");
    }
    std::vector<double> values;
    values.reserve(static_cast<size_t>(n_resamples));
    MlOptions opts;
    opts.max_iterations = 20000;
    for (int i = 0; i < n_resamples; i++) {
        auto rng = resample_rng(seed, i);
        ProjectionCounts r = counts;
        for (auto &s : r.settings) {
            s.count = poisson(rng, s.count);
        }
        if (r.total() <= 0.0) {
            continue;
        }
        DensityOperator rho = ml_reconstruct(r, opts).rho;
        if (w > 0.0) {
            try {
                rho = correct_for_background(rho, {w}).rho;
            } catch (const std::domain_error &) {
                continue;
            }
        }
        values.push_back(fidelity(rho, target));
    }
    return summarize(values);
}

}  // namespace cqt
