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

#include "cqt/source_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

namespace cqt {

HeraldedFraction heralded_fraction(const SourceParams &params, const ProtocolConfig &config) {
    ProtocolConfig c = config;
    c.source = params;
    double u = run_counts(c).undesired_fraction();
    return {1.0 - u, u};
}

SourceParams params_for_ratio(double ratio, double scale, const SourceParams &base) {
    if (!(ratio > 0.0) || !std::isfinite(ratio)) {
        throw std::domain_error("ratio must be positive and finite");
    }
    SourceParams p = base;
    if (ratio <= 1.0) {
        p.kappa_forward = scale;
        p.kappa_backward = scale * ratio;
    } else {
        p.kappa_forward = scale / ratio;
        p.kappa_backward = scale;
    }
    return p;
}

std::vector<FitTarget> default_fit_targets(double eps, double ref, double allow, double deny) {
    ProtocolConfig base;
    base.input = InputQubit::from_label("+");
    base.pbs_epsilon = eps;
    base.source = SourceParams{};

    ProtocolConfig r = base;
    r.variant = ChannelVariant::UncontrolledReference;
    r.action = CharlieAction::None;
    ProtocolConfig a = base;
    a.action = CharlieAction::Allow;
    ProtocolConfig d = base;
    d.action = CharlieAction::Deny;
    return {{"reference", r, ref}, {"allowed", a, allow}, {"denied", d, deny}};
}

FitResult fit_ratio(std::span<const FitTarget> targets, const FitOptions &options) {
    if (targets.empty()) {
        throw std::invalid_argument("no fit targets");
    }
    if (options.grid_points < 3 || !(options.log10_max > options.log10_min)) {
        throw std::invalid_argument("invalid ratio scan");
    }
    auto achieved = [&](double log_r) {
        std::vector<double> out;
        SourceParams p = params_for_ratio(std::pow(10.0, log_r), 0.1, options.base);
        for (const auto &t : targets) {
            out.push_back(heralded_fraction(p, t.config).undesired);
        }
        return out;
    };
    auto objective = [&](double log_r) {
        auto a = achieved(log_r);
        double s = 0.0;
        for (size_t i = 0; i < a.size(); i++) {
            s += (a[i] - targets[i].target) * (a[i] - targets[i].target);
        }
        return s;
    };

    const int n = options.grid_points;
    const double step = (options.log10_max - options.log10_min) / (n - 1);
    std::vector<double> values(n);
    for (int i = 0; i < n; i++) {
        values[i] = objective(options.log10_min + i * step);
    }
    auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const int best = static_cast<int>(lo_it - values.begin());

    FitResult fit;
    if (*hi_it - *lo_it < 1e-14) {
        fit.unconstrained = true;
        fit.ratio = 1.0;
    } else {
        double a = options.log10_min + std::max(best - 1, 0) * step;
        double b = options.log10_min + std::min(best + 1, n - 1) * step;
        std::uintmax_t max_iter = 200;
        auto [x, fx] = boost::math::tools::brent_find_minima(objective, a, b, std::numeric_limits<double>::digits / 2,
                                                            max_iter);
        if (fx > values[best]) {
            x = options.log10_min + best * step;
        }
        fit.ratio = std::pow(10.0, x);
        fit.converged = max_iter < 200 && best > 0 && best < n - 1;
    }
    auto a = achieved(std::log10(fit.ratio));
    for (size_t i = 0; i < a.size(); i++) {
        fit.rows.push_back({targets[i].name, targets[i].target, a[i], a[i] - targets[i].target});
        fit.sse += fit.rows.back().residual * fit.rows.back().residual;
    }
    return fit;
}

}  // namespace cqt
