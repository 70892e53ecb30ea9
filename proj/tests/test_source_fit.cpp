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

#include <gtest/gtest.h>

#include <cmath>

#include "cqt/reference_data.hpp"
#include "cqt/source_fit.hpp"

using namespace cqt;

namespace {

ProtocolConfig config_for(const std::string &name) {
    for (const auto &t : default_fit_targets()) {
        if (t.name == name) {
            return t.config;
        }
    }
    throw std::logic_error("no target " + name);
}

std::vector<std::string> target_names() {
    std::vector<std::string> out;
    for (const auto &t : default_fit_targets()) {
        out.push_back(t.name);
    }
    return out;
}

TEST(ParamsForRatio, LargerStrengthAtScale) {
    SourceParams a = params_for_ratio(0.5, 0.1);
    EXPECT_NEAR(std::abs(a.kappa_forward), 0.1, 1e-15);
    EXPECT_NEAR(a.ratio(), 0.5, 1e-12);
    SourceParams b = params_for_ratio(4.0, 0.1);
    EXPECT_NEAR(std::abs(b.kappa_backward), 0.1, 1e-15);
    EXPECT_NEAR(b.ratio(), 4.0, 1e-12);
}

TEST(HeraldedFraction, DependsOnlyOnRatio) {
    for (const auto &name : target_names()) {
        ProtocolConfig c = config_for(name);
        for (double r : {0.3, 1.0, 2.5}) {
            HeraldedFraction lo = heralded_fraction(params_for_ratio(r, 0.01), c);
            HeraldedFraction hi = heralded_fraction(params_for_ratio(r, 0.2), c);
            EXPECT_NEAR(lo.undesired, hi.undesired, 1e-12) << name << " " << r;
            EXPECT_NEAR(lo.desired + lo.undesired, 1.0, 1e-12);
        }
    }
}

TEST(HeraldedFraction, VanishingBackwardPumpLeavesOnlyDoublePairs) {
    for (const auto &name : target_names()) {
        HeraldedFraction f = heralded_fraction(params_for_ratio(1e-4), config_for(name));
        EXPECT_GT(f.undesired, 0.999) << name;
    }
}

// Each double-pair term's share moves monotonically with the ratio.
TEST(HeraldedFraction, TermSharesMonotoneInRatio) {
    for (const auto &name : target_names()) {
        ProtocolConfig c = config_for(name);
        double prev_forward = 2.0, prev_backward = -1.0;
        for (double lg = -2.0; lg <= 2.0; lg += 0.25) {
            c.source = params_for_ratio(std::pow(10.0, lg));
            CountRecord rec = run_counts(c);
            auto share = [&](const char *k) {
                const TermCounts &t = rec.breakdown.at(k);
                return t.weight * (t.f_parallel + t.f_perp) / rec.success_probability;
            };
            EXPECT_LE(share("2200"), prev_forward + 1e-12) << name << " " << lg;
            EXPECT_GE(share("0022"), prev_backward - 1e-12) << name << " " << lg;
            prev_forward = share("2200");
            prev_backward = share("0022");
        }
    }
}

TEST(HeraldedFraction, ToyConfigHasNoUndesiredClicks) {
    ProtocolConfig c;
    c.variant = ChannelVariant::UncontrolledReference;
    c.action = CharlieAction::None;
    c.analyzer = BobAnalyzer::along(qubit::h());
    SourceParams p;
    p.forward_pair = PairPolarization::product_hh();
    HeraldedFraction f = heralded_fraction(p, c);
    EXPECT_NEAR(f.undesired, 0.0, 1e-14);

    FitOptions opts;
    opts.base = p;
    std::vector<FitTarget> toy{{"toy", c, 0.0}};
    FitResult fit = fit_ratio(toy, opts);
    EXPECT_TRUE(fit.unconstrained);
}

TEST(FitRatio, RoundTrip) {
    std::vector<FitTarget> targets = default_fit_targets(kPbsReflectionH);
    for (auto &t : targets) {
        t.target = heralded_fraction(params_for_ratio(0.8), t.config).undesired;
    }
    FitResult fit = fit_ratio(targets);
    EXPECT_TRUE(fit.converged);
    EXPECT_FALSE(fit.unconstrained);
    EXPECT_NEAR(fit.ratio, 0.8, 1e-3);
    EXPECT_LT(fit.sse, 1e-10);
}

TEST(FitRatio, PublishedTargetsGiveStoredRatio) {
    auto targets = default_fit_targets(kPbsReflectionH, kWeightReference, kWeightAllowed, kWeightDenied);
    FitResult fit = fit_ratio(targets);
    EXPECT_TRUE(fit.converged);
    EXPECT_NEAR(fit.ratio, kFittedRatio, 1e-3);
    ASSERT_EQ(fit.rows.size(), 3u);
    double sse = 0.0;
    for (const auto &r : fit.rows) {
        EXPECT_NEAR(r.residual, r.achieved - r.target, 1e-15);
        sse += r.residual * r.residual;
    }
    EXPECT_NEAR(sse, fit.sse, 1e-12);
}

}  // namespace
