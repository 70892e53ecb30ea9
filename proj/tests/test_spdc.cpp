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

#include "cqt/spdc.hpp"

using namespace cqt;

namespace {

cplx amp(const PureState &s, std::initializer_list<std::pair<ModeIndex, int>> occ) {
    return s.amplitude(FockBasisState(occ));
}

TEST(TwoModeSpdc, ZeroCouplingIsVacuum) {
    PureState s = two_mode_spdc(0.0, 2);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.terms().begin()->first.total(), 0);
}

TEST(TwoModeSpdc, AmplitudeRatios) {
    PureState s = two_mode_spdc(0.1, 2);
    cplx a0 = amp(s, {});
    cplx a1 = amp(s, {{mode_h(1), 1}, {mode_h(2), 1}});
    cplx a2 = amp(s, {{mode_h(1), 2}, {mode_h(2), 2}});
    EXPECT_NEAR(std::abs(a1 / a0 - 0.1), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(a2 / a0 - 0.01), 0.0, 1e-14);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
}

TEST(TwoModeSpdc, EntangledSinglePair) {
    PureState s = two_mode_spdc(0.1, 1, PairPolarization::entangled_phi_plus());
    const double r = 1.0 / std::sqrt(2.0);
    cplx a0 = amp(s, {});
    EXPECT_NEAR(std::abs(amp(s, {{mode_h(1), 1}, {mode_h(2), 1}}) / a0 - 0.1 * r), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(amp(s, {{mode_v(1), 1}, {mode_v(2), 1}}) / a0 - cplx(0, -0.1 * r)), 0.0, 1e-14);
}

// Hand expansion of (P^dagger)^2 / 2 on vacuum with P^dagger = (a1H a2H - i a1V a2V)/sqrt2:
// 1/2 |2H,2H> - i/2 |1H1V,1H1V> - 1/2 |2V,2V>, norm^2 = 3/4.
TEST(FourModeSource, DoublePairCoefficients) {
    SourceParams p;
    p.kappa_backward = 0.0;
    auto terms = source_terms(p);
    const SourceTerm *t2200 = nullptr;
    for (const auto &t : terms) {
        if (t.label() == "2200") {
            t2200 = &t;
        }
    }
    ASSERT_NE(t2200, nullptr);
    const double n = std::sqrt(0.75);
    const PureState &s = t2200->state;
    EXPECT_EQ(s.size(), 3u);
    EXPECT_NEAR(std::abs(amp(s, {{mode_h(1), 2}, {mode_h(2), 2}}) - 0.5 / n), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(amp(s, {{mode_h(1), 1}, {mode_v(1), 1}, {mode_h(2), 1}, {mode_v(2), 1}}) - cplx(0, -0.5 / n)),
                0.0, 1e-14);
    EXPECT_NEAR(std::abs(amp(s, {{mode_v(1), 2}, {mode_v(2), 2}}) + 0.5 / n), 0.0, 1e-14);
}

TEST(FourModeSource, TermSetAtSecondOrder) {
    auto terms = source_terms(SourceParams{});
    std::set<std::string> labels;
    for (const auto &t : terms) {
        labels.insert(t.label());
    }
    EXPECT_EQ(labels, (std::set<std::string>{"0000", "0011", "1100", "1111", "2200", "0022"}));
    double total = 0.0;
    for (const auto &t : terms) {
        total += t.weight;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(FourModeSource, UniformCouplingWeights) {
    const double k = 0.1;
    SourceParams p;
    p.kappa_forward = k;
    p.kappa_backward = k;
    std::map<std::string, double> w;
    for (const auto &t : source_terms(p)) {
        w[t.label()] = t.weight;
    }
    EXPECT_NEAR(w["1100"] / w["0000"], k * k, 1e-14);
    EXPECT_NEAR(w["0011"] / w["0000"], k * k, 1e-14);
    EXPECT_NEAR(w["1111"] / w["0000"], std::pow(k, 4), 1e-16);
    EXPECT_NEAR(w["2200"] / w["0000"], 0.75 * std::pow(k, 4), 1e-16);
    EXPECT_NEAR(w["0022"] / w["0000"], std::pow(k, 4), 1e-16);
}

TEST(FourModeSource, NoBackwardPump) {
    SourceParams p;
    p.kappa_backward = 0.0;
    std::set<std::string> labels;
    for (const auto &t : source_terms(p)) {
        labels.insert(t.label());
    }
    EXPECT_EQ(labels, (std::set<std::string>{"0000", "1100", "2200"}));
}

TEST(FourModeSource, Validation) {
    SourceParams p;
    p.kappa_forward = 0.6;
    EXPECT_THROW(p.validate(), std::domain_error);
    p = SourceParams{};
    p.truncation_order = 0;
    EXPECT_THROW(p.validate(), std::domain_error);
}

TEST(FourModeSource, CoincidenceTermsAreTheFourPhotonOnes) {
    auto terms = coincidence_terms(SourceParams{});
    ASSERT_EQ(terms.size(), 3u);
    for (const auto &t : terms) {
        for (const auto &[b, a] : t.state.terms()) {
            EXPECT_EQ(b.total(), 4);
        }
    }
}

TEST(IdealSingles, IsPhiPlusWithHorizontalPair) {
    PureState s = ideal_singles();
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(amp(s, {{mode_h(1), 1}, {mode_h(2), 1}, {mode_h(3), 1}, {mode_h(4), 1}}) - r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(amp(s, {{mode_v(1), 1}, {mode_v(2), 1}, {mode_h(3), 1}, {mode_h(4), 1}}) - cplx(0, -r)), 0.0,
                1e-15);
}

}  // namespace
