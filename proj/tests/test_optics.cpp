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
#include <numbers>

#include "cqt/channel.hpp"
#include "cqt/optics.hpp"
#include "helpers.hpp"

using namespace cqt;
using std::numbers::pi;

namespace {

const double s2 = 1.0 / std::sqrt(2.0);

cplx amp(const PureState &s, std::initializer_list<std::pair<ModeIndex, int>> occ) {
    return s.amplitude(FockBasisState(occ));
}

double coincidence(const PureState &s, int a, int b) {
    return project(s, one_photon_in_each({a, b})).probability;
}

TEST(Waveplates, HalfWaveAtEighthTurnMakesDiagonal) {
    PureState out = cqt::apply(OpticalElement::hwp(1, pi / 8), PureState::single(mode_h(1)));
    EXPECT_NEAR(std::abs(amp(out, {{mode_h(1), 1}}) - s2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(amp(out, {{mode_v(1), 1}}) - s2), 0.0, 1e-15);
}

TEST(Waveplates, QuarterWaveTurnsHIntoR) {
    Jones j = qwp_matrix(-pi / 4) * qubit::h();
    EXPECT_TRUE(qubit::equal_up_to_phase(j, qubit::right(), 1e-14));
}

TEST(Waveplates, HalfWaveIsInvolution) {
    for (double t : {0.0, 0.3, pi / 8, 1.2, -0.7}) {
        EXPECT_LT((hwp_matrix(t) * hwp_matrix(t) - Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-12);
        PureState s = PureState::single_photon(2, cplx(0.6, 0.1), cplx(0.2, -0.7)).normalized();
        std::vector<OpticalElement> twice{OpticalElement::hwp(2, t), OpticalElement::hwp(2, t)};
        EXPECT_NEAR(std::abs(cqt::apply(twice, s).inner(s)), 1.0, 1e-12);
    }
}

TEST(Waveplates, PhasePlateActsOnV) {
    PureState out = cqt::apply(OpticalElement::phase_plate(1, 0.4), PureState::single_photon(1, s2, s2));
    EXPECT_NEAR(std::abs(amp(out, {{mode_v(1), 1}}) - s2 * std::exp(cplx(0, 0.4))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(amp(out, {{mode_h(1), 1}}) - s2), 0.0, 1e-15);
}

TEST(Pbs, IdealRouting) {
    auto pbs = pbs_with_imperfection(0.0);
    PureState h = cqt::apply(pbs, PureState::single(mode_h(2)));
    PureState v = cqt::apply(pbs, PureState::single(mode_v(2)));
    EXPECT_NEAR(std::abs(amp(h, {{mode_h(2), 1}})), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(amp(v, {{mode_v(3), 1}})), 1.0, 1e-15);
}

TEST(Pbs, ImperfectReflection) {
    PureState h = cqt::apply(pbs_with_imperfection(0.05), PureState::single(mode_h(2)));
    EXPECT_NEAR(std::norm(amp(h, {{mode_h(3), 1}})), 0.05, 1e-15);
    EXPECT_NEAR(std::norm(amp(h, {{mode_h(2), 1}})), 0.95, 1e-15);
    PureState full = cqt::apply(pbs_with_imperfection(1.0), PureState::single(mode_h(2)));
    EXPECT_NEAR(std::norm(amp(full, {{mode_h(3), 1}})), 1.0, 1e-15);
    PureState v = cqt::apply(pbs_with_imperfection(0.05), PureState::single(mode_v(2)));
    EXPECT_NEAR(std::norm(amp(v, {{mode_v(3), 1}})), 1.0, 1e-15);
}

TEST(Pbs, ParameterRange) {
    EXPECT_THROW(pbs_with_imperfection(-0.1), std::domain_error);
    EXPECT_THROW(pbs_with_imperfection(1.1), std::domain_error);
}

TEST(Elements, UnknownModesRejected) {
    EXPECT_THROW(OpticalElement::hwp(0, 0.1), std::out_of_range);
    EXPECT_THROW(OpticalElement::hwp(kMaxSpatialModes + 1, 0.1), std::out_of_range);
    EXPECT_THROW(OpticalElement::balanced_bs(1, 1, 1, 2), std::invalid_argument);
}

TEST(BeamSplitter, HongOuMandelNull) {
    for (Polarization p : {Polarization::H, Polarization::V}) {
        PureState in = tensor(PureState::single({1, p}), PureState::single({4, p}));
        PureState out = cqt::apply(OpticalElement::balanced_bs(1, 4, 1, 4), in);
        EXPECT_LT(coincidence(out, 1, 4), 1e-14);
        // i (c^2 + d^2) / 2 -> each bunched term carries probability 1/2
        EXPECT_NEAR(std::norm(amp(out, {{ModeIndex{1, p}, 2}})), 0.5, 1e-14);
    }
}

TEST(BeamSplitter, DistinguishablePolarizationsCoincideHalfTheTime) {
    PureState in = tensor(PureState::single(mode_h(1)), PureState::single(mode_v(4)));
    EXPECT_NEAR(coincidence(cqt::apply(OpticalElement::balanced_bs(1, 4, 1, 4), in), 1, 4), 0.5, 1e-14);
}

TEST(Unitarity, LosslessElementsPreserveInnerProducts) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> angle(-pi, pi), eps(0.0, 1.0);
    for (int trial = 0; trial < 40; trial++) {
        PureState a = cqt::testing::random_state(rng, 4, 3, 6);
        PureState b = cqt::testing::random_state(rng, 4, 3, 6);
        std::vector<OpticalElement> elements{
            OpticalElement::balanced_bs(1, 2, 1, 2), OpticalElement::pbs(3, 4, 3, 4, eps(rng)),
            OpticalElement::hwp(1, angle(rng)),      OpticalElement::qwp(2, angle(rng)),
            OpticalElement::phase_plate(3, angle(rng))};
        for (const auto &e : elements) {
            ASSERT_TRUE(e.lossless());
            PureState ea = cqt::apply(e, a), eb = cqt::apply(e, b);
            EXPECT_NEAR(ea.norm_squared(), a.norm_squared(), 1e-12) << e.str();
            EXPECT_LT(std::abs(ea.inner(eb) - a.inner(b)), 1e-12) << e.str();
        }
    }
}

TEST(Pbs, PhotonNumberConserved) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; trial++) {
        PureState s = cqt::testing::random_state(rng, 3, 4, 5);
        PureState out = cqt::apply(pbs_with_imperfection(0.3), s);
        std::map<int, double> before, after;
        for (const auto &[b, a] : s.terms()) {
            before[b.total()] += std::norm(a);
        }
        for (const auto &[b, a] : out.terms()) {
            after[b.total()] += std::norm(a);
        }
        for (const auto &[n, w] : before) {
            EXPECT_NEAR(after[n], w, 1e-12);
        }
    }
}

TEST(Polarizer, ProjectsAndLosesNorm) {
    auto pol = OpticalElement::polarizer(1, qubit::plus());
    EXPECT_FALSE(pol.lossless());
    PureState out = cqt::apply(pol, PureState::single(mode_h(1)));
    EXPECT_NEAR(out.norm_squared(), 0.5, 1e-15);
    PureState kept = cqt::apply(pol, PureState::single_photon(1, s2, s2));
    EXPECT_NEAR(kept.norm_squared(), 1.0, 1e-15);
}

TEST(Measure, Examples) {
    auto plus = measure_polarization(PureState::single_photon(3, s2, s2), 3, PolarizationBasis::pm());
    EXPECT_NEAR(plus[0].probability, 1.0, 1e-15);
    EXPECT_NEAR(plus[1].probability, 0.0, 1e-15);
    auto h = measure_polarization(PureState::single(mode_h(3)), 3, PolarizationBasis::pm());
    EXPECT_NEAR(h[0].probability, 0.5, 1e-15);
    EXPECT_NEAR(h[1].probability, 0.5, 1e-15);
    EXPECT_THROW(measure_polarization(PureState::single(mode_h(1)), 3, PolarizationBasis::hv()), PostSelectionError);
}

TEST(Measure, GhzControllerInLogicalBasis) {
    PureState g = cqt::testing::from_qubits(ghz1(), {1, 2, 3});
    auto out = measure_polarization(g, 3, PolarizationBasis::hv());
    std::vector<int> modes{1, 2};
    EXPECT_NEAR(out[0].probability, 0.5, 1e-14);
    EXPECT_NEAR(out[1].probability, 0.5, 1e-14);
    EXPECT_NEAR(fidelity(to_qubit_density(out[0].conditional, modes), qubit::kron(Vector(qubit::h()), Vector(qubit::h()))), 1.0, 1e-14);
    EXPECT_NEAR(fidelity(to_qubit_density(out[1].conditional, modes), qubit::kron(Vector(qubit::v()), Vector(qubit::v()))), 1.0, 1e-14);
}

TEST(Waveplates, EncodingAndAnalyzerSettings) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 100; trial++) {
        Jones t(cplx(g(rng), g(rng)), cplx(g(rng), g(rng)));
        t /= t.norm();
        WaveplateSetting e = encoding_waveplates(t);
        EXPECT_TRUE(qubit::equal_up_to_phase(qwp_matrix(e.qwp) * hwp_matrix(e.hwp) * qubit::h(), t, 1e-10));
        WaveplateSetting a = analyzer_waveplates(t);
        EXPECT_TRUE(qubit::equal_up_to_phase(hwp_matrix(a.hwp) * qwp_matrix(a.qwp) * t, qubit::h(), 1e-10));
    }
}

}  // namespace
