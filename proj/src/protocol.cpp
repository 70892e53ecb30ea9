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

#include "cqt/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cqt {

namespace {

using std::numbers::pi;

struct Term {
    std::string label;
    double weight;
    PureState state;
};

std::vector<Term> terms_for(const ProtocolConfig &config) {
    if (!config.source) {
        return {{"1111", 1.0, ideal_singles()}};
    }
    std::vector<Term> out;
    for (auto &t : coincidence_terms(*config.source)) {
        out.push_back({t.label(), t.weight, t.state});
    }
    return out;
}

struct Pipeline {
    std::vector<OpticalElement> elements;
    std::vector<int> detectors;
};

void append_encoding(std::vector<OpticalElement> &el, const Jones &input) {
    WaveplateSetting w = encoding_waveplates(input);
    el.push_back(OpticalElement::hwp(kInputMode, w.hwp));
    el.push_back(OpticalElement::qwp(kInputMode, w.qwp));
}

void append_analyzer_plates(std::vector<OpticalElement> &el, int mode, const Jones &analyzer) {
    WaveplateSetting w = analyzer_waveplates(analyzer);
    el.push_back(OpticalElement::qwp(mode, w.qwp));
    el.push_back(OpticalElement::hwp(mode, w.hwp));
}

Pipeline build_pipeline(const ProtocolConfig &config, const Jones &analyzer) {
    Pipeline p;
    const Roles &r = config.roles;
    if (config.variant == ChannelVariant::UncontrolledReference) {
        // Bob's waveplates sit before the PBS; its transmitted port is his polarizer.
        append_analyzer_plates(p.elements, kBobMode, analyzer);
        p.elements.push_back(pbs_with_imperfection(config.pbs_epsilon));
        append_encoding(p.elements, config.input.jones());
        p.elements.push_back(OpticalElement::balanced_bs(kAliceMode, kInputMode, kAliceMode, kInputMode));
        p.detectors = {kAliceMode, kInputMode, kCharlieMode, kBobMode};
        return p;
    }
    p.elements = ghz_optics(config.variant, config.pbs_epsilon);
    append_encoding(p.elements, config.input.jones());
    p.elements.push_back(OpticalElement::balanced_bs(r.sender, kInputMode, r.sender, kInputMode));
    for (auto &e : charlie_station(config.action, r.controller)) {
        p.elements.push_back(e);
    }
    append_analyzer_plates(p.elements, r.receiver, analyzer);
    p.elements.push_back(OpticalElement::polarizer(r.receiver, qubit::h()));
    p.detectors = {r.sender, kInputMode, r.controller, r.receiver};
    return p;
}

// Absolute probability: polarizers shrink the norm before the projection.
double clicked(const PureState &after, const std::vector<int> &detectors) {
    return project(after, clicks_in_all(detectors)).probability * after.norm_squared();
}

double four_fold(const PureState &state, const Pipeline &p) {
    return clicked(cqt::apply(p.elements, state), p.detectors) / state.norm_squared();
}

Jones charlie_reference_outcome(const ProtocolConfig &config) {
    return config.variant == ChannelVariant::UncontrolledReference ? qubit::h() : qubit::plus();
}

Mat2 default_correction(const ProtocolConfig &config) {
    return frame_correction(ideal_channel(config.variant), charlie_reference_outcome(config), 0,
                            config.roles.qubits());
}

BobAnalyzer resolve_analyzer(const ProtocolConfig &config) {
    if (config.analyzer) {
        return *config.analyzer;
    }
    Mat2 u = default_correction(config);
    return BobAnalyzer::along(u.adjoint() * config.input.jones());
}

std::string fmt_jones(const Jones &j) {
    std::ostringstream os;
    os.precision(12);
    os << "(" << j(0).real() << "," << j(0).imag() << "," << j(1).real() << "," << j(1).imag() << ")";
    return os.str();
}

std::string fingerprint(const ProtocolConfig &config, const BobAnalyzer &a) {
    std::ostringstream os;
    os.precision(12);
    os << "action=" << to_string(config.action) << ";input=" << fmt_jones(config.input.jones())
       << ";analyzer=" << fmt_jones(a.parallel) << ";eps=" << config.pbs_epsilon << ";roles=" << config.roles.sender
       << config.roles.receiver << config.roles.controller;
    if (config.source) {
        os << ";kf=" << config.source->kappa_forward << ";kb=" << config.source->kappa_backward
           << ";order=" << config.source->truncation_order;
    } else {
        os << ";source=singles";
    }
    return os.str();
}

}  // namespace

std::string to_string(ChannelVariant v) {
    switch (v) {
        case ChannelVariant::G1:
            return "g1";
        case ChannelVariant::G2:
            return "g2";
        case ChannelVariant::UncontrolledReference:
            return "ref";
    }
    return "?";
}

std::string to_string(CharlieAction a) {
    switch (a) {
        case CharlieAction::Allow:
            return "allow";
        case CharlieAction::Deny:
            return "deny";
        case CharlieAction::None:
            return "none";
    }
    return "?";
}

void Roles::validate() const {
    std::array<int, 3> m{sender, receiver, controller};
    std::sort(m.begin(), m.end());
    if (m != std::array<int, 3>{1, 2, 3}) {
        throw std::invalid_argument("roles must be a permutation of modes 1, 2, 3");
    }
}

bool Roles::is_default() const {
    return sender == kAliceMode && receiver == kBobMode && controller == kCharlieMode;
}

InputQubit InputQubit::from_jones(const Jones &j) {
    InputQubit q;
    q.alpha = j(0);
    q.beta = j(1);
    q.validate();
    return q;
}

InputQubit InputQubit::from_label(const std::string &label) { return from_jones(qubit::from_label(label)); }

void InputQubit::validate() const {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12) {
        throw std::invalid_argument("input qubit is not normalized");
    }
}

BobAnalyzer BobAnalyzer::along(const Jones &parallel) {
    Jones n = parallel / parallel.norm();
    return {n, qubit::orthogonal(n)};
}

void BobAnalyzer::validate() const {
    if (std::abs(parallel.norm() - 1.0) > 1e-10 || std::abs(perpendicular.norm() - 1.0) > 1e-10 ||
        std::abs(parallel.dot(perpendicular)) > 1e-10) {
        throw std::invalid_argument("analyzer projections must be orthonormal");
    }
}

void ProtocolConfig::validate() const {
    input.validate();
    if (source) {
        source->validate();
    }
    if (!(pbs_epsilon >= 0.0 && pbs_epsilon <= 1.0)) {
        throw std::domain_error("PBS epsilon must lie in [0, 1]");
    }
    if (analyzer) {
        analyzer->validate();
    }
    roles.validate();
    if (variant == ChannelVariant::UncontrolledReference) {
        if (action != CharlieAction::None) {
            throw std::invalid_argument("the uncontrolled reference has no controller action");
        }
        if (!roles.is_default()) {
            throw std::invalid_argument("the uncontrolled reference supports the default roles only");
        }
    }
}

double CountRecord::fidelity() const {
    double total = f_parallel + f_perp;
    if (!(total > 0.0)) {
        throw std::domain_error("no coincidences recorded");
    }
    return f_parallel / total;
}

double CountRecord::undesired_fraction() const {
    double all = 0.0, bad = 0.0;
    for (const auto &[label, t] : breakdown) {
        double c = t.weight * (t.f_parallel + t.f_perp);
        all += c;
        if (label != "1111") {
            bad += c;
        }
    }
    if (!(all > 0.0)) {
        throw std::domain_error("no coincidences recorded");
    }
    return bad / all;
}

PauliCorrection::PauliCorrection(int k_) : k(k_) {
    if (k < 0 || k > 3) {
        throw std::out_of_range("Pauli index must be 0..3");
    }
}

WaveplatePair ghz_waveplates(ChannelVariant v) {
    switch (v) {
        case ChannelVariant::G1:
            return {0.0, 0.0, 0.0};
        case ChannelVariant::G2:
            return {pi / 4, pi / 4, pi};
        case ChannelVariant::UncontrolledReference:
            break;
    }
    throw std::invalid_argument("the uncontrolled reference has no GHZ stage");
}

std::vector<OpticalElement> ghz_optics(ChannelVariant variant, double pbs_epsilon) {
    if (variant == ChannelVariant::UncontrolledReference) {
        return {pbs_with_imperfection(pbs_epsilon)};
    }
    WaveplatePair w = ghz_waveplates(variant);
    return {
        OpticalElement::qwp(kCharlieMode, -pi / 4),  // H -> R
        OpticalElement::hwp(kBobMode, w.hwp_before),
        pbs_with_imperfection(pbs_epsilon),
        OpticalElement::hwp(kBobMode, w.hwp_after),
        OpticalElement::phase_plate(kAliceMode, w.phase_mode1),
    };
}

GhzPreparation prepare_ghz(const PureState &source_state, double pbs_epsilon, ChannelVariant variant) {
    if (variant == ChannelVariant::UncontrolledReference) {
        throw std::invalid_argument("the uncontrolled reference has no GHZ stage");
    }
    auto optics = ghz_optics(variant, pbs_epsilon);
    Projection pr = project(cqt::apply(optics, source_state), one_photon_in_each({kBobMode, kCharlieMode}));
    if (!pr.succeeded()) {
        throw PostSelectionError("GHZ post-selection never succeeds");
    }
    return {pr.state, pr.probability};
}

Projection singlet_projection(const PureState &state, int a, int b) {
    return project(cqt::apply(OpticalElement::balanced_bs(a, b, a, b), state), one_photon_in_each({a, b}));
}

std::vector<OpticalElement> charlie_station(CharlieAction action, int mode) {
    switch (action) {
        case CharlieAction::Allow:
            // Circular analyzer with an extra QWP(0): projects onto |+>.
            return {OpticalElement::qwp(mode, 0.0), OpticalElement::qwp(mode, pi / 4),
                    OpticalElement::polarizer(mode, qubit::h())};
        case CharlieAction::Deny:
            return {OpticalElement::polarizer(mode, qubit::h())};
        case CharlieAction::None:
            return {};
    }
    return {};
}

std::optional<Jones> charlie_projection(CharlieAction action) {
    switch (action) {
        case CharlieAction::Allow:
            return qubit::plus();
        case CharlieAction::Deny:
            return qubit::h();
        case CharlieAction::None:
            return std::nullopt;
    }
    return std::nullopt;
}

Vector ideal_channel(ChannelVariant v) {
    switch (v) {
        case ChannelVariant::G1:
            return ghz1();
        case ChannelVariant::G2:
            return ghz2();
        case ChannelVariant::UncontrolledReference: {
            // The source pair itself, (HH - i VV)/sqrt2, with a trigger photon in H.
            Vector pair = Vector::Zero(4);
            pair(0) = 1.0 / std::sqrt(2.0);
            pair(3) = cplx(0.0, -1.0 / std::sqrt(2.0));
            return qubit::kron(pair, Vector(qubit::h()));
        }
    }
    throw std::invalid_argument("unknown channel variant");
}

CountRecord run_counts(const ProtocolConfig &config) {
    config.validate();
    const BobAnalyzer a = resolve_analyzer(config);
    const Pipeline par = build_pipeline(config, a.parallel);
    const Pipeline perp = build_pipeline(config, a.perpendicular);
    CountRecord rec;
    rec.settings = fingerprint(config, a);
    for (const auto &t : terms_for(config)) {
        TermCounts tc{t.weight, four_fold(t.state, par), four_fold(t.state, perp)};
        rec.f_parallel += t.weight * tc.f_parallel;
        rec.f_perp += t.weight * tc.f_perp;
        rec.breakdown[t.label] = tc;
    }
    rec.success_probability = rec.f_parallel + rec.f_perp;
    if (rec.success_probability < 1e-300) {
        throw PostSelectionError("configuration never produces a four-fold coincidence");
    }
    return rec;
}

DensityOperator state_from_axial(const std::array<double, 6> &p) {
    auto axis = [](double a, double b) {
        if (!(a + b > 0.0)) {
            throw std::domain_error("axial pair carries no counts");
        }
        return (a - b) / (a + b);
    };
    double z = axis(p[0], p[1]), x = axis(p[2], p[3]), y = axis(p[4], p[5]);
    double n = std::sqrt(x * x + y * y + z * z);
    if (n > 1.0) {
        x /= n;
        y /= n;
        z /= n;
    }
    Matrix rho = 0.5 * (Matrix(qubit::pauli(0)) + x * qubit::pauli(1) + y * qubit::pauli(2) + z * qubit::pauli(3));
    return DensityOperator(rho);
}

ProtocolResult run_protocol(const ProtocolConfig &config) {
    CountRecord counts = run_counts(config);
    auto terms = terms_for(config);
    std::array<double, 6> axial{};
    auto states = qubit::axial_states();
    for (size_t s = 0; s < states.size(); s++) {
        Pipeline p = build_pipeline(config, states[s]);
        for (const auto &t : terms) {
            axial[s] += t.weight * four_fold(t.state, p);
        }
    }
    return {counts, state_from_axial(axial), default_correction(config), axial};
}

CountRecord emulate_mixture(const CountRecord &g1, const CountRecord &g2, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("mixture weight must lie in [0, 1]");
    }
    if (g1.settings != g2.settings) {
        throw std::invalid_argument("records come from different settings");
    }
    CountRecord out;
    out.settings = g1.settings;
    out.f_parallel = (1.0 - p) * g1.f_parallel + p * g2.f_parallel;
    out.f_perp = (1.0 - p) * g1.f_perp + p * g2.f_perp;
    out.success_probability = out.f_parallel + out.f_perp;
    for (const auto &src : {std::pair{&g1, 1.0 - p}, std::pair{&g2, p}}) {
        for (const auto &[label, t] : src.first->breakdown) {
            // Fold the mixing weight into the per-term rates.
            TermCounts &acc = out.breakdown[label];
            acc.weight = t.weight;
            acc.f_parallel += src.second * t.f_parallel;
            acc.f_perp += src.second * t.f_perp;
        }
    }
    return out;
}

ProtocolResult emulate_mixture(const ProtocolResult &g1, const ProtocolResult &g2, double p) {
    CountRecord counts = emulate_mixture(g1.counts, g2.counts, p);
    std::array<double, 6> axial{};
    for (size_t s = 0; s < axial.size(); s++) {
        axial[s] = (1.0 - p) * g1.axial[s] + p * g2.axial[s];
    }
    return {counts, state_from_axial(axial), g1.correction, axial};
}

Mat2 bob_correction(PauliCorrection bell_outcome, const Jones &charlie_outcome, ChannelVariant variant) {
    return frame_correction(ideal_channel(variant), charlie_outcome, bell_outcome.k);
}

RoleSwapResult swap_roles(const ProtocolConfig &config) {
    if (config.variant == ChannelVariant::UncontrolledReference) {
        throw std::invalid_argument("role swapping needs a GHZ channel");
    }
    RoleSwapResult out;
    out.counts = run_counts(config);
    out.fidelity = out.counts.fidelity();
    out.joint_success = out.counts.success_probability;

    // Sectors the GHZ post-selection would reject, pushed through the rest.
    const BobAnalyzer a = resolve_analyzer(config);
    const auto ghz = ghz_optics(config.variant, config.pbs_epsilon);
    PureState after = cqt::apply(ghz, ideal_singles());
    auto good = one_photon_in_each({kBobMode, kCharlieMode});
    Projection rejected = project(after, [&](const FockBasisState &b) { return !good(b); });
    if (rejected.succeeded()) {
        for (const Jones &j : {a.parallel, a.perpendicular}) {
            Pipeline p = build_pipeline(config, j);
            std::vector<OpticalElement> rest(p.elements.begin() + static_cast<long>(ghz.size()), p.elements.end());
            out.conflicting_probability +=
                rejected.probability * clicked(cqt::apply(rest, rejected.state), p.detectors);
        }
    }
    return out;
}

StageTrace trace_stages(const ProtocolConfig &config) {
    config.validate();
    if (config.variant == ChannelVariant::UncontrolledReference) {
        throw std::invalid_argument("stage tracing needs a GHZ channel");
    }
    const Roles &r = config.roles;
    const BobAnalyzer a = resolve_analyzer(config);
    StageTrace tr;
    PureState s = ideal_singles();

    auto stage = [&](const std::string &name, std::vector<OpticalElement> el, std::vector<int> modes) {
        PureState after = cqt::apply(el, s);
        Projection pr = project(after, one_photon_in_each(std::move(modes)));
        if (!pr.succeeded()) {
            throw PostSelectionError("stage '" + name + "' never succeeds");
        }
        tr.stages.emplace_back(name, pr.probability * after.norm_squared());
        s = pr.state;
    };

    stage("ghz", ghz_optics(config.variant, config.pbs_epsilon), {kBobMode, kCharlieMode});
    std::vector<OpticalElement> alice;
    append_encoding(alice, config.input.jones());
    alice.push_back(OpticalElement::balanced_bs(r.sender, kInputMode, r.sender, kInputMode));
    stage("singlet", alice, {r.sender, kInputMode});
    stage("controller", charlie_station(config.action, r.controller), {r.controller});
    std::vector<OpticalElement> bob;
    append_analyzer_plates(bob, r.receiver, a.parallel);
    bob.push_back(OpticalElement::polarizer(r.receiver, qubit::h()));
    stage("receiver", bob, {r.receiver});

    tr.joint = four_fold(ideal_singles(), build_pipeline(config, a.parallel));
    return tr;
}

}  // namespace cqt
