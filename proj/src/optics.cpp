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

#include "cqt/optics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace cqt {

namespace {

const cplx kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

constexpr Polarization kPols[] = {Polarization::H, Polarization::V};

void check_mode(int spatial) {
    if (spatial < 1 || spatial > kMaxSpatialModes) {
        throw std::out_of_range("unknown spatial mode " + std::to_string(spatial) + " (expected 1.." +
                                std::to_string(kMaxSpatialModes) + ")");
    }
}

void check_angle(double theta) {
    if (!std::isfinite(theta) || std::abs(theta) > 2 * std::numbers::pi) {
        throw std::domain_error("waveplate angle out of range [-2pi, 2pi]");
    }
}

Mat2 rotation(double t) {
    Mat2 r;
    r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return r;
}

// Jones matrix as per-mode substitution a†_p -> sum_p' J(p', p) a†_p'.
std::vector<std::pair<ModeIndex, std::vector<OpticalElement::Target>>> jones_rules(int mode, const Mat2 &j) {
    std::vector<std::pair<ModeIndex, std::vector<OpticalElement::Target>>> out;
    for (int p = 0; p < 2; p++) {
        std::vector<OpticalElement::Target> targets;
        for (int q = 0; q < 2; q++) {
            if (j(q, p) != cplx{}) {
                targets.push_back({{mode, kPols[q]}, j(q, p)});
            }
        }
        out.emplace_back(ModeIndex{mode, kPols[p]}, std::move(targets));
    }
    return out;
}

double overlap_sq(const Jones &a, const Jones &b) { return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm()); }

}  // namespace

std::string to_string(ElementKind kind) {
    switch (kind) {
        case ElementKind::BalancedBS: return "BS";
        case ElementKind::PBS: return "PBS";
        case ElementKind::HWP: return "HWP";
        case ElementKind::QWP: return "QWP";
        case ElementKind::Polarizer: return "POL";
        case ElementKind::PhasePlate: return "PHASE";
    }
    return "?";
}

Mat2 hwp_matrix(double theta) {
    Mat2 m;
    m << std::cos(2 * theta), std::sin(2 * theta), std::sin(2 * theta), -std::cos(2 * theta);
    return m;
}

Mat2 qwp_matrix(double theta) {
    Mat2 d;
    d << 1, 0, 0, kI;
    return rotation(theta) * d * rotation(-theta);
}

Mat2 phase_plate_matrix(double phi) {
    Mat2 m;
    m << 1, 0, 0, std::polar(1.0, phi);
    return m;
}

OpticalElement OpticalElement::balanced_bs(int a, int b, int c, int d) {
    OpticalElement e;
    e.kind_ = ElementKind::BalancedBS;
    e.inputs_ = {a, b};
    e.outputs_ = {c, d};
    e.validate();
    return e;
}

OpticalElement OpticalElement::pbs(int a, int b, int c, int d, double epsilon) {
    OpticalElement e;
    e.kind_ = ElementKind::PBS;
    e.epsilon_ = epsilon;
    e.inputs_ = {a, b};
    e.outputs_ = {c, d};
    e.validate();
    return e;
}

OpticalElement OpticalElement::hwp(int mode, double theta) {
    OpticalElement e;
    e.kind_ = ElementKind::HWP;
    e.angle_ = theta;
    e.inputs_ = e.outputs_ = {mode};
    e.validate();
    return e;
}

OpticalElement OpticalElement::qwp(int mode, double theta) {
    OpticalElement e;
    e.kind_ = ElementKind::QWP;
    e.angle_ = theta;
    e.inputs_ = e.outputs_ = {mode};
    e.validate();
    return e;
}

OpticalElement OpticalElement::polarizer(int mode, const Jones &pass) {
    OpticalElement e;
    e.kind_ = ElementKind::Polarizer;
    double n = pass.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::domain_error("polarizer needs a non-zero Jones vector");
    }
    e.pass_ = pass / n;
    e.inputs_ = e.outputs_ = {mode};
    e.validate();
    return e;
}

OpticalElement OpticalElement::phase_plate(int mode, double phi) {
    OpticalElement e;
    e.kind_ = ElementKind::PhasePlate;
    if (!std::isfinite(phi)) {
        throw std::domain_error("phase must be finite");
    }
    e.phase_ = phi;
    e.inputs_ = e.outputs_ = {mode};
    e.validate();
    return e;
}

void OpticalElement::validate() const {
    for (int m : inputs_) check_mode(m);
    for (int m : outputs_) check_mode(m);
    if (inputs_.size() == 2 && (inputs_[0] == inputs_[1] || outputs_[0] == outputs_[1])) {
        throw std::invalid_argument(to_string(kind_) + " ports must be distinct modes");
    }
    if (kind_ == ElementKind::PBS && !(epsilon_ >= 0.0 && epsilon_ <= 1.0)) {
        throw std::domain_error("PBS imperfection epsilon must lie in [0, 1]");
    }
    if (kind_ == ElementKind::HWP || kind_ == ElementKind::QWP) {
        check_angle(angle_);
    }
}

std::vector<std::pair<ModeIndex, std::vector<OpticalElement::Target>>> OpticalElement::substitution() const {
    switch (kind_) {
        case ElementKind::BalancedBS: {
            std::vector<std::pair<ModeIndex, std::vector<Target>>> out;
            const int a = inputs_[0], b = inputs_[1], c = outputs_[0], d = outputs_[1];
            for (auto p : kPols) {
                out.push_back({{a, p}, {{{c, p}, kInvSqrt2}, {{d, p}, kI * kInvSqrt2}}});
                out.push_back({{b, p}, {{{d, p}, kInvSqrt2}, {{c, p}, kI * kInvSqrt2}}});
            }
            return out;
        }
        case ElementKind::PBS: {
            const int a = inputs_[0], b = inputs_[1], c = outputs_[0], d = outputs_[1];
            const double t = std::sqrt(1.0 - epsilon_);
            const cplx r = kI * std::sqrt(epsilon_);
            std::vector<std::pair<ModeIndex, std::vector<Target>>> out;
            out.push_back({mode_h(a), {{mode_h(c), t}, {mode_h(d), r}}});
            out.push_back({mode_h(b), {{mode_h(d), t}, {mode_h(c), r}}});
            out.push_back({mode_v(a), {{mode_v(d), 1.0}}});
            out.push_back({mode_v(b), {{mode_v(c), 1.0}}});
            return out;
        }
        case ElementKind::HWP:
            return jones_rules(inputs_[0], hwp_matrix(angle_));
        case ElementKind::QWP:
            return jones_rules(inputs_[0], qwp_matrix(angle_));
        case ElementKind::PhasePlate:
            return jones_rules(inputs_[0], phase_plate_matrix(phase_));
        case ElementKind::Polarizer:
            return jones_rules(inputs_[0], pass_ * pass_.adjoint());
    }
    return {};
}

std::string OpticalElement::str() const {
    std::ostringstream out;
    out << to_string(kind_) << '(';
    for (size_t k = 0; k < inputs_.size(); k++) {
        out << (k ? "," : "") << inputs_[k];
    }
    switch (kind_) {
        case ElementKind::HWP:
        case ElementKind::QWP: out << "; " << angle_ * 180 / std::numbers::pi << "deg"; break;
        case ElementKind::PBS: out << "; eps=" << epsilon_; break;
        case ElementKind::PhasePlate: out << "; phi=" << phase_; break;
        default: break;
    }
    out << ')';
    return out.str();
}

PureState apply(const OpticalElement &element, const PureState &state) {
    const auto rules = element.substitution();
    std::vector<int> touched = element.inputs();
    PureState::TermMap result;
    for (const auto &[basis, amp] : state.terms()) {
        // Monomials over creation operators: coefficient c means c * prod (a†)^m |0>.
        std::map<FockBasisState, cplx> poly;
        poly[basis.without_spatial(touched)] = amp / std::sqrt(basis.factorial_product());
        for (const auto &[mode, image] : rules) {
            for (int k = basis.count(mode); k > 0; k--) {
                std::map<FockBasisState, cplx> next;
                for (const auto &[mono, coeff] : poly) {
                    for (const auto &target : image) {
                        FockBasisState grown = mono;
                        grown.add_photon(target.mode);
                        next[grown] += coeff * target.coefficient;
                    }
                }
                poly = std::move(next);
            }
        }
        for (const auto &[mono, coeff] : poly) {
            result[mono] += coeff * std::sqrt(mono.factorial_product());
        }
    }
    return PureState(std::move(result));
}

PureState apply(std::span<const OpticalElement> elements, PureState state) {
    for (const auto &e : elements) {
        state = apply(e, state);
    }
    return state;
}

OpticalElement pbs_with_imperfection(double epsilon, int a, int b, int c, int d) {
    return OpticalElement::pbs(a, b, c, d, epsilon);
}

PolarizationBasis PolarizationBasis::hv() { return {{"H", "V"}, {qubit::h(), qubit::v()}}; }
PolarizationBasis PolarizationBasis::pm() { return {{"+", "-"}, {qubit::plus(), qubit::minus()}}; }
PolarizationBasis PolarizationBasis::rl() { return {{"R", "L"}, {qubit::right(), qubit::left()}}; }
PolarizationBasis PolarizationBasis::from_jones(const Jones &j) {
    Jones n = j / j.norm();
    return {{"j", "j_perp"}, {n, qubit::orthogonal(n)}};
}

std::vector<MeasurementOutcome> measure_polarization(const PureState &state, int mode,
                                                     const PolarizationBasis &basis) {
    check_mode(mode);
    const std::vector<int> measured{mode};
    bool occupied = false;
    for (const auto &kv : state.terms()) {
        if (kv.first.spatial_count(mode) > 0) {
            occupied = true;
            break;
        }
    }
    if (!occupied) {
        throw PostSelectionError("measure_polarization: mode " + std::to_string(mode) + " is empty in every term");
    }
    std::vector<MeasurementOutcome> out;
    for (int k = 0; k < 2; k++) {
        const Jones &b = basis.vectors[k];
        PureState::TermMap t;
        for (const auto &[basis_state, amp] : state.terms()) {
            if (basis_state.spatial_count(mode) != 1) {
                continue;
            }
            int p = basis_state.count(mode_v(mode)) == 1 ? 1 : 0;
            t[basis_state.without_spatial(measured)] += amp * std::conj(b(p));
        }
        PureState branch(std::move(t));
        double probability = branch.norm_squared() / state.norm_squared();
        out.push_back({basis.labels[k], b, probability,
                       probability >= 1e-14 ? branch.normalized() : PureState{}});
    }
    return out;
}

WaveplateSetting encoding_waveplates(const Jones &target) {
    Jones t = target / target.norm();
    const cplx ab = std::conj(t(0)) * t(1);
    const double s1 = std::norm(t(0)) - std::norm(t(1));
    const double s2 = 2 * ab.real();
    const double s3 = std::clamp(2 * ab.imag(), -1.0, 1.0);
    const double azimuth = 0.5 * std::atan2(s2, s1);
    const double ellipticity = 0.5 * std::asin(s3);
    WaveplateSetting best;
    double best_overlap = -1.0;
    for (double sign : {1.0, -1.0}) {
        WaveplateSetting w{0.5 * (azimuth + sign * ellipticity), azimuth};
        Jones prepared = qwp_matrix(w.qwp) * hwp_matrix(w.hwp) * qubit::h();
        double o = overlap_sq(prepared, t);
        if (o > best_overlap) {
            best_overlap = o;
            best = w;
        }
    }
    if (best_overlap < 1.0 - 1e-10) {
        throw std::logic_error("encoding_waveplates: no HWP+QWP setting reaches the target");
    }
    return best;
}

WaveplateSetting analyzer_waveplates(const Jones &target) {
    WaveplateSetting enc = encoding_waveplates(target);
    // QWP(t)^dagger equals QWP(t + pi/2) up to a global phase.
    return {enc.hwp, enc.qwp + std::numbers::pi / 2};
}

}  // namespace cqt
