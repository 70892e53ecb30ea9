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

#include "cqt/spdc.hpp"

#include <cmath>
#include <sstream>

namespace cqt {

namespace {

const cplx kI{0.0, 1.0};

PureState apply_creation(const PureState &state, ModeIndex mode) {
    PureState::TermMap t;
    for (const auto &[basis, amp] : state.terms()) {
        int n = basis.count(mode);
        t[basis.with_count(mode, n + 1)] += amp * std::sqrt(n + 1.0);
    }
    return PureState(std::move(t), 0.0);
}

// (P†)^n / n! |0> for one pair source.
std::vector<PureState> pair_powers(const PairPolarization &pair, int max_n, int signal, int idler) {
    std::vector<PureState> out{PureState::vacuum()};
    for (int n = 1; n <= max_n; n++) {
        out.push_back(apply_pair_creation(out.back(), pair, signal, idler).scaled(1.0 / n));
    }
    return out;
}

}  // namespace

PairPolarization PairPolarization::entangled_phi_plus() {
    PairPolarization p;
    p.kind = Kind::EntangledPhiPlus;
    p.amplitudes << 1.0 / std::sqrt(2.0), 0.0, 0.0, -kI / std::sqrt(2.0);
    return p;
}

PairPolarization PairPolarization::product_hh() {
    PairPolarization p;
    p.kind = Kind::ProductHH;
    p.amplitudes << 1.0, 0.0, 0.0, 0.0;
    return p;
}

PairPolarization PairPolarization::custom(const Jones &signal, const Jones &idler) {
    PairPolarization p;
    p.kind = Kind::Custom;
    Jones s = signal / signal.norm();
    Jones i = idler / idler.norm();
    p.amplitudes = s * i.transpose();
    return p;
}

std::string PairPolarization::str() const {
    switch (kind) {
        case Kind::EntangledPhiPlus: return "phi_plus";
        case Kind::ProductHH: return "product_hh";
        case Kind::Custom: return "custom";
    }
    return "?";
}

void SourceParams::validate() const {
    if (!(std::abs(kappa_forward) < 0.5) || !(std::abs(kappa_backward) < 0.5)) {
        throw std::domain_error("SPDC interaction strengths must satisfy |kappa| < 0.5");
    }
    if (truncation_order < 1) {
        throw std::domain_error("truncation_order must be >= 1");
    }
    for (const auto *pair : {&forward_pair, &backward_pair}) {
        if (std::abs(pair->amplitudes.squaredNorm() - 1.0) > 1e-12) {
            throw std::domain_error("pair polarization amplitudes must be normalized");
        }
    }
}

double SourceParams::ratio() const {
    if (std::abs(kappa_forward) == 0.0) {
        throw std::domain_error("ratio undefined for kappa_forward = 0");
    }
    return std::abs(kappa_backward) / std::abs(kappa_forward);
}

PureState apply_pair_creation(const PureState &state, const PairPolarization &pair, int signal, int idler) {
    PureState out;
    const Polarization pols[] = {Polarization::H, Polarization::V};
    for (int p = 0; p < 2; p++) {
        for (int q = 0; q < 2; q++) {
            cplx c = pair.amplitudes(p, q);
            if (c == cplx{}) {
                continue;
            }
            PureState term = apply_creation(apply_creation(state, {idler, pols[q]}), {signal, pols[p]});
            out = out.plus(term.scaled(c));
        }
    }
    return out;
}

PureState two_mode_spdc(cplx kappa, int truncation_order, const PairPolarization &pair, int signal, int idler) {
    if (truncation_order < 1) {
        throw std::domain_error("truncation_order must be >= 1");
    }
    if (!(std::abs(kappa) < 0.5)) {
        throw std::domain_error("SPDC interaction strength must satisfy |kappa| < 0.5");
    }
    auto powers = pair_powers(pair, truncation_order, signal, idler);
    PureState sum;
    cplx k_n{1.0};
    for (const auto &p : powers) {
        sum = sum.plus(p.scaled(k_n));
        k_n *= kappa;
    }
    return sum.normalized();
}

std::string SourceTerm::label() const {
    return std::to_string(forward_pairs) + std::to_string(forward_pairs) + std::to_string(backward_pairs) +
           std::to_string(backward_pairs);
}

namespace {

struct RawTerm {
    int forward;
    int backward;
    PureState unnormalized;
};

std::vector<RawTerm> raw_terms(const SourceParams &params) {
    params.validate();
    const int order = params.truncation_order;
    auto forward = pair_powers(params.forward_pair, order, 1, 2);
    auto backward = pair_powers(params.backward_pair, order, 3, 4);
    std::vector<RawTerm> out;
    for (int n = 0; n <= order; n++) {
        for (int m = 0; n + m <= order; m++) {
            cplx coeff = std::pow(params.kappa_forward, n) * std::pow(params.kappa_backward, m);
            if (coeff == cplx{}) {
                continue;
            }
            PureState t = tensor(forward[n], backward[m], 2 * order).scaled(coeff);
            if (!t.empty()) {
                out.push_back({n, m, std::move(t)});
            }
        }
    }
    return out;
}

}  // namespace

PureState four_mode_source(const SourceParams &params) {
    PureState sum;
    for (const auto &t : raw_terms(params)) {
        sum = sum.plus(t.unnormalized);
    }
    return sum.normalized();
}

std::vector<SourceTerm> source_terms(const SourceParams &params) {
    auto raw = raw_terms(params);
    double total = 0.0;
    for (const auto &t : raw) {
        total += t.unnormalized.norm_squared();
    }
    std::vector<SourceTerm> out;
    for (const auto &t : raw) {
        out.push_back({t.forward, t.backward, t.unnormalized.norm_squared() / total, t.unnormalized.normalized()});
    }
    return out;
}

std::vector<SourceTerm> coincidence_terms(const SourceParams &params) {
    std::vector<SourceTerm> out;
    for (auto &t : source_terms(params)) {
        bool desired = t.forward_pairs == 1 && t.backward_pairs == 1;
        bool doubled = (t.forward_pairs == 2 && t.backward_pairs == 0) || (t.forward_pairs == 0 && t.backward_pairs == 2);
        if (desired || doubled) {
            out.push_back(std::move(t));
        }
    }
    return out;
}

PureState ideal_singles() {
    auto forward = apply_pair_creation(PureState::vacuum(), PairPolarization::entangled_phi_plus(), 1, 2);
    auto backward = apply_pair_creation(PureState::vacuum(), PairPolarization::product_hh(), 3, 4);
    return tensor(forward, backward).normalized();
}

}  // namespace cqt
