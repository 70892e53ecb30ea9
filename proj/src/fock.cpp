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

#include "cqt/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cqt {

std::string ModeIndex::str() const {
    return (pol == Polarization::H ? "H" : "V") + std::to_string(spatial);
}

FockBasisState::FockBasisState(std::initializer_list<std::pair<ModeIndex, int>> occupations) {
    for (const auto &[mode, n] : occupations) {
        add_photon(mode, n);
    }
}

int FockBasisState::count(ModeIndex mode) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), mode,
                               [](const auto &e, const ModeIndex &m) { return e.first < m; });
    return (it != entries_.end() && it->first == mode) ? it->second : 0;
}

int FockBasisState::spatial_count(int spatial) const {
    int n = 0;
    for (const auto &[mode, c] : entries_) {
        if (mode.spatial == spatial) {
            n += c;
        }
    }
    return n;
}

int FockBasisState::total() const {
    int n = 0;
    for (const auto &e : entries_) {
        n += e.second;
    }
    return n;
}

double FockBasisState::factorial_product() const {
    double f = 1.0;
    for (const auto &e : entries_) {
        f *= std::tgamma(e.second + 1.0);
    }
    return f;
}

void FockBasisState::add_photon(ModeIndex mode, int n) {
    if (n < 0) {
        throw std::invalid_argument("negative photon count");
    }
    if (n == 0) {
        return;
    }
    auto it = std::lower_bound(entries_.begin(), entries_.end(), mode,
                               [](const auto &e, const ModeIndex &m) { return e.first < m; });
    if (it != entries_.end() && it->first == mode) {
        it->second += n;
    } else {
        entries_.insert(it, {mode, n});
    }
}

FockBasisState FockBasisState::with_count(ModeIndex mode, int n) const {
    FockBasisState out;
    for (const auto &e : entries_) {
        if (!(e.first == mode)) {
            out.entries_.push_back(e);
        }
    }
    out.add_photon(mode, n);
    return out;
}

FockBasisState FockBasisState::without_spatial(std::span<const int> spatial) const {
    FockBasisState out;
    for (const auto &e : entries_) {
        if (std::find(spatial.begin(), spatial.end(), e.first.spatial) == spatial.end()) {
            out.entries_.push_back(e);
        }
    }
    return out;
}

FockBasisState FockBasisState::restricted_to(std::span<const int> spatial) const {
    FockBasisState out;
    for (const auto &e : entries_) {
        if (std::find(spatial.begin(), spatial.end(), e.first.spatial) != spatial.end()) {
            out.entries_.push_back(e);
        }
    }
    return out;
}

std::vector<int> FockBasisState::spatial_labels() const {
    std::vector<int> out;
    for (const auto &e : entries_) {
        if (out.empty() || out.back() != e.first.spatial) {
            out.push_back(e.first.spatial);
        }
    }
    return out;
}

std::string FockBasisState::str() const {
    if (entries_.empty()) {
        return "|vac>";
    }
    std::ostringstream out;
    out << '|';
    for (size_t k = 0; k < entries_.size(); k++) {
        if (k) {
            out << ' ';
        }
        if (entries_[k].second != 1) {
            out << entries_[k].second;
        }
        out << entries_[k].first.str();
    }
    out << '>';
    return out.str();
}

PureState::PureState(TermMap terms, double prune) : terms_(std::move(terms)) {
    std::erase_if(terms_, [prune](const auto &kv) { return std::abs(kv.second) < prune; });
    refresh();
}

void PureState::refresh() {
    norm_squared_ = 0.0;
    for (const auto &kv : terms_) {
        norm_squared_ += std::norm(kv.second);
    }
}

PureState PureState::vacuum() { return PureState(TermMap{{FockBasisState{}, cplx{1.0}}}); }

PureState PureState::single(ModeIndex mode) {
    return PureState(TermMap{{FockBasisState{{mode, 1}}, cplx{1.0}}});
}

PureState PureState::single_photon(int spatial, cplx h, cplx v) {
    TermMap t;
    t[FockBasisState{{mode_h(spatial), 1}}] = h;
    t[FockBasisState{{mode_v(spatial), 1}}] = v;
    return PureState(std::move(t));
}

cplx PureState::amplitude(const FockBasisState &basis) const {
    auto it = terms_.find(basis);
    return it == terms_.end() ? cplx{} : it->second;
}

PureState PureState::normalized() const {
    if (norm_squared_ <= 0.0) {
        throw PostSelectionError("cannot normalize an empty state");
    }
    return scaled(1.0 / std::sqrt(norm_squared_));
}

PureState PureState::scaled(cplx factor) const {
    TermMap t = terms_;
    for (auto &kv : t) {
        kv.second *= factor;
    }
    return PureState(std::move(t));
}

PureState PureState::plus(const PureState &other) const {
    TermMap t = terms_;
    for (const auto &[basis, amp] : other.terms_) {
        t[basis] += amp;
    }
    return PureState(std::move(t));
}

PureState PureState::truncated(int max_photons) const {
    TermMap t;
    for (const auto &[basis, amp] : terms_) {
        if (basis.total() <= max_photons) {
            t.emplace(basis, amp);
        }
    }
    return PureState(std::move(t));
}

cplx PureState::inner(const PureState &other) const {
    cplx acc{};
    for (const auto &[basis, amp] : terms_) {
        acc += std::conj(amp) * other.amplitude(basis);
    }
    return acc;
}

std::vector<int> PureState::spatial_labels() const {
    std::vector<int> out;
    for (const auto &kv : terms_) {
        for (int s : kv.first.spatial_labels()) {
            out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string PureState::str() const {
    std::ostringstream out;
    bool first = true;
    for (const auto &[basis, amp] : terms_) {
        if (!first) {
            out << " + ";
        }
        first = false;
        out << '(' << amp.real() << (amp.imag() < 0 ? "" : "+") << amp.imag() << "i)" << basis.str();
    }
    return first ? "0" : out.str();
}

PureState tensor(const PureState &a, const PureState &b, int max_photons) {
    auto la = a.spatial_labels();
    auto lb = b.spatial_labels();
    std::vector<int> shared;
    std::set_intersection(la.begin(), la.end(), lb.begin(), lb.end(), std::back_inserter(shared));
    if (!shared.empty()) {
        throw CompositionError("tensor: both states occupy spatial mode " + std::to_string(shared.front()));
    }
    PureState::TermMap t;
    for (const auto &[ba, xa] : a.terms()) {
        for (const auto &[bb, xb] : b.terms()) {
            FockBasisState merged = ba;
            for (const auto &[mode, n] : bb.entries()) {
                merged.add_photon(mode, n);
            }
            if (merged.total() <= max_photons) {
                t[merged] += xa * xb;
            }
        }
    }
    return PureState(std::move(t));
}

Projection project(const PureState &state, const std::function<bool(const FockBasisState &)> &keep) {
    PureState::TermMap t;
    for (const auto &[basis, amp] : state.terms()) {
        if (keep(basis)) {
            t.emplace(basis, amp);
        }
    }
    PureState kept(std::move(t));
    double reference = state.norm_squared();
    double probability = reference > 0 ? kept.norm_squared() / reference : 0.0;
    Projection out{PureState{}, probability};
    if (out.succeeded()) {
        out.state = kept.normalized();
    }
    return out;
}

std::function<bool(const FockBasisState &)> one_photon_in_each(std::vector<int> spatial) {
    return [spatial = std::move(spatial)](const FockBasisState &b) {
        return std::all_of(spatial.begin(), spatial.end(), [&](int s) { return b.spatial_count(s) == 1; });
    };
}

std::function<bool(const FockBasisState &)> clicks_in_all(std::vector<int> spatial) {
    return [spatial = std::move(spatial)](const FockBasisState &b) {
        return std::all_of(spatial.begin(), spatial.end(), [&](int s) { return b.spatial_count(s) >= 1; });
    };
}

DensityOperator to_qubit_density(const PureState &state, std::span<const int> modes) {
    const int n = static_cast<int>(modes.size());
    const Eigen::Index dim = Eigen::Index{1} << n;
    // Group amplitudes by the configuration of the traced-out modes.
    std::map<FockBasisState, Vector> branches;
    for (const auto &[basis, amp] : state.terms()) {
        Eigen::Index index = 0;
        for (int q = 0; q < n; q++) {
            int h = basis.count(mode_h(modes[q]));
            int v = basis.count(mode_v(modes[q]));
            if (h + v != 1) {
                throw PostSelectionError("to_qubit_density: mode " + std::to_string(modes[q]) + " holds " +
                                         std::to_string(h + v) + " photons in term " + basis.str());
            }
            index = (index << 1) | (v == 1 ? 1 : 0);
        }
        auto rest = basis.without_spatial(modes);
        auto [it, inserted] = branches.try_emplace(rest, Vector::Zero(dim));
        it->second(index) += amp;
    }
    if (branches.empty()) {
        throw PostSelectionError("to_qubit_density: empty state");
    }
    Matrix rho = Matrix::Zero(dim, dim);
    for (const auto &kv : branches) {
        rho += kv.second * kv.second.adjoint();
    }
    return DensityOperator(rho);
}

}  // namespace cqt
