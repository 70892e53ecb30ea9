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

#ifndef CQT_FOCK_HPP
#define CQT_FOCK_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cqt/density.hpp"

namespace cqt {


enum class Polarization : uint8_t { H = 0, V = 1 };

/// A polarization-resolved spatial mode. Spatial labels are small positive
/// integers; the experiment uses 1..4.
struct ModeIndex {
    int spatial = 1;
    Polarization pol = Polarization::H;

    friend auto operator<=>(const ModeIndex &, const ModeIndex &) = default;
    std::string str() const;
};

inline ModeIndex mode_h(int spatial) { return {spatial, Polarization::H}; }
inline ModeIndex mode_v(int spatial) { return {spatial, Polarization::V}; }

/// Raised when two states sharing a mode are composed with `tensor`.
struct CompositionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when a post-selection keeps nothing, or a sector assumption fails.
struct PostSelectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Occupation numbers over polarization-resolved modes, stored sparsely.
///
/// Entries are kept sorted by mode and zero counts are never stored, so two
/// equal Fock states always compare equal.
class FockBasisState {
   public:
    FockBasisState() = default;
    FockBasisState(std::initializer_list<std::pair<ModeIndex, int>> occupations);

    int count(ModeIndex mode) const;
    /// Photons in a spatial mode, summed over both polarizations.
    int spatial_count(int spatial) const;
    int total() const;
    /// Product of n! over all occupied modes.
    double factorial_product() const;

    void add_photon(ModeIndex mode, int n = 1);
    FockBasisState with_count(ModeIndex mode, int n) const;
    /// Copy with every polarization of the given spatial modes removed.
    FockBasisState without_spatial(std::span<const int> spatial) const;
    FockBasisState restricted_to(std::span<const int> spatial) const;

    const std::vector<std::pair<ModeIndex, int>> &entries() const { return entries_; }
    std::vector<int> spatial_labels() const;

    std::string str() const;

    friend auto operator<=>(const FockBasisState &, const FockBasisState &) = default;

   private:
    std::vector<std::pair<ModeIndex, int>> entries_;
};

inline constexpr double kDefaultPruneThreshold = 1e-15;
inline constexpr int kDefaultMaxPhotons = 4;

/// Sparse superposition of Fock basis states.
class PureState {
   public:
    using TermMap = std::map<FockBasisState, cplx>;

    PureState() = default;
    explicit PureState(TermMap terms, double prune = kDefaultPruneThreshold);

    static PureState vacuum();
    static PureState single(ModeIndex mode);
    /// One photon in `spatial` with polarization amplitudes (h, v).
    static PureState single_photon(int spatial, cplx h, cplx v);

    const TermMap &terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    double norm_squared() const { return norm_squared_; }
    cplx amplitude(const FockBasisState &basis) const;

    PureState normalized() const;
    PureState scaled(cplx factor) const;
    PureState plus(const PureState &other) const;
    /// Drops terms with more than `max_photons` photons.
    PureState truncated(int max_photons) const;

    cplx inner(const PureState &other) const;  // <this|other>
    std::vector<int> spatial_labels() const;

    std::string str() const;

   private:
    void refresh();

    TermMap terms_;
    double norm_squared_ = 0.0;
};

/// Tensor product of states on disjoint mode sets.
PureState tensor(const PureState &a, const PureState &b, int max_photons = kDefaultMaxPhotons);

struct Projection {
    PureState state;     // renormalized (empty when probability is ~0)
    double probability;  // weight before renormalization
    bool succeeded() const { return probability >= 1e-14; }
};

/// Keeps the terms for which `keep` holds. Probability is relative to the
/// input norm.
Projection project(const PureState &state, const std::function<bool(const FockBasisState &)> &keep);

/// Predicate: every listed spatial mode holds exactly one photon.
std::function<bool(const FockBasisState &)> one_photon_in_each(std::vector<int> spatial);
/// Predicate: every listed spatial mode holds at least one photon (threshold clicks).
std::function<bool(const FockBasisState &)> clicks_in_all(std::vector<int> spatial);

/// Polarization register of the listed spatial modes (H -> 0, V -> 1, first
/// listed mode is the most significant qubit). All other modes are traced out.
/// Throws PostSelectionError if a term has other than one photon in a listed mode.
DensityOperator to_qubit_density(const PureState &state, std::span<const int> modes);

}  // namespace cqt

#endif
