// Copyright 2026 The fockops Authors
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

#ifndef FOCKOPS_FAMILIES_H
#define FOCKOPS_FAMILIES_H

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fockops/channels.h"
#include "fockops/fock_core.h"

namespace fockops {

// ---------------------------------------------------------------------------
// Zeta states: populations n^{-s} / zeta(s) on levels n >= 1.

struct TruncatedZetaState {
    /// Raw weights n^{-s}/zeta(s) for n = 1..D-1; not renormalized.
    DiagonalState state;
    /// Neglected mass sum_{n >= D} n^{-s} / zeta(s).
    double tail_mass;
    /// Bound on the error of tail_mass itself.
    double tail_mass_error;
};

TruncatedZetaState zeta_state_diagonal(double s, const TruncatedFockSpace &space);

/// Smallest cutoff whose neglected zeta-state mass is at most `tail_tol`
/// (integral estimate, slightly conservative).
std::size_t zeta_required_dim(double s, double tail_tol);

/// Dense, renormalized zeta state. Throws TruncationInsufficient (with a
/// required-dimension estimate) when the neglected mass exceeds tail_tol.
DensityOperator zeta_state(double s, const TruncatedFockSpace &space);

// ---------------------------------------------------------------------------
// Two- and three-level proof families.

/// Subtraction: sqrt(1 - E/N)|1> + sqrt(E/N)|N>, N >= max(E, 2).
/// Addition:    sqrt(1 - E/N)|0> + sqrt(E/N)|N>, N >= max(E, 1).
/// N <= D-2 in both cases.
PureState prop2_state(double energy, std::size_t n, const TruncatedFockSpace &space, PhotonDirection variant);

/// sqrt(1 - E/N^2)|0> + sqrt(E/2N^2)(|1> + |N>), N >= max(sqrt E, 2), N <= D-2.
PureState prop4_state(double energy, std::size_t n, const TruncatedFockSpace &space);

// ---------------------------------------------------------------------------
// Constraint sets and sampling.

class ConstraintSet {
   public:
    enum class Kind { energy, second_moment, energy_and_second_moment };

    /// 0 < tr[rho H] <= e.
    static ConstraintSet energy(double e);
    /// 0 < tr[rho H^2] <= e.
    static ConstraintSet second_moment(double e);
    /// tr[rho H] >= e1 and tr[rho H^2] <= e2. Throws for e1^2 > e2.
    static ConstraintSet energy_and_second_moment(double e1, double e2);

    Kind kind() const noexcept {
        return kind_;
    }
    double e1() const noexcept {
        return e1_;
    }
    double e2() const noexcept {
        return e2_;
    }

    /// Membership with a relative floating-point slack of 1e-12.
    bool contains(const EnergyMoments &m) const;
    std::string describe() const;

   private:
    ConstraintSet(Kind kind, double e1, double e2) : kind_(kind), e1_(e1), e2_(e2) {
    }

    Kind kind_;
    // energy / second_moment use e2 as the upper bound; e1 is the lower
    // energy bound of the combined set.
    double e1_;
    double e2_;
};

/// Seeded, reproducible states inside the constraint set: boundary members
/// (Fock states, extreme two-level superpositions, proof families) first,
/// then random pure and low-rank mixed states. Support is kept at or below
/// level D-3 so one creation step stays clear of the top level.
std::vector<DensityOperator> sample_constrained(const ConstraintSet &constraint, const TruncatedFockSpace &space,
                                                std::uint64_t seed, std::size_t count);

// ---------------------------------------------------------------------------
// Witness searches.

struct Prop1Witness {
    bool found;
    /// Witness point and its certified series value.
    double s;
    double value;
    double tail_bound;
    /// Largest s (to bisection precision) at which the target still holds.
    double boundary_s;
    /// Best value seen on the grid.
    double max_value;
    double max_value_s;
    std::vector<std::pair<double, double>> grid;
};

/// Ascending geometric grid s = 2 + delta, delta in [delta_min, s_hi - 2].
/// Returns the first grid point whose series distance reaches `target`
/// (default (1/2) ln(e - 1)), then bisects for the edge of that region.
Prop1Witness find_prop1_witness(double gamma, std::optional<double> target = std::nullopt, double s_hi = 4.0,
                                std::size_t grid_points = 48, double delta_min = 1e-3);

enum class WitnessFamily { prop2, prop4 };

struct PropNWitness {
    bool found;
    std::size_t n;
    double value;
    /// Large-N limit of the distance for this family.
    double limit;
    std::vector<std::pair<std::size_t, double>> scan;
    /// Steps after the first success where the value went down.
    std::size_t decreasing_steps;
    std::size_t increasing_steps;
};

double propN_limit(WitnessFamily family, double energy);

/// Scans N upward to D-2 through the channel pipeline and returns the first
/// N whose conditional-output distance reaches `target`. The scan always
/// runs to the end so the trend can be reported.
PropNWitness find_propN_witness(WitnessFamily family, double energy, double gamma, double target,
                                const TruncatedFockSpace &space,
                                PhotonDirection variant = PhotonDirection::subtract);

}  // namespace fockops

#endif
