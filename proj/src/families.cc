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

#include "fockops/families.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fockops/analytic.h"
#include "fockops/metrics.h"

namespace fockops {

// ---------------------------------------------------------------------------
// Zeta states

namespace {

void require_zeta_order(double s) {
    if (!(s > 2.0) || !std::isfinite(s)) {
        throw std::invalid_argument("zeta states need s > 2 (finite energy)");
    }
}

}  // namespace

TruncatedZetaState zeta_state_diagonal(double s, const TruncatedFockSpace &space) {
    require_zeta_order(s);
    SeriesValue z = zeta(s);
    std::vector<double> pops(space.dim(), 0.0);
    for (std::size_t n = 1; n < space.dim(); ++n) {
        pops[n] = std::pow(static_cast<double>(n), -s) / z.value;
    }
    SeriesValue tail = zeta_tail(s, space.dim());
    double mass = tail.value / z.value;
    double err = tail.tail_bound / z.value + mass * z.tail_bound / z.value;
    return TruncatedZetaState{DiagonalState(space, std::move(pops)), mass, err};
}

std::size_t zeta_required_dim(double s, double tail_tol) {
    require_zeta_order(s);
    if (!(tail_tol > 0.0)) {
        throw std::invalid_argument("tail tolerance must be positive");
    }
    // sum_{n >= D} n^{-s} <= (D-1)^{1-s} / (s-1).
    double z = zeta(s).value;
    double base = std::pow(tail_tol * z * (s - 1.0), -1.0 / (s - 1.0));
    return static_cast<std::size_t>(std::ceil(base)) + 1;
}

DensityOperator zeta_state(double s, const TruncatedFockSpace &space) {
    TruncatedZetaState raw = zeta_state_diagonal(s, space);
    auto pops = raw.state.populations();
    double top = pops[space.top()];
    double worst = std::max(raw.tail_mass, top);
    if (worst > space.tol().tail) {
        std::ostringstream os;
        os << "zeta state at s = " << s << " leaves mass " << worst << " outside/at the cutoff D = " << space.dim()
           << "; need D >= " << zeta_required_dim(s, space.tol().tail);
        throw TruncationInsufficient(os.str(), worst, zeta_required_dim(s, space.tol().tail));
    }
    double kept = raw.state.trace();
    std::vector<double> normalized(pops.begin(), pops.end());
    for (double &p : normalized) {
        p /= kept;
    }
    return DiagonalState(space, std::move(normalized)).dense();
}

// ---------------------------------------------------------------------------
// Proof families

PureState prop2_state(double energy, std::size_t n, const TruncatedFockSpace &space, PhotonDirection variant) {
    if (!(energy > 0.0)) {
        throw std::invalid_argument("prop2_state needs E > 0");
    }
    double nd = static_cast<double>(n);
    std::size_t low = variant == PhotonDirection::subtract ? 1 : 0;
    double n_min = std::max(energy, variant == PhotonDirection::subtract ? 2.0 : 1.0);
    if (nd < n_min || n + 2 > space.dim()) {
        std::ostringstream os;
        os << "prop2_state needs " << n_min << " <= N <= D-2, got N = " << n << " with D = " << space.dim();
        throw std::invalid_argument(os.str());
    }
    double high_weight = energy / nd;
    return superposition(space, {{low, Complex(std::sqrt(1.0 - high_weight), 0.0)},
                                 {n, Complex(std::sqrt(high_weight), 0.0)}});
}

PureState prop4_state(double energy, std::size_t n, const TruncatedFockSpace &space) {
    if (!(energy > 0.0)) {
        throw std::invalid_argument("prop4_state needs E > 0");
    }
    double nd = static_cast<double>(n);
    // N = 1 would merge |1> and |N>; the family needs N >= 2.
    double n_min = std::max(std::sqrt(energy), 2.0);
    if (nd < n_min || n + 2 > space.dim()) {
        std::ostringstream os;
        os << "prop4_state needs " << n_min << " <= N <= D-2, got N = " << n << " with D = " << space.dim();
        throw std::invalid_argument(os.str());
    }
    double side = energy / (2.0 * nd * nd);
    return superposition(space, {{0, Complex(std::sqrt(1.0 - 2.0 * side), 0.0)},
                                 {1, Complex(std::sqrt(side), 0.0)},
                                 {n, Complex(std::sqrt(side), 0.0)}});
}

// ---------------------------------------------------------------------------
// Constraint sets

ConstraintSet ConstraintSet::energy(double e) {
    if (!(e > 0.0) || !std::isfinite(e)) {
        throw std::invalid_argument("energy constraint needs E > 0");
    }
    return ConstraintSet(Kind::energy, 0.0, e);
}

ConstraintSet ConstraintSet::second_moment(double e) {
    if (!(e > 0.0) || !std::isfinite(e)) {
        throw std::invalid_argument("second-moment constraint needs E > 0");
    }
    return ConstraintSet(Kind::second_moment, 0.0, e);
}

ConstraintSet ConstraintSet::energy_and_second_moment(double e1, double e2) {
    if (!(e1 > 0.0) || !std::isfinite(e2)) {
        throw std::invalid_argument("combined constraint needs E1 > 0 and finite E2");
    }
    if (e1 * e1 > e2) {
        throw std::invalid_argument("constraint region is empty: E1^2 > E2 while tr[rho H]^2 <= tr[rho H^2]");
    }
    return ConstraintSet(Kind::energy_and_second_moment, e1, e2);
}

bool ConstraintSet::contains(const EnergyMoments &m) const {
    double slack = 1e-12 * std::max(1.0, e2_);
    switch (kind_) {
        case Kind::energy:
            return m.f1 > 0.0 && m.f1 <= e2_ + slack;
        case Kind::second_moment:
            return m.f2 > 0.0 && m.f2 <= e2_ + slack;
        case Kind::energy_and_second_moment:
            return m.f1 >= e1_ - slack && m.f2 <= e2_ + slack;
    }
    return false;
}

std::string ConstraintSet::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::energy:
            os << "energy(" << e2_ << ")";
            break;
        case Kind::second_moment:
            os << "second_moment(" << e2_ << ")";
            break;
        case Kind::energy_and_second_moment:
            os << "energy_and_second_moment(" << e1_ << "," << e2_ << ")";
            break;
    }
    return os.str();
}

namespace {

class Sampler {
   public:
    Sampler(const ConstraintSet &constraint, const TruncatedFockSpace &space, std::uint64_t seed)
        : constraint_(constraint), space_(space), rng_(seed) {
        if (space.dim() < 5) {
            throw std::invalid_argument("constrained sampling needs D >= 5");
        }
        top_ = space.dim() - 3;
        // The extreme Fock states of the set must fit below the guard band.
        double needed = 0.0;
        switch (constraint.kind()) {
            case ConstraintSet::Kind::energy:
                needed = std::floor(constraint.e2() + 1e-12);
                break;
            case ConstraintSet::Kind::second_moment:
                needed = std::floor(std::sqrt(constraint.e2()) + 1e-12);
                break;
            case ConstraintSet::Kind::energy_and_second_moment:
                needed = std::ceil(constraint.e1() - 1e-12);
                break;
        }
        if (needed > static_cast<double>(top_)) {
            auto required = static_cast<std::size_t>(needed) + 3;
            throw TruncationInsufficient(constraint.describe() + " reaches level " + std::to_string(required - 3) +
                                             " but the sampler stops at D-3 = " + std::to_string(top_),
                                         0.0, required);
        }
    }

    std::vector<DensityOperator> run(std::size_t count) {
        std::vector<DensityOperator> out;
        out.reserve(count);
        for (auto &rho : boundary_members()) {
            if (out.size() == count) {
                return out;
            }
            accept(out, std::move(rho));
        }
        std::size_t attempts = 0;
        const std::size_t max_attempts = 1000 * (count + 1);
        while (out.size() < count) {
            if (++attempts > max_attempts) {
                throw std::runtime_error("sampler could not fill " + constraint_.describe() +
                                         "; the truncated region may be too small");
            }
            bool mixed = unit(rng_) < 0.4;
            std::optional<Vector> first = random_member();
            if (!first) {
                continue;
            }
            if (!mixed) {
                Vector v = *first;
                accept(out, DensityOperator(space_, v * v.adjoint()));
                continue;
            }
            std::size_t rank = unit(rng_) < 0.5 ? 2 : 3;
            std::vector<Vector> members{*first};
            while (members.size() < rank) {
                if (auto next = random_member()) {
                    members.push_back(*next);
                }
                if (++attempts > max_attempts) {
                    break;
                }
            }
            std::vector<double> weights(members.size());
            double total = 0.0;
            for (double &w : weights) {
                w = 0.05 + unit(rng_);
                total += w;
            }
            Matrix m = Matrix::Zero(static_cast<Eigen::Index>(space_.dim()), static_cast<Eigen::Index>(space_.dim()));
            for (std::size_t i = 0; i < members.size(); ++i) {
                m += (weights[i] / total) * members[i] * members[i].adjoint();
            }
            accept(out, DensityOperator(space_, std::move(m)));
        }
        return out;
    }

   private:
    void accept(std::vector<DensityOperator> &out, DensityOperator rho) const {
        EnergyMoments m = energy_moments(rho);
        if (!constraint_.contains(m)) {
            std::ostringstream os;
            os << "sampler produced a state outside " << constraint_.describe() << " (f1 = " << m.f1
               << ", f2 = " << m.f2 << ")";
            throw std::logic_error(os.str());
        }
        ValidationReport report = validate(rho);
        if (!report.all_passed()) {
            throw std::logic_error("sampler produced an invalid density operator");
        }
        out.push_back(std::move(rho));
    }

    DensityOperator pure(std::initializer_list<std::pair<std::size_t, double>> weights) const {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(space_.dim()));
        for (const auto &[n, p] : weights) {
            v(static_cast<Eigen::Index>(n)) += std::sqrt(p);
        }
        return DensityOperator(space_, v * v.adjoint());
    }

    DensityOperator mixture(std::initializer_list<std::pair<std::size_t, double>> weights) const {
        Matrix m = Matrix::Zero(static_cast<Eigen::Index>(space_.dim()), static_cast<Eigen::Index>(space_.dim()));
        for (const auto &[n, p] : weights) {
            m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) += p;
        }
        return DensityOperator(space_, std::move(m));
    }

    std::vector<DensityOperator> boundary_members() const {
        std::vector<DensityOperator> members;
        auto keep = [&](DensityOperator rho) {
            if (constraint_.contains(energy_moments(rho))) {
                members.push_back(std::move(rho));
            }
        };
        auto top_d = static_cast<double>(top_);
        double e2 = constraint_.e2();
        double e1 = constraint_.e1();

        switch (constraint_.kind()) {
            case ConstraintSet::Kind::second_moment: {
                auto fock_max = static_cast<std::size_t>(std::floor(std::sqrt(e2) + 1e-12));
                for (std::size_t n = 1; n <= std::min(fock_max, top_); ++n) {
                    keep(pure({{n, 1.0}}));
                }
                for (std::size_t n : {top_, std::max<std::size_t>(fock_max + 1, top_ / 2)}) {
                    double p = e2 / (static_cast<double>(n) * static_cast<double>(n));
                    if (p <= 1.0 && n <= top_) {
                        keep(pure({{0, 1.0 - p}, {n, p}}));
                        keep(mixture({{0, 1.0 - p}, {n, p}}));
                    }
                }
                for (std::size_t n : {std::size_t{2}, top_ / 2, top_}) {
                    if (static_cast<double>(n) >= std::sqrt(e2) && n >= 2 && n <= top_) {
                        keep(density_from_pure(prop4_state(e2, n, space_)));
                    }
                }
                break;
            }
            case ConstraintSet::Kind::energy: {
                auto fock_max = static_cast<std::size_t>(std::floor(e2 + 1e-12));
                for (std::size_t n = 1; n <= std::min(fock_max, top_); ++n) {
                    keep(pure({{n, 1.0}}));
                }
                if (e2 <= top_d) {
                    double p = e2 / top_d;
                    keep(pure({{0, 1.0 - p}, {top_, p}}));
                }
                if (e2 > 1.0) {
                    double inner = e2 - 1.0;
                    for (std::size_t n : {static_cast<std::size_t>(std::ceil(std::max(inner, 2.0))), top_}) {
                        if (n <= top_) {
                            keep(density_from_pure(prop2_state(inner, n, space_, PhotonDirection::subtract)));
                        }
                    }
                }
                break;
            }
            case ConstraintSet::Kind::energy_and_second_moment: {
                if (e1 <= 1.0) {
                    keep(mixture({{0, 1.0 - e1}, {1, e1}}));
                    keep(pure({{0, 1.0 - e1}, {1, e1}}));
                }
                for (std::size_t n = 1; n <= top_; ++n) {
                    auto nd = static_cast<double>(n);
                    if (nd * nd > e2) {
                        break;
                    }
                    if (nd >= e1) {
                        keep(pure({{n, 1.0}}));
                    }
                }
                auto far = static_cast<std::size_t>(std::floor(e2 / e1 + 1e-12));
                far = std::min(far, top_);
                if (far >= 1) {
                    double p = e1 / static_cast<double>(far);
                    if (p <= 1.0) {
                        keep(pure({{0, 1.0 - p}, {far, p}}));
                        keep(mixture({{0, 1.0 - p}, {far, p}}));
                    }
                }
                break;
            }
        }
        return members;
    }

    // Random pure state pushed into the constraint set by trading weight
    // with the vacuum: moments scale linearly with the non-vacuum weight.
    std::optional<Vector> random_member() {
        std::size_t cap = top_;
        if (constraint_.kind() == ConstraintSet::Kind::energy_and_second_moment) {
            auto ratio = static_cast<std::size_t>(std::floor(constraint_.e2() / constraint_.e1()));
            cap = std::clamp<std::size_t>(ratio, 1, top_);
        }
        std::uniform_int_distribution<std::size_t> pick_top(1, cap);
        std::size_t support = pick_top(rng_);
        double decay = 0.5 * unit(rng_);

        Vector rest = Vector::Zero(static_cast<Eigen::Index>(space_.dim()));
        for (std::size_t n = 1; n <= support; ++n) {
            double scale = std::exp(-decay * static_cast<double>(n));
            rest(static_cast<Eigen::Index>(n)) = Complex(normal_(rng_), normal_(rng_)) * scale;
        }
        double norm = rest.norm();
        if (norm == 0.0) {
            return std::nullopt;
        }
        rest /= norm;
        double g1 = 0.0;
        double g2 = 0.0;
        for (std::size_t n = 1; n <= support; ++n) {
            double p = std::norm(rest(static_cast<Eigen::Index>(n)));
            g1 += p * static_cast<double>(n);
            g2 += p * static_cast<double>(n) * static_cast<double>(n);
        }

        double lo = 0.0;
        double hi = 1.0;
        switch (constraint_.kind()) {
            case ConstraintSet::Kind::energy:
                hi = std::min(1.0, constraint_.e2() / g1);
                break;
            case ConstraintSet::Kind::second_moment:
                hi = std::min(1.0, constraint_.e2() / g2);
                break;
            case ConstraintSet::Kind::energy_and_second_moment:
                lo = constraint_.e1() / g1;
                hi = std::min(1.0, constraint_.e2() / g2);
                break;
        }
        if (!(lo <= hi) || hi <= 0.0) {
            return std::nullopt;
        }
        // A quarter of the draws sit exactly on the upper face.
        double u = unit(rng_) < 0.25 ? 1.0 : unit(rng_);
        double weight = lo + u * (hi - lo);
        if (weight <= 0.0) {
            return std::nullopt;
        }
        double phase = 2.0 * std::numbers::pi * unit(rng_);
        Vector v = std::sqrt(weight) * rest;
        v(0) = std::polar(std::sqrt(std::max(0.0, 1.0 - weight)), phase);
        v /= v.norm();
        return v;
    }

    const ConstraintSet &constraint_;
    TruncatedFockSpace space_;
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> unit{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::size_t top_;
};

}  // namespace

std::vector<DensityOperator> sample_constrained(const ConstraintSet &constraint, const TruncatedFockSpace &space,
                                                std::uint64_t seed, std::size_t count) {
    Sampler sampler(constraint, space, seed);
    return sampler.run(count);
}

// ---------------------------------------------------------------------------
// Witness searches

Prop1Witness find_prop1_witness(double gamma, std::optional<double> target, double s_hi, std::size_t grid_points,
                                double delta_min) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("witness search needs gamma > 0");
    }
    if (!(s_hi > 2.0 + delta_min) || grid_points < 2 || !(delta_min > 0.0)) {
        throw std::invalid_argument("witness grid needs s_hi > 2 + delta_min and at least two points");
    }
    double goal = target.value_or(prop1_thresholds().distance);

    std::vector<double> grid(grid_points);
    double log_lo = std::log(delta_min);
    double log_hi = std::log(s_hi - 2.0);
    for (std::size_t i = 0; i < grid_points; ++i) {
        double f = static_cast<double>(i) / static_cast<double>(grid_points - 1);
        grid[i] = 2.0 + std::exp(log_lo + f * (log_hi - log_lo));
    }

    Prop1Witness w{false, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, {}};
    std::optional<std::size_t> first_miss;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SeriesValue v = prop1_distance(grid[i], gamma);
        w.grid.emplace_back(grid[i], v.value);
        if (v.value > w.max_value) {
            w.max_value = v.value;
            w.max_value_s = grid[i];
        }
        if (!w.found && v.value >= goal) {
            w.found = true;
            w.s = grid[i];
            w.value = v.value;
            w.tail_bound = v.tail_bound;
        } else if (w.found && !first_miss && v.value < goal) {
            first_miss = i;
        }
    }
    if (!w.found) {
        return w;
    }
    if (!first_miss) {
        w.boundary_s = grid.back();
        return w;
    }
    double lo = grid[*first_miss - 1];
    double hi = grid[*first_miss];
    for (int iter = 0; iter < 60 && hi - lo > 1e-12; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (prop1_distance(mid, gamma).value >= goal) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    w.boundary_s = lo;
    return w;
}

double propN_limit(WitnessFamily family, double energy) {
    if (family == WitnessFamily::prop2) {
        return 2.0 * std::sqrt(energy / (energy + 1.0));
    }
    return 2.0;
}

PropNWitness find_propN_witness(WitnessFamily family, double energy, double gamma, double target,
                                const TruncatedFockSpace &space, PhotonDirection variant) {
    if (!(energy > 0.0) || !(gamma > 0.0)) {
        throw std::invalid_argument("witness scan needs E > 0 and gamma > 0");
    }
    if (family == WitnessFamily::prop4 && variant != PhotonDirection::subtract) {
        throw std::invalid_argument("the second-moment counterexample family is defined for subtraction only");
    }
    KrausOperation ideal = variant == PhotonDirection::subtract ? ideal_subtract(space) : ideal_add(space);
    KrausOperation approx =
        variant == PhotonDirection::subtract ? approx_subtract(space, gamma) : approx_add(space, gamma);

    double n_floor = family == WitnessFamily::prop2
                         ? std::max(energy, variant == PhotonDirection::subtract ? 2.0 : 1.0)
                         : std::max(std::sqrt(energy), 2.0);
    auto n_min = static_cast<std::size_t>(std::ceil(n_floor));
    if (n_min + 2 > space.dim()) {
        throw TruncationInsufficient("witness scan starts at N = " + std::to_string(n_min) +
                                         " which needs D >= " + std::to_string(n_min + 2),
                                     0.0, n_min + 2);
    }

    PropNWitness w{false, 0, 0.0, propN_limit(family, energy), {}, 0, 0};
    for (std::size_t n = n_min; n + 2 <= space.dim(); ++n) {
        PureState psi = family == WitnessFamily::prop2 ? prop2_state(energy, n, space, variant)
                                                       : prop4_state(energy, n, space);
        double value = conditional_distance(ideal, approx, psi).value;
        if (w.found) {
            double prev = w.scan.back().second;
            if (value < prev) {
                ++w.decreasing_steps;
            } else if (value > prev) {
                ++w.increasing_steps;
            }
        }
        w.scan.emplace_back(n, value);
        if (!w.found && value >= target) {
            w.found = true;
            w.n = n;
            w.value = value;
        }
    }
    return w;
}

}  // namespace fockops
