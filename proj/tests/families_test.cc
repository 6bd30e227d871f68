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

#include <cmath>

#include <gtest/gtest.h>

#include "fockops/analytic.h"
#include "fockops/metrics.h"

namespace fockops {
namespace {

TEST(ZetaState, PopulationsAndTail) {
    TruncatedFockSpace s(200);
    TruncatedZetaState z = zeta_state_diagonal(4.0, s);
    double z4 = std::pow(std::numbers::pi, 4) / 90.0;
    EXPECT_NEAR(z.state.populations()[0], 0.0, 0.0);
    EXPECT_NEAR(z.state.populations()[1], 1.0 / z4, 1e-14);
    EXPECT_NEAR(z.state.populations()[3], std::pow(3.0, -4.0) / z4, 1e-15);
    EXPECT_NEAR(z.state.trace() + z.tail_mass, 1.0, 1e-13);
    EXPECT_LE(z.tail_mass_error, 1e-15);
    EXPECT_THROW(zeta_state_diagonal(2.0, s), std::invalid_argument);
}

TEST(ZetaState, DenseRefusesShortTruncation) {
    Tolerances tol;
    tol.tail = 1e-6;
    TruncatedFockSpace small(20, tol);
    try {
        zeta_state(3.0, small);
        FAIL() << "expected TruncationInsufficient";
    } catch (const TruncationInsufficient &e) {
        EXPECT_GT(e.tail_mass(), 1e-6);
        EXPECT_GT(e.required_dim(), 20u);
        TruncatedFockSpace enough(e.required_dim(), tol);
        DensityOperator rho = zeta_state(3.0, enough);
        EXPECT_NEAR(rho.trace(), 1.0, 1e-13);
        EXPECT_TRUE(validate(rho).all_passed());
    }
}

TEST(ZetaState, RequiredDimensionMeetsTolerance) {
    for (double s : {3.0, 4.5}) {
        std::size_t d = zeta_required_dim(s, 1e-8);
        double tail = zeta_tail(s, d).value / zeta(s).value;
        EXPECT_LE(tail, 1e-8);
        // Not wildly conservative either.
        EXPECT_GT(zeta_tail(s, d / 2).value / zeta(s).value, 1e-8);
    }
}

TEST(ZetaState, SeriesMatchesTruncatedPipeline) {
    TruncatedFockSpace s(4000);
    KrausOperation ideal = ideal_subtract(s);
    for (double order : {4.0, 5.0}) {
        TruncatedZetaState z = zeta_state_diagonal(order, s);
        for (double gamma : {0.1, 0.5}) {
            KrausOperation approx = approx_subtract(s, gamma);
            double matrix = conditional_distance(ideal, approx, z.state).value;
            SeriesValue series = prop1_distance(order, gamma);
            EXPECT_NEAR(matrix, series.value, 1e-6) << order << " " << gamma;
        }
    }
}

TEST(ProofFamilies, SubtractionTwoLevelState) {
    TruncatedFockSpace s(10);
    PureState psi = prop2_state(1.0, 4, s, PhotonDirection::subtract);
    EXPECT_NEAR(std::norm(psi.amplitude(1)), 0.75, 1e-15);
    EXPECT_NEAR(std::norm(psi.amplitude(4)), 0.25, 1e-15);
    EnergyMoments m = energy_moments(psi);
    EXPECT_NEAR(m.f1, 1.75, 1e-14);
    EXPECT_NEAR(m.f2, 4.75, 1e-14);
    // a|psi> normalizes to sqrt(3/7)|0> + sqrt(4/7)|3>, mean 12/7.
    PureConditionalOutput out = conditional(ideal_subtract(s), psi);
    EXPECT_NEAR(energy_moments(out.state).f1, 12.0 / 7.0, 1e-14);

    PureState add = prop2_state(1.0, 4, s, PhotonDirection::add);
    EXPECT_NEAR(energy_moments(add).f1, 1.0, 1e-14);
    EXPECT_THROW(prop2_state(1.0, 1, s, PhotonDirection::subtract), std::invalid_argument);
    EXPECT_THROW(prop2_state(3.0, 2, s, PhotonDirection::subtract), std::invalid_argument);
    EXPECT_THROW(prop2_state(1.0, 9, s, PhotonDirection::subtract), std::invalid_argument);
}

TEST(ProofFamilies, ThreeLevelState) {
    TruncatedFockSpace s(10);
    PureState psi = prop4_state(2.0, 4, s);
    EXPECT_NEAR(std::norm(psi.amplitude(0)), 0.875, 1e-15);
    EXPECT_NEAR(std::norm(psi.amplitude(1)), 1.0 / 16.0, 1e-15);
    EXPECT_NEAR(std::norm(psi.amplitude(4)), 1.0 / 16.0, 1e-15);
    EnergyMoments m = energy_moments(psi);
    EXPECT_NEAR(m.f1, 5.0 / 16.0, 1e-15);
    EXPECT_NEAR(m.f2, 17.0 / 16.0, 1e-14);
    EXPECT_THROW(prop4_state(2.0, 1, s), std::invalid_argument);
    EXPECT_THROW(prop4_state(9.0, 2, s), std::invalid_argument);
}

TEST(Constraints, Membership) {
    ConstraintSet e = ConstraintSet::energy(2.0);
    EXPECT_TRUE(e.contains({2.0, 10.0, 6.0}));
    EXPECT_FALSE(e.contains({2.1, 10.0, 5.59}));
    EXPECT_FALSE(e.contains({0.0, 0.0, 0.0}));
    ConstraintSet q = ConstraintSet::second_moment(4.0);
    EXPECT_TRUE(q.contains({2.0, 4.0, 0.0}));
    EXPECT_FALSE(q.contains({1.0, 4.5, 3.5}));
    ConstraintSet both = ConstraintSet::energy_and_second_moment(0.5, 4.0);
    EXPECT_TRUE(both.contains({0.5, 0.5, 0.25}));
    EXPECT_FALSE(both.contains({0.4, 0.5, 0.34}));
    EXPECT_FALSE(both.contains({1.0, 4.1, 3.1}));
    EXPECT_THROW(ConstraintSet::energy_and_second_moment(3.0, 4.0), std::invalid_argument);
    EXPECT_THROW(ConstraintSet::energy(0.0), std::invalid_argument);
    EXPECT_EQ(both.describe(), "energy_and_second_moment(0.5,4)");
}

void expect_same(const std::vector<DensityOperator> &a, const std::vector<DensityOperator> &b) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ((a[i].matrix() - b[i].matrix()).norm(), 0.0);
    }
}

TEST(Sampler, DeterministicAndInsideTheSet) {
    TruncatedFockSpace s(64);
    for (const ConstraintSet &c : {ConstraintSet::second_moment(4.0), ConstraintSet::energy(3.0),
                                   ConstraintSet::energy_and_second_moment(0.5, 4.0)}) {
        auto first = sample_constrained(c, s, 7, 60);
        auto again = sample_constrained(c, s, 7, 60);
        expect_same(first, again);
        auto other = sample_constrained(c, s, 8, 60);
        double differs = 0.0;
        for (std::size_t i = 0; i < first.size(); ++i) {
            differs += (first[i].matrix() - other[i].matrix()).norm();
        }
        EXPECT_GT(differs, 0.0) << c.describe();
        for (const auto &rho : first) {
            EXPECT_TRUE(c.contains(energy_moments(rho))) << c.describe();
            EXPECT_TRUE(validate(rho).all_passed());
            EXPECT_EQ(rho.population(62) + rho.population(63), 0.0);
        }
    }
}

TEST(Sampler, IncludesBoundaryFockState) {
    TruncatedFockSpace s(64);
    auto states = sample_constrained(ConstraintSet::second_moment(4.0), s, 1, 100);
    bool has_two = false;
    std::size_t mixed = 0;
    for (const auto &rho : states) {
        if (std::abs(rho.population(2) - 1.0) < 1e-15) {
            has_two = true;
        }
        if (purity(rho) < 1.0 - 1e-6) {
            ++mixed;
        }
    }
    EXPECT_TRUE(has_two);
    EXPECT_GT(mixed, 10u);
}

TEST(Sampler, RefusesSetsThatOutgrowTheTruncation) {
    TruncatedFockSpace s(8);
    try {
        sample_constrained(ConstraintSet::energy(9.0), s, 1, 10);
        FAIL() << "expected TruncationInsufficient";
    } catch (const TruncationInsufficient &e) {
        EXPECT_EQ(e.required_dim(), 12u);
    }
    EXPECT_NO_THROW(sample_constrained(ConstraintSet::second_moment(25.0), s, 1, 10));
    EXPECT_THROW(sample_constrained(ConstraintSet::second_moment(36.0), s, 1, 10), TruncationInsufficient);
}

TEST(Witness, ZetaFamilyReachesThreshold) {
    Prop1Witness w = find_prop1_witness(0.5);
    ASSERT_TRUE(w.found);
    double target = prop1_thresholds().distance;
    EXPECT_GT(w.s, 2.0);
    EXPECT_GE(w.value, target);
    EXPECT_GE(prop1_distance(w.boundary_s, 0.5).value, target);
    EXPECT_LT(prop1_distance(w.boundary_s + 1e-6, 0.5).value, target);
    EXPECT_EQ(w.grid.size(), 48u);

    // Unreachable targets are reported, not faked.
    Prop1Witness none = find_prop1_witness(0.5, 2.5);
    EXPECT_FALSE(none.found);
    EXPECT_LE(none.max_value, 2.0);
}

TEST(Witness, TwoLevelScanApproachesLimit) {
    TruncatedFockSpace s(400);
    PropNWitness w = find_propN_witness(WitnessFamily::prop2, 1.0, 0.2, std::sqrt(0.5), s);
    ASSERT_TRUE(w.found);
    EXPECT_NEAR(w.limit, std::sqrt(2.0), 1e-15);
    EXPECT_EQ(w.scan.front().first, 2u);
    EXPECT_EQ(w.scan.back().first, 398u);
    EXPECT_NEAR(w.scan.back().second, w.limit, 2e-2);
    EXPECT_EQ(propN_limit(WitnessFamily::prop4, 2.0), 2.0);
    EXPECT_THROW(find_propN_witness(WitnessFamily::prop4, 2.0, 0.2, 1.0, s, PhotonDirection::add),
                 std::invalid_argument);
    EXPECT_THROW(find_propN_witness(WitnessFamily::prop2, 5.0, 0.2, 1.0, TruncatedFockSpace(6)),
                 TruncationInsufficient);
}

}  // namespace
}  // namespace fockops
