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


#include "fockops/fock_core.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace fockops {
namespace {

TEST(TruncatedFockSpace, RejectsTinyDimension) {
    EXPECT_THROW(TruncatedFockSpace(1), std::invalid_argument);
    EXPECT_THROW(TruncatedFockSpace(0), std::invalid_argument);
    TruncatedFockSpace s(2);
    EXPECT_EQ(s.top(), 1u);
}

TEST(TruncatedFockSpace, RejectsOutOfRangeTolerances) {
    EXPECT_THROW(TruncatedFockSpace(4, Tolerances{1e-2, 1e-10, 1e-10, 1e-8}), std::invalid_argument);
    EXPECT_THROW(TruncatedFockSpace(4, Tolerances{1e-12, 0.0, 1e-10, 1e-8}), std::invalid_argument);
}

TEST(LadderOperators, MatrixEntries) {
    TruncatedFockSpace s(6);
    Matrix a = annihilation(s).matrix();
    Matrix ad = creation(s).matrix();
    Matrix h = number_operator(s).matrix();
    for (int n = 1; n < 6; ++n) {
        EXPECT_DOUBLE_EQ(a(n - 1, n).real(), std::sqrt(static_cast<double>(n)));
        EXPECT_DOUBLE_EQ(ad(n, n - 1).real(), std::sqrt(static_cast<double>(n)));
        EXPECT_DOUBLE_EQ(h(n, n).real(), static_cast<double>(n));
    }
    EXPECT_NEAR((ad - a.adjoint()).norm(), 0.0, 1e-15);
    // a^dag a = H exactly; a a^dag = H + 1 except at the top level.
    EXPECT_NEAR((ad * a - h).norm(), 0.0, 1e-13);
    Matrix comm = a * ad - ad * a;
    for (int n = 0; n < 5; ++n) {
        EXPECT_NEAR(comm(n, n).real(), 1.0, 1e-13);
    }
    EXPECT_NEAR(comm(5, 5).real(), -5.0, 1e-13);
}

TEST(LadderOperators, DampingIsDiagonalExponential) {
    TruncatedFockSpace s(8);
    FockOperator d = damping(s, 0.3);
    ASSERT_TRUE(d.gamma().has_value());
    Matrix m = d.matrix();
    for (int n = 0; n < 8; ++n) {
        EXPECT_NEAR(m(n, n).real(), std::exp(-0.3 * n), 1e-15);
    }
    EXPECT_THROW(damping(s, 0.0), std::invalid_argument);
    EXPECT_THROW(damping(s, -1.0), std::invalid_argument);
}

TEST(ShiftDiagonal, ProductMatchesDense) {
    TruncatedFockSpace s(7);
    FockOperator a = annihilation(s);
    FockOperator ad = creation(s);
    FockOperator d = damping(s, 0.4);
    FockOperator prod = ad * d * a * a * ad;
    Matrix dense = ad.matrix() * d.matrix() * a.matrix() * a.matrix() * ad.matrix();
    EXPECT_NEAR((prod.matrix() - dense).norm(), 0.0, 1e-12);
    EXPECT_EQ(prod.label(), OperatorLabel::composite);
}

TEST(ShiftDiagonal, OverflowTracksRaisingPastTop) {
    TruncatedFockSpace s(5);
    EXPECT_EQ(creation(s).structure().overflow_from(), 4u);
    EXPECT_EQ(annihilation(s).structure().overflow_from(), 5u);
    // a^dag a^dag overflows from level 3; a a^dag from level 4.
    EXPECT_EQ((creation(s) * creation(s)).structure().overflow_from(), 3u);
    EXPECT_EQ((annihilation(s) * creation(s)).structure().overflow_from(), 4u);
    // Lowering first leaves the top level in range.
    EXPECT_EQ((creation(s) * annihilation(s)).structure().overflow_from(), 5u);
}

TEST(ShiftDiagonal, ApplyMatchesDense) {
    TruncatedFockSpace s(9);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    Vector v(9);
    for (int i = 0; i < 9; ++i) {
        v(i) = Complex(g(rng), g(rng));
    }
    FockOperator op = damping(s, 0.2) * creation(s) * annihilation(s) * annihilation(s);
    EXPECT_NEAR((op.structure().apply(v) - op.matrix() * v).norm(), 0.0, 1e-12);
    FockOperator adj = op.adjoint();
    EXPECT_NEAR((adj.matrix() - op.matrix().adjoint()).norm(), 0.0, 1e-13);
}

TEST(PureState, NormalizationEnforced) {
    TruncatedFockSpace s(4);
    Vector v = Vector::Zero(4);
    v(1) = 2.0;
    EXPECT_THROW(PureState(s, v), InvalidState);
    v(1) = 1.0;
    PureState psi(s, v);
    EXPECT_DOUBLE_EQ(std::norm(psi.amplitude(1)), 1.0);
    Vector wrong = Vector::Zero(3);
    wrong(0) = 1.0;
    EXPECT_THROW(PureState(s, wrong), DimensionMismatch);
}

TEST(PureState, SuperpositionNormalizes) {
    TruncatedFockSpace s(6);
    PureState psi = superposition(s, {{0, Complex(1.0, 0.0)}, {3, Complex(0.0, 1.0)}});
    EXPECT_NEAR(std::abs(psi.amplitude(0)), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(std::abs(psi.amplitude(3)), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_THROW(superposition(s, {{1, Complex(0.0, 0.0)}}), std::invalid_argument);
    EXPECT_THROW(fock_state(s, 6), std::invalid_argument);
}

TEST(EnergyMoments, FockAndSuperposition) {
    TruncatedFockSpace s(10);
    EnergyMoments m = energy_moments(fock_state(s, 3));
    EXPECT_DOUBLE_EQ(m.f1, 3.0);
    EXPECT_DOUBLE_EQ(m.f2, 9.0);
    EXPECT_NEAR(m.variance, 0.0, 1e-15);

    // (|0> + |4>)/sqrt2: f1 = 2, f2 = 8, variance 4.
    PureState psi = superposition(s, {{0, Complex(1.0, 0.0)}, {4, Complex(1.0, 0.0)}});
    EnergyMoments pm = energy_moments(psi);
    EXPECT_NEAR(pm.f1, 2.0, 1e-14);
    EXPECT_NEAR(pm.f2, 8.0, 1e-14);
    EXPECT_NEAR(pm.variance, 4.0, 1e-14);
    EnergyMoments dm = energy_moments(density_from_pure(psi));
    EXPECT_NEAR(dm.f1, pm.f1, 1e-14);
    EXPECT_NEAR(dm.f2, pm.f2, 1e-14);

    DiagonalState diag(s, {0.5, 0.0, 0.5, 0, 0, 0, 0, 0, 0, 0});
    EnergyMoments ddm = energy_moments(diag);
    EXPECT_NEAR(ddm.f1, 1.0, 1e-15);
    EXPECT_NEAR(ddm.f2, 2.0, 1e-15);
}

TEST(Validation, FlagsEachDefect) {
    TruncatedFockSpace s(4);
    Matrix good = Matrix::Zero(4, 4);
    good(0, 0) = 0.5;
    good(1, 1) = 0.5;
    EXPECT_TRUE(validate(DensityOperator(s, good)).all_passed());
    EXPECT_NO_THROW(require_valid(DensityOperator(s, good)));

    Matrix nonherm = good;
    nonherm(0, 1) = 0.1;
    ValidationReport r1 = validate(DensityOperator(s, nonherm));
    ASSERT_NE(r1.find("hermitian"), nullptr);
    EXPECT_FALSE(r1.find("hermitian")->passed);

    Matrix neg = good;
    neg(0, 0) = 1.2;
    neg(1, 1) = -0.2;
    ValidationReport r2 = validate(DensityOperator(s, neg));
    EXPECT_FALSE(r2.find("psd")->passed);
    EXPECT_TRUE(r2.find("trace")->passed);

    Matrix half = good * 0.5;
    EXPECT_FALSE(validate(DensityOperator(s, half)).find("trace")->passed);

    Matrix top = Matrix::Zero(4, 4);
    top(3, 3) = 1.0;
    ValidationReport r4 = validate(DensityOperator(s, top));
    EXPECT_FALSE(r4.find("tail")->passed);
    EXPECT_THROW(require_valid(DensityOperator(s, top)), TruncationInsufficient);
}

TEST(Validation, PurityAndDiagonalDetection) {
    TruncatedFockSpace s(5);
    PureState psi = superposition(s, {{0, Complex(1.0, 0.0)}, {2, Complex(1.0, 0.0)}});
    DensityOperator rho = density_from_pure(psi);
    EXPECT_NEAR(purity(rho), 1.0, 1e-14);
    EXPECT_FALSE(rho.is_diagonal());
    DiagonalState mixed(s, {0.5, 0.5, 0.0, 0.0, 0.0});
    EXPECT_NEAR(purity(mixed.dense()), 0.5, 1e-15);
    EXPECT_TRUE(mixed.dense().is_diagonal());
    EXPECT_THROW(DiagonalState(s, {1.1, -0.1, 0, 0, 0}), InvalidState);
}

}  // namespace
}  // namespace fockops
