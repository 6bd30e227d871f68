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

#ifndef FOCKOPS_FOCK_CORE_H
#define FOCKOPS_FOCK_CORE_H

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fockops/errors.h"

namespace fockops {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Validation tolerances attached to a truncated space.
struct Tolerances {
    double herm = 1e-12;
    double psd = 1e-10;
    double trace = 1e-10;
    double tail = 1e-8;
};

/// Single-mode Fock space cut off at `dim` levels |0>..|dim-1>.
class TruncatedFockSpace {
   public:
    explicit TruncatedFockSpace(std::size_t dim, Tolerances tol = {});

    std::size_t dim() const noexcept {
        return dim_;
    }
    const Tolerances &tol() const noexcept {
        return tol_;
    }
    /// Index of the highest retained level.
    std::size_t top() const noexcept {
        return dim_ - 1;
    }

    bool operator==(const TruncatedFockSpace &other) const noexcept {
        return dim_ == other.dim_;
    }

   private:
    std::size_t dim_;
    Tolerances tol_;
};

/// An operator whose only nonzero entries lie on one (sub/super)diagonal:
/// entry (j + shift, j) equals weights[j]. Every ladder, number and damping
/// operator, and every product of them, has this form.
class ShiftDiagonal {
   public:
    ShiftDiagonal(long shift, std::vector<double> weights);

    long shift() const noexcept {
        return shift_;
    }
    std::size_t dim() const noexcept {
        return weights_.size();
    }
    std::span<const double> weights() const noexcept {
        return weights_;
    }
    double weight(std::size_t column) const {
        return weights_.at(column);
    }

    /// Row index hit by `column`, or nullopt when it leaves the space.
    std::optional<std::size_t> target(std::size_t column) const noexcept;

    /// Lowest input level whose image was pushed above the top level by
    /// some raising factor (dim() when nothing overflows). Lowering past
    /// |0> is exact annihilation and does not count.
    std::size_t overflow_from() const noexcept {
        return overflow_from_;
    }

    ShiftDiagonal scaled(double factor) const;
    ShiftDiagonal adjoint() const;

    Matrix dense() const;
    Vector apply(const Vector &v) const;

    /// Product `lhs * rhs`.
    friend ShiftDiagonal operator*(const ShiftDiagonal &lhs, const ShiftDiagonal &rhs);

   private:
    ShiftDiagonal(long shift, std::vector<double> weights, std::size_t overflow_from);

    long shift_;
    std::vector<double> weights_;
    std::size_t overflow_from_;
};

enum class OperatorLabel { annihilation, creation, number, damping, composite };

std::string to_string(OperatorLabel label);

class FockOperator {
   public:
    FockOperator(TruncatedFockSpace space, ShiftDiagonal structure, OperatorLabel label,
                 std::optional<double> gamma = std::nullopt);

    const TruncatedFockSpace &space() const noexcept {
        return space_;
    }
    const ShiftDiagonal &structure() const noexcept {
        return structure_;
    }
    OperatorLabel label() const noexcept {
        return label_;
    }
    /// Damping exponent, set only for damping operators.
    std::optional<double> gamma() const noexcept {
        return gamma_;
    }

    /// Dense D x D matrix, materialized on request.
    Matrix matrix() const {
        return structure_.dense();
    }

    FockOperator adjoint() const;
    friend FockOperator operator*(const FockOperator &lhs, const FockOperator &rhs);

   private:
    TruncatedFockSpace space_;
    ShiftDiagonal structure_;
    OperatorLabel label_;
    std::optional<double> gamma_;
};

FockOperator annihilation(const TruncatedFockSpace &space);
FockOperator creation(const TruncatedFockSpace &space);
FockOperator number_operator(const TruncatedFockSpace &space);
/// exp(-gamma a^dag a); throws std::invalid_argument for gamma <= 0.
FockOperator damping(const TruncatedFockSpace &space, double gamma);

class PureState {
   public:
    /// Throws std::invalid_argument when the norm is off by more than trace_tol.
    PureState(TruncatedFockSpace space, Vector amplitudes);

    const TruncatedFockSpace &space() const noexcept {
        return space_;
    }
    const Vector &amplitudes() const noexcept {
        return amplitudes_;
    }
    Complex amplitude(std::size_t n) const {
        return amplitudes_(static_cast<Eigen::Index>(n));
    }
    /// Population of the top retained level.
    double tail_mass() const;

   private:
    TruncatedFockSpace space_;
    Vector amplitudes_;
};

/// Dense density matrix. Construction checks shape only; use validate() or
/// require_valid() for the physical invariants.
class DensityOperator {
   public:
    DensityOperator(TruncatedFockSpace space, Matrix matrix);

    const TruncatedFockSpace &space() const noexcept {
        return space_;
    }
    const Matrix &matrix() const noexcept {
        return matrix_;
    }
    double population(std::size_t n) const {
        auto i = static_cast<Eigen::Index>(n);
        return matrix_(i, i).real();
    }
    double trace() const {
        return matrix_.trace().real();
    }
    /// True when every off-diagonal entry is below herm_tol.
    bool is_diagonal() const;

   private:
    TruncatedFockSpace space_;
    Matrix matrix_;
};

/// Fock-diagonal state held as a population vector. Used where the dense
/// form would not fit (D in the thousands and beyond).
class DiagonalState {
   public:
    DiagonalState(TruncatedFockSpace space, std::vector<double> populations);

    const TruncatedFockSpace &space() const noexcept {
        return space_;
    }
    std::span<const double> populations() const noexcept {
        return populations_;
    }
    double trace() const;
    DensityOperator dense() const;

   private:
    TruncatedFockSpace space_;
    std::vector<double> populations_;
};

struct EnergyMoments {
    double f1;
    double f2;
    double variance;
};

struct ValidationCheck {
    std::string name;
    bool passed;
    double deviation;
    double tolerance;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool all_passed() const;
    const ValidationCheck *find(const std::string &name) const;
};

PureState fock_state(const TruncatedFockSpace &space, std::size_t n);

/// Normalized state with the given relative amplitudes.
PureState superposition(const TruncatedFockSpace &space,
                        std::span<const std::pair<std::size_t, Complex>> coefficients);
PureState superposition(const TruncatedFockSpace &space,
                        std::initializer_list<std::pair<std::size_t, Complex>> coefficients);

DensityOperator density_from_pure(const PureState &psi);

EnergyMoments energy_moments(const DensityOperator &rho);
EnergyMoments energy_moments(const PureState &psi);
EnergyMoments energy_moments(const DiagonalState &rho);

ValidationReport validate(const DensityOperator &rho);
ValidationReport validate(const PureState &psi);

/// Throws InvalidState naming the first failing check.
void require_valid(const DensityOperator &rho);

double purity(const DensityOperator &rho);

}  // namespace fockops

#endif
