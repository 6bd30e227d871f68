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

#ifndef FOCKOPS_CHANNELS_H
#define FOCKOPS_CHANNELS_H

#include <optional>
#include <string>
#include <vector>

#include "fockops/fock_core.h"

namespace fockops {

/// Conditional outputs below this probability are refused.
inline constexpr double kMinProbability = 1e-12;

enum class OperationKind {
    identity,
    ideal_subtract,
    ideal_add,
    approx_subtract,
    approx_add,
    approx_subtract_k,
    approx_add_k,
    composite,
};

/// Prefactor convention for k-photon approximate addition.
///
/// `as_written` uses (e^{2 gamma} - 1) for every k. `instrument_consistent`
/// uses (e^{2 gamma} - 1)^k / k!, the same k-dependence as k-photon
/// subtraction. Conditional outputs do not depend on the choice.
enum class AdditionNormalization { as_written, instrument_consistent };

/// Single-Kraus completely positive map rho -> K rho K^dag.
class KrausOperation {
   public:
    KrausOperation(FockOperator kraus, OperationKind kind, std::string label, std::optional<double> t = std::nullopt,
                   std::optional<double> gamma = std::nullopt, std::optional<unsigned> photons = std::nullopt);

    const TruncatedFockSpace &space() const noexcept {
        return kraus_.space();
    }
    const FockOperator &kraus() const noexcept {
        return kraus_;
    }
    OperationKind kind() const noexcept {
        return kind_;
    }
    const std::string &label() const noexcept {
        return label_;
    }
    std::optional<double> t() const noexcept {
        return t_;
    }
    std::optional<double> gamma() const noexcept {
        return gamma_;
    }
    std::optional<unsigned> photons() const noexcept {
        return photons_;
    }

    /// Largest eigenvalue of K^dag K on the truncated space.
    double max_effect_eigenvalue() const noexcept {
        return max_effect_;
    }
    /// Ideal maps are never flagged; approximate maps are flagged when the
    /// effect K^dag K is bounded by 1 (+ psd_tol) on the truncated space.
    bool trace_nonincreasing() const noexcept {
        return trace_nonincreasing_;
    }
    /// Diagonal of K^dag K.
    std::vector<double> effect_diagonal() const;

   private:
    FockOperator kraus_;
    OperationKind kind_;
    std::string label_;
    std::optional<double> t_;
    std::optional<double> gamma_;
    std::optional<unsigned> photons_;
    double max_effect_;
    bool trace_nonincreasing_;
};

struct ApplyResult {
    Matrix output;
    double trace;
};

struct ConditionalOutput {
    DensityOperator state;
    double probability;
};

struct PureApplyResult {
    Vector output;
    double trace;
};

struct PureConditionalOutput {
    PureState state;
    double probability;
};

struct DiagonalApplyResult {
    std::vector<double> output;
    double trace;
};

struct DiagonalConditionalOutput {
    DiagonalState state;
    double probability;
};

KrausOperation identity_operation(const TruncatedFockSpace &space);

/// sqrt(t) a. Not trace nonincreasing.
KrausOperation ideal_subtract(const TruncatedFockSpace &space, double t = 1.0);
/// sqrt(t) a^dag. Not trace nonincreasing.
KrausOperation ideal_add(const TruncatedFockSpace &space, double t = 1.0);

/// sqrt(e^{2 gamma} - 1) a e^{-gamma H}: one photon detected behind a beam
/// splitter of power transmittance e^{-2 gamma}.
KrausOperation approx_subtract(const TruncatedFockSpace &space, double gamma);
/// sqrt(e^{2 gamma} - 1) e^{-gamma H} a^dag.
KrausOperation approx_add(const TruncatedFockSpace &space, double gamma);

/// sqrt((e^{2 gamma} - 1)^k / k!) a^k e^{-gamma H}. k = 0 is pure damping.
KrausOperation approx_subtract_k(const TruncatedFockSpace &space, double gamma, unsigned k);
KrausOperation approx_add_k(const TruncatedFockSpace &space, double gamma, unsigned k,
                            AdditionNormalization mode = AdditionNormalization::as_written);

/// K rho K^dag and its trace. Throws TruncationOverflow when a raising
/// factor would carry more than tail_tol of the input past the top level.
ApplyResult apply(const KrausOperation &op, const DensityOperator &rho);
PureApplyResult apply(const KrausOperation &op, const PureState &psi);
DiagonalApplyResult apply(const KrausOperation &op, const DiagonalState &rho);

/// Normalized output. Throws VanishingProbability when the trace is at or
/// below kMinProbability.
ConditionalOutput conditional(const KrausOperation &op, const DensityOperator &rho);
PureConditionalOutput conditional(const KrausOperation &op, const PureState &psi);
DiagonalConditionalOutput conditional(const KrausOperation &op, const DiagonalState &rho);

/// Diagonal of sum_{k=0}^{k_max} K_k^dag K_k for the k-photon subtraction
/// instrument (k capped at D-1).
std::vector<double> completeness_sums(const TruncatedFockSpace &space, double gamma, unsigned k_max);

/// Operator norm of I - sum_k K_k^dag K_k restricted to the first
/// `guard_levels` levels (all levels when unset).
double completeness_defect(const TruncatedFockSpace &space, double gamma, unsigned k_max,
                           std::optional<std::size_t> guard_levels = std::nullopt);

/// K^k as a composite operation.
KrausOperation compose(const KrausOperation &op, unsigned k);

enum class PhotonDirection { subtract, add };

/// Scalar c in N^k(gamma)[rho] = c * N_k(k gamma)[rho], obtained by moving
/// every damping factor through the ladder operators.
double multiphoton_constant(PhotonDirection direction, double gamma, unsigned k,
                            AdditionNormalization mode = AdditionNormalization::as_written);

struct ProportionalityReport {
    /// Best estimate of c in lhs = c * rhs.
    double constant;
    /// Largest |lhs - c rhs| / |c rhs| over entries above the floor.
    double max_relative_deviation;
    /// Entries where exactly one side is above the floor.
    std::size_t support_mismatches;
};

ProportionalityReport proportionality(const Matrix &lhs, const Matrix &rhs, double floor = 1e-14);

}  // namespace fockops

#endif
