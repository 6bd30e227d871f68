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

#ifndef FOCKOPS_METRICS_H
#define FOCKOPS_METRICS_H

#include <string>
#include <utility>

#include "fockops/channels.h"
#include "fockops/fock_core.h"

namespace fockops {

enum class DistanceMethod { eigen, pure_overlap, diagonal_series };

std::string to_string(DistanceMethod method);

/// Unhalved trace norm ||rho - sigma||_1, in [0, 2] for unit-trace inputs.
/// The halved trace distance is trace_distance().
struct DistanceReport {
    double value;
    DistanceMethod method;
    double truncation_error = 0.0;
};

/// Sum of singular values.
double trace_norm(const Matrix &x);
/// Sum of |eigenvalues| of (x + x^dag)/2.
double trace_norm_hermitian(const Matrix &x);

DistanceReport trace_norm_diff(const DensityOperator &rho, const DensityOperator &sigma);
DistanceReport trace_norm_diff(const DiagonalState &rho, const DiagonalState &sigma);
/// 2 sqrt(1 - |<phi|chi>|^2).
DistanceReport pure_diff(const PureState &phi, const PureState &chi);

double trace_distance(const DensityOperator &rho, const DensityOperator &sigma);

/// Whether the state has a single eigenvalue above psd_tol.
bool is_rank_one(const DensityOperator &rho);

/// Pure state on H (x) H held as its coefficient matrix A with
/// |Psi> = sum_{m,n} A(m, n) |m> (x) |n>.
class BipartitePureState {
   public:
    BipartitePureState(TruncatedFockSpace first, TruncatedFockSpace second, Matrix amplitudes);

    const TruncatedFockSpace &first() const noexcept {
        return first_;
    }
    const TruncatedFockSpace &second() const noexcept {
        return second_;
    }
    const Matrix &amplitudes() const noexcept {
        return amplitudes_;
    }

   private:
    TruncatedFockSpace first_;
    TruncatedFockSpace second_;
    Matrix amplitudes_;
};

Complex overlap(const BipartitePureState &lhs, const BipartitePureState &rhs);

/// sum_i sqrt(p_i) |psi_i> (x) |psi_i> over the spectral decomposition.
BipartitePureState purify(const DensityOperator &rho);
DensityOperator partial_trace_second(const BipartitePureState &psi);

/// || |Psi1><Psi1| - |Psi2><Psi2| ||_1 for normalized bipartite vectors.
double pure_outer_diff(const BipartitePureState &lhs, const BipartitePureState &rhs);

/// Outer-state distance minus reduced-state distance. Never below -1e-10
/// since the partial trace cannot increase the trace norm.
double contractivity_gap(const BipartitePureState &lhs, const BipartitePureState &rhs);

/// (K (x) I)|Psi>, normalized.
BipartitePureState apply_first(const KrausOperation &op, const BipartitePureState &psi);

/// The pair of lifted vectors used to bound mixed-state distances: both
/// maps applied to the first factor of the purification of rho.
struct LiftedOutputs {
    BipartitePureState ideal;
    BipartitePureState approximate;
    /// Real part of <ideal|approximate>; the imaginary part vanishes.
    double overlap;
};

/// ||ideal conditional - approximate conditional||_1 for the same input.
DistanceReport conditional_distance(const KrausOperation &ideal, const KrausOperation &approximate,
                                    const DensityOperator &rho);
DistanceReport conditional_distance(const KrausOperation &ideal, const KrausOperation &approximate,
                                    const PureState &psi);
DistanceReport conditional_distance(const KrausOperation &ideal, const KrausOperation &approximate,
                                    const DiagonalState &rho);

LiftedOutputs lifted_outputs(const KrausOperation &ideal, const KrausOperation &approximate,
                             const DensityOperator &rho);

}  // namespace fockops

#endif
