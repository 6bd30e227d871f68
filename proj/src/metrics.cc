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

#include "fockops/metrics.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace fockops {

namespace {

void require_same_space(const TruncatedFockSpace &a, const TruncatedFockSpace &b) {
    if (!(a == b)) {
        throw DimensionMismatch("states live on truncated spaces of different dimension");
    }
}

double distance_from_overlap(double overlap_abs2) {
    return 2.0 * std::sqrt(std::max(0.0, 1.0 - overlap_abs2));
}

}  // namespace

std::string to_string(DistanceMethod method) {
    switch (method) {
        case DistanceMethod::eigen:
            return "eigen";
        case DistanceMethod::pure_overlap:
            return "pure_overlap";
        case DistanceMethod::diagonal_series:
            return "diagonal_series";
    }
    return "unknown";
}

double trace_norm(const Matrix &x) {
    if (x.size() == 0) {
        return 0.0;
    }
    Eigen::BDCSVD<Matrix> svd(x);
    return svd.singularValues().sum();
}

double trace_norm_hermitian(const Matrix &x) {
    if (x.size() == 0) {
        return 0.0;
    }
    Matrix sym = 0.5 * (x + x.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().sum();
}

DistanceReport trace_norm_diff(const DensityOperator &rho, const DensityOperator &sigma) {
    require_same_space(rho.space(), sigma.space());
    if (rho.is_diagonal() && sigma.is_diagonal()) {
        double sum = 0.0;
        for (std::size_t n = 0; n < rho.space().dim(); ++n) {
            sum += std::abs(rho.population(n) - sigma.population(n));
        }
        return DistanceReport{sum, DistanceMethod::diagonal_series};
    }
    return DistanceReport{trace_norm_hermitian(rho.matrix() - sigma.matrix()), DistanceMethod::eigen};
}

DistanceReport trace_norm_diff(const DiagonalState &rho, const DiagonalState &sigma) {
    require_same_space(rho.space(), sigma.space());
    auto p = rho.populations();
    auto q = sigma.populations();
    double sum = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        sum += std::abs(p[n] - q[n]);
    }
    return DistanceReport{sum, DistanceMethod::diagonal_series};
}

DistanceReport pure_diff(const PureState &phi, const PureState &chi) {
    require_same_space(phi.space(), chi.space());
    Complex ov = phi.amplitudes().dot(chi.amplitudes());
    return DistanceReport{distance_from_overlap(std::norm(ov)), DistanceMethod::pure_overlap};
}

double trace_distance(const DensityOperator &rho, const DensityOperator &sigma) {
    return 0.5 * trace_norm_diff(rho, sigma).value;
}

bool is_rank_one(const DensityOperator &rho) {
    Matrix sym = 0.5 * (rho.matrix() + rho.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
    double tol = rho.space().tol().psd;
    auto above = (eig.eigenvalues().array() > tol).count();
    return above == 1;
}

BipartitePureState::BipartitePureState(TruncatedFockSpace first, TruncatedFockSpace second, Matrix amplitudes)
    : first_(first), second_(second), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.rows()) != first_.dim() ||
        static_cast<std::size_t>(amplitudes_.cols()) != second_.dim()) {
        throw DimensionMismatch("bipartite amplitude matrix shape does not match the factor spaces");
    }
    double norm2 = amplitudes_.squaredNorm();
    if (!(std::abs(norm2 - 1.0) <= first_.tol().trace)) {
        throw InvalidState("bipartite state is not normalized");
    }
}

Complex overlap(const BipartitePureState &lhs, const BipartitePureState &rhs) {
    if (!(lhs.first() == rhs.first()) || !(lhs.second() == rhs.second())) {
        throw DimensionMismatch("bipartite states on different spaces");
    }
    return lhs.amplitudes().conjugate().cwiseProduct(rhs.amplitudes()).sum();
}

BipartitePureState purify(const DensityOperator &rho) {
    Matrix sym = 0.5 * (rho.matrix() + rho.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    const Matrix &vecs = eig.eigenvectors();
    Eigen::VectorXd weights = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    // A = V diag(sqrt p) V^T: the second factor carries the same eigenvectors.
    Matrix amps = vecs * weights.asDiagonal() * vecs.transpose();
    double norm = amps.norm();
    if (norm == 0.0) {
        throw InvalidState("cannot purify a zero matrix");
    }
    amps /= norm;
    return BipartitePureState(rho.space(), rho.space(), std::move(amps));
}

DensityOperator partial_trace_second(const BipartitePureState &psi) {
    const Matrix &a = psi.amplitudes();
    return DensityOperator(psi.first(), a * a.adjoint());
}

double pure_outer_diff(const BipartitePureState &lhs, const BipartitePureState &rhs) {
    return distance_from_overlap(std::norm(overlap(lhs, rhs)));
}

double contractivity_gap(const BipartitePureState &lhs, const BipartitePureState &rhs) {
    double outer = pure_outer_diff(lhs, rhs);
    double reduced = trace_norm_hermitian(partial_trace_second(lhs).matrix() - partial_trace_second(rhs).matrix());
    return outer - reduced;
}

BipartitePureState apply_first(const KrausOperation &op, const BipartitePureState &psi) {
    if (!(op.space() == psi.first())) {
        throw DimensionMismatch("operation does not act on the first factor space");
    }
    const ShiftDiagonal &k = op.kraus().structure();
    const Matrix &a = psi.amplitudes();
    double lost = 0.0;
    for (std::size_t j = k.overflow_from(); j < k.dim(); ++j) {
        lost += a.row(static_cast<Eigen::Index>(j)).squaredNorm();
    }
    if (lost > op.space().tol().tail) {
        throw TruncationOverflow(op.label() + " pushes bipartite population past the top level", lost);
    }
    Matrix out = Matrix::Zero(a.rows(), a.cols());
    for (std::size_t j = 0; j < k.dim(); ++j) {
        if (auto i = k.target(j)) {
            out.row(static_cast<Eigen::Index>(*i)) = k.weight(j) * a.row(static_cast<Eigen::Index>(j));
        }
    }
    double norm2 = out.squaredNorm();
    if (!(norm2 > kMinProbability)) {
        throw VanishingProbability(op.label() + " annihilates the bipartite state", norm2);
    }
    out /= std::sqrt(norm2);
    return BipartitePureState(psi.first(), psi.second(), std::move(out));
}

DistanceReport conditional_distance(const KrausOperation &ideal, const KrausOperation &approximate,
                                    const DensityOperator &rho) {
    return trace_norm_diff(conditional(ideal, rho).state, conditional(approximate, rho).state);
}

DistanceReport conditional_distance(const KrausOperation &ideal, const KrausOperation &approximate,
                                    const PureState &psi) {
    return pure_diff(conditional(ideal, psi).state, conditional(approximate, psi).state);
}

DistanceReport conditional_distance(const KrausOperation &ideal, const KrausOperation &approximate,
                                    const DiagonalState &rho) {
    return trace_norm_diff(conditional(ideal, rho).state, conditional(approximate, rho).state);
}

LiftedOutputs lifted_outputs(const KrausOperation &ideal, const KrausOperation &approximate,
                             const DensityOperator &rho) {
    BipartitePureState lifted = purify(rho);
    BipartitePureState phi = apply_first(ideal, lifted);
    BipartitePureState chi = apply_first(approximate, lifted);
    double ov = overlap(phi, chi).real();
    return LiftedOutputs{std::move(phi), std::move(chi), ov};
}

}  // namespace fockops
