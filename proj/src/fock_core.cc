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

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace fockops {

namespace {

void check_tolerance(double value, const char *name) {
    if (!(value > 0.0 && value < 1e-3)) {
        throw std::invalid_argument(std::string("tolerance ") + name + " must lie in (0, 1e-3)");
    }
}

void require_same_space(const TruncatedFockSpace &a, const TruncatedFockSpace &b) {
    if (!(a == b)) {
        throw DimensionMismatch("operands live on truncated spaces of different dimension");
    }
}

}  // namespace

TruncatedFockSpace::TruncatedFockSpace(std::size_t dim, Tolerances tol) : dim_(dim), tol_(tol) {
    if (dim < 2) {
        throw std::invalid_argument("truncated Fock space needs dim >= 2");
    }
    check_tolerance(tol.herm, "herm");
    check_tolerance(tol.psd, "psd");
    check_tolerance(tol.trace, "trace");
    check_tolerance(tol.tail, "tail");
}

// ---------------------------------------------------------------------------
// ShiftDiagonal

namespace {
constexpr std::size_t kDefaultOverflow = static_cast<std::size_t>(-1);
}  // namespace

ShiftDiagonal::ShiftDiagonal(long shift, std::vector<double> weights)
    : ShiftDiagonal(shift, std::move(weights), kDefaultOverflow) {
}

ShiftDiagonal::ShiftDiagonal(long shift, std::vector<double> weights, std::size_t overflow_from)
    : shift_(shift), weights_(std::move(weights)), overflow_from_(weights_.size()) {
    if (overflow_from == kDefaultOverflow) {
        if (shift_ > 0) {
            overflow_from_ = static_cast<std::size_t>(std::max<long>(0, static_cast<long>(weights_.size()) - shift_));
        }
    } else {
        overflow_from_ = std::min(overflow_from, weights_.size());
    }
    // Zero out weights that would map outside the space so that every
    // stored entry is a real matrix element.
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        if (!target(j)) {
            weights_[j] = 0.0;
        }
    }
}

std::optional<std::size_t> ShiftDiagonal::target(std::size_t column) const noexcept {
    long row = static_cast<long>(column) + shift_;
    if (row < 0 || row >= static_cast<long>(weights_.size())) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(row);
}

ShiftDiagonal ShiftDiagonal::scaled(double factor) const {
    std::vector<double> w(weights_);
    for (auto &x : w) {
        x *= factor;
    }
    return ShiftDiagonal(shift_, std::move(w), overflow_from_);
}

ShiftDiagonal ShiftDiagonal::adjoint() const {
    // (j + s, j) -> (j, j + s): new column i = j + s carries weight w_j.
    std::vector<double> w(weights_.size(), 0.0);
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        if (auto row = target(j)) {
            w[*row] = weights_[j];
        }
    }
    return ShiftDiagonal(-shift_, std::move(w));
}

Matrix ShiftDiagonal::dense() const {
    auto d = static_cast<Eigen::Index>(weights_.size());
    Matrix m = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        if (auto row = target(j)) {
            m(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(j)) = weights_[j];
        }
    }
    return m;
}

Vector ShiftDiagonal::apply(const Vector &v) const {
    if (static_cast<std::size_t>(v.size()) != weights_.size()) {
        throw DimensionMismatch("vector length does not match operator dimension");
    }
    Vector out = Vector::Zero(v.size());
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        if (auto row = target(j)) {
            out(static_cast<Eigen::Index>(*row)) += weights_[j] * v(static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

ShiftDiagonal operator*(const ShiftDiagonal &lhs, const ShiftDiagonal &rhs) {
    if (lhs.dim() != rhs.dim()) {
        throw DimensionMismatch("operator product across different dimensions");
    }
    std::vector<double> w(rhs.dim(), 0.0);
    for (std::size_t j = 0; j < rhs.dim(); ++j) {
        if (auto mid = rhs.target(j)) {
            if (lhs.target(*mid)) {
                w[j] = lhs.weights_[*mid] * rhs.weights_[j];
            }
        }
    }
    long through = static_cast<long>(lhs.overflow_from_) - rhs.shift_;
    std::size_t overflow = rhs.overflow_from_;
    if (through < static_cast<long>(overflow)) {
        overflow = static_cast<std::size_t>(std::max<long>(0, through));
    }
    return ShiftDiagonal(lhs.shift_ + rhs.shift_, std::move(w), overflow);
}

// ---------------------------------------------------------------------------
// FockOperator

std::string to_string(OperatorLabel label) {
    switch (label) {
        case OperatorLabel::annihilation:
            return "annihilation";
        case OperatorLabel::creation:
            return "creation";
        case OperatorLabel::number:
            return "number";
        case OperatorLabel::damping:
            return "damping";
        case OperatorLabel::composite:
            return "composite";
    }
    return "unknown";
}

FockOperator::FockOperator(TruncatedFockSpace space, ShiftDiagonal structure, OperatorLabel label,
                           std::optional<double> gamma)
    : space_(space), structure_(std::move(structure)), label_(label), gamma_(gamma) {
    if (structure_.dim() != space_.dim()) {
        throw DimensionMismatch("operator structure does not match space dimension");
    }
}

FockOperator FockOperator::adjoint() const {
    OperatorLabel label = OperatorLabel::composite;
    if (label_ == OperatorLabel::annihilation) {
        label = OperatorLabel::creation;
    } else if (label_ == OperatorLabel::creation) {
        label = OperatorLabel::annihilation;
    } else if (label_ == OperatorLabel::number || label_ == OperatorLabel::damping) {
        label = label_;
    }
    return FockOperator(space_, structure_.adjoint(), label, gamma_);
}

FockOperator operator*(const FockOperator &lhs, const FockOperator &rhs) {
    require_same_space(lhs.space_, rhs.space_);
    return FockOperator(lhs.space_, lhs.structure_ * rhs.structure_, OperatorLabel::composite);
}

FockOperator annihilation(const TruncatedFockSpace &space) {
    std::vector<double> w(space.dim());
    for (std::size_t n = 0; n < w.size(); ++n) {
        w[n] = std::sqrt(static_cast<double>(n));
    }
    return FockOperator(space, ShiftDiagonal(-1, std::move(w)), OperatorLabel::annihilation);
}

FockOperator creation(const TruncatedFockSpace &space) {
    std::vector<double> w(space.dim());
    for (std::size_t n = 0; n < w.size(); ++n) {
        w[n] = std::sqrt(static_cast<double>(n + 1));
    }
    return FockOperator(space, ShiftDiagonal(1, std::move(w)), OperatorLabel::creation);
}

FockOperator number_operator(const TruncatedFockSpace &space) {
    std::vector<double> w(space.dim());
    std::iota(w.begin(), w.end(), 0.0);
    return FockOperator(space, ShiftDiagonal(0, std::move(w)), OperatorLabel::number);
}

FockOperator damping(const TruncatedFockSpace &space, double gamma) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("damping requires gamma > 0");
    }
    std::vector<double> w(space.dim());
    for (std::size_t n = 0; n < w.size(); ++n) {
        w[n] = std::exp(-gamma * static_cast<double>(n));
    }
    return FockOperator(space, ShiftDiagonal(0, std::move(w)), OperatorLabel::damping, gamma);
}

// ---------------------------------------------------------------------------
// States

PureState::PureState(TruncatedFockSpace space, Vector amplitudes)
    : space_(space), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != space_.dim()) {
        throw DimensionMismatch("amplitude vector length does not match space dimension");
    }
    double norm2 = amplitudes_.squaredNorm();
    if (!(std::abs(norm2 - 1.0) <= space_.tol().trace)) {
        throw InvalidState("pure state is not normalized (|psi|^2 = " + std::to_string(norm2) + ")");
    }
}

double PureState::tail_mass() const {
    return std::norm(amplitudes_(amplitudes_.size() - 1));
}

DensityOperator::DensityOperator(TruncatedFockSpace space, Matrix matrix)
    : space_(space), matrix_(std::move(matrix)) {
    auto d = static_cast<Eigen::Index>(space_.dim());
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw DimensionMismatch("density matrix shape does not match space dimension");
    }
}

bool DensityOperator::is_diagonal() const {
    double tol = space_.tol().herm;
    for (Eigen::Index c = 0; c < matrix_.cols(); ++c) {
        for (Eigen::Index r = 0; r < matrix_.rows(); ++r) {
            if (r != c && std::abs(matrix_(r, c)) > tol) {
                return false;
            }
        }
    }
    return true;
}

DiagonalState::DiagonalState(TruncatedFockSpace space, std::vector<double> populations)
    : space_(space), populations_(std::move(populations)) {
    if (populations_.size() != space_.dim()) {
        throw DimensionMismatch("population vector length does not match space dimension");
    }
    for (double p : populations_) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw InvalidState("diagonal state has a negative or non-finite population");
        }
    }
}

double DiagonalState::trace() const {
    return std::accumulate(populations_.begin(), populations_.end(), 0.0);
}

DensityOperator DiagonalState::dense() const {
    auto d = static_cast<Eigen::Index>(populations_.size());
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        m(i, i) = populations_[static_cast<std::size_t>(i)];
    }
    return DensityOperator(space_, std::move(m));
}

PureState fock_state(const TruncatedFockSpace &space, std::size_t n) {
    if (n >= space.dim()) {
        throw std::invalid_argument("Fock level " + std::to_string(n) + " is outside the truncated space");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(space.dim()));
    v(static_cast<Eigen::Index>(n)) = 1.0;
    return PureState(space, std::move(v));
}

PureState superposition(const TruncatedFockSpace &space,
                        std::span<const std::pair<std::size_t, Complex>> coefficients) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(space.dim()));
    for (const auto &[n, c] : coefficients) {
        if (n >= space.dim()) {
            throw std::invalid_argument("superposition index " + std::to_string(n) + " is outside the space");
        }
        v(static_cast<Eigen::Index>(n)) += c;
    }
    double norm = v.norm();
    if (norm == 0.0) {
        throw std::invalid_argument("superposition of all-zero coefficients");
    }
    v /= norm;
    return PureState(space, std::move(v));
}

PureState superposition(const TruncatedFockSpace &space,
                        std::initializer_list<std::pair<std::size_t, Complex>> coefficients) {
    return superposition(space, std::span<const std::pair<std::size_t, Complex>>(coefficients.begin(),
                                                                                 coefficients.size()));
}

DensityOperator density_from_pure(const PureState &psi) {
    const Vector &v = psi.amplitudes();
    return DensityOperator(psi.space(), v * v.adjoint());
}

namespace {

template <typename PopulationAt>
EnergyMoments moments_from_populations(std::size_t dim, PopulationAt population) {
    double f1 = 0.0;
    double f2 = 0.0;
    for (std::size_t n = 1; n < dim; ++n) {
        double p = population(n);
        double x = static_cast<double>(n);
        f1 += p * x;
        f2 += p * x * x;
    }
    return EnergyMoments{f1, f2, f2 - f1 * f1};
}

}  // namespace

EnergyMoments energy_moments(const DensityOperator &rho) {
    return moments_from_populations(rho.space().dim(), [&](std::size_t n) { return rho.population(n); });
}

EnergyMoments energy_moments(const PureState &psi) {
    return moments_from_populations(psi.space().dim(), [&](std::size_t n) { return std::norm(psi.amplitude(n)); });
}

EnergyMoments energy_moments(const DiagonalState &rho) {
    auto pops = rho.populations();
    return moments_from_populations(pops.size(), [&](std::size_t n) { return pops[n]; });
}

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck &c) { return c.passed; });
}

const ValidationCheck *ValidationReport::find(const std::string &name) const {
    for (const auto &c : checks) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

ValidationReport validate(const DensityOperator &rho) {
    const Tolerances &tol = rho.space().tol();
    const Matrix &m = rho.matrix();
    ValidationReport report;

    double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    report.checks.push_back({"hermitian", herm_dev <= tol.herm, herm_dev, tol.herm});

    Matrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
    double min_eig = eig.eigenvalues().minCoeff();
    double psd_dev = std::max(0.0, -min_eig);
    report.checks.push_back({"psd", min_eig >= -tol.psd, psd_dev, tol.psd});

    double trace_dev = std::abs(m.trace().real() - 1.0);
    report.checks.push_back({"trace", trace_dev <= tol.trace, trace_dev, tol.trace});

    double tail = rho.population(rho.space().top());
    report.checks.push_back({"tail", tail <= tol.tail, tail, tol.tail});
    return report;
}

ValidationReport validate(const PureState &psi) {
    const Tolerances &tol = psi.space().tol();
    ValidationReport report;
    double norm_dev = std::abs(psi.amplitudes().squaredNorm() - 1.0);
    report.checks.push_back({"trace", norm_dev <= tol.trace, norm_dev, tol.trace});
    double tail = psi.tail_mass();
    report.checks.push_back({"tail", tail <= tol.tail, tail, tol.tail});
    return report;
}

void require_valid(const DensityOperator &rho) {
    ValidationReport report = validate(rho);
    for (const auto &c : report.checks) {
        if (!c.passed && c.name == "tail") {
            throw TruncationInsufficient("population on the top retained level exceeds tail_tol", c.deviation, 0);
        }
        if (!c.passed) {
            throw InvalidState("density operator fails " + c.name + " check (deviation " +
                               std::to_string(c.deviation) + ", tolerance " + std::to_string(c.tolerance) + ")");
        }
    }
}

double purity(const DensityOperator &rho) {
    const Matrix &m = rho.matrix();
    return (m * m).trace().real();
}

}  // namespace fockops
