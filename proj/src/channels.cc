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

#include "fockops/channels.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fockops {

namespace {

void require_positive_gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("gamma must be a finite positive number");
    }
}

void require_positive_t(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("t must be a finite positive number");
    }
}

std::string format_label(const char *name, double value) {
    std::ostringstream os;
    os << name << "(" << value << ")";
    return os.str();
}

std::string format_label(const char *name, double value, unsigned k) {
    std::ostringstream os;
    os << name << "(" << value << "," << k << ")";
    return os.str();
}

FockOperator power(const FockOperator &op, unsigned k) {
    FockOperator result(op.space(), ShiftDiagonal(0, std::vector<double>(op.space().dim(), 1.0)),
                        OperatorLabel::composite);
    for (unsigned i = 0; i < k; ++i) {
        result = op * result;
    }
    return result;
}

// log((e^{2 gamma} - 1)^k / k!)
double log_subtraction_prefactor(double gamma, unsigned k) {
    return k * std::log(std::expm1(2.0 * gamma)) - std::lgamma(static_cast<double>(k) + 1.0);
}

double log_addition_prefactor(double gamma, unsigned k, AdditionNormalization mode) {
    if (mode == AdditionNormalization::as_written) {
        return std::log(std::expm1(2.0 * gamma));
    }
    return log_subtraction_prefactor(gamma, k);
}

FockOperator scaled(const FockOperator &op, double factor) {
    return FockOperator(op.space(), op.structure().scaled(factor), OperatorLabel::composite);
}

double lost_mass(const ShiftDiagonal &k, const auto &population_at) {
    double lost = 0.0;
    for (std::size_t j = k.overflow_from(); j < k.dim(); ++j) {
        lost += population_at(j);
    }
    return lost;
}

void guard_overflow(const KrausOperation &op, double lost) {
    if (lost > op.space().tol().tail) {
        std::ostringstream os;
        os << op.label() << " would carry population " << lost << " past the top level " << op.space().top();
        throw TruncationOverflow(os.str(), lost);
    }
}

void guard_probability(const KrausOperation &op, double trace) {
    if (!(trace > kMinProbability)) {
        std::ostringstream os;
        os << op.label() << " has output trace " << trace << "; conditional state is undefined";
        throw VanishingProbability(os.str(), trace);
    }
}

}  // namespace

KrausOperation::KrausOperation(FockOperator kraus, OperationKind kind, std::string label, std::optional<double> t,
                               std::optional<double> gamma, std::optional<unsigned> photons)
    : kraus_(std::move(kraus)),
      kind_(kind),
      label_(std::move(label)),
      t_(t),
      gamma_(gamma),
      photons_(photons),
      max_effect_(0.0),
      trace_nonincreasing_(false) {
    for (double e : effect_diagonal()) {
        max_effect_ = std::max(max_effect_, e);
    }
    bool ideal = kind_ == OperationKind::ideal_subtract || kind_ == OperationKind::ideal_add;
    trace_nonincreasing_ = !ideal && max_effect_ <= 1.0 + space().tol().psd;
}

std::vector<double> KrausOperation::effect_diagonal() const {
    const ShiftDiagonal &k = kraus_.structure();
    std::vector<double> effect(k.dim(), 0.0);
    for (std::size_t j = 0; j < k.dim(); ++j) {
        double w = k.weight(j);
        effect[j] = w * w;
    }
    return effect;
}

KrausOperation identity_operation(const TruncatedFockSpace &space) {
    FockOperator id(space, ShiftDiagonal(0, std::vector<double>(space.dim(), 1.0)), OperatorLabel::composite);
    return KrausOperation(std::move(id), OperationKind::identity, "identity");
}

KrausOperation ideal_subtract(const TruncatedFockSpace &space, double t) {
    require_positive_t(t);
    return KrausOperation(scaled(annihilation(space), std::sqrt(t)), OperationKind::ideal_subtract,
                          format_label("ideal_sub", t), t);
}

KrausOperation ideal_add(const TruncatedFockSpace &space, double t) {
    require_positive_t(t);
    return KrausOperation(scaled(creation(space), std::sqrt(t)), OperationKind::ideal_add, format_label("ideal_add", t),
                          t);
}

KrausOperation approx_subtract(const TruncatedFockSpace &space, double gamma) {
    require_positive_gamma(gamma);
    FockOperator k = scaled(annihilation(space) * damping(space, gamma), std::sqrt(std::expm1(2.0 * gamma)));
    return KrausOperation(std::move(k), OperationKind::approx_subtract, format_label("approx_sub", gamma),
                          std::nullopt, gamma, 1u);
}

KrausOperation approx_add(const TruncatedFockSpace &space, double gamma) {
    require_positive_gamma(gamma);
    FockOperator k = scaled(damping(space, gamma) * creation(space), std::sqrt(std::expm1(2.0 * gamma)));
    return KrausOperation(std::move(k), OperationKind::approx_add, format_label("approx_add", gamma), std::nullopt,
                          gamma, 1u);
}

KrausOperation approx_subtract_k(const TruncatedFockSpace &space, double gamma, unsigned k) {
    require_positive_gamma(gamma);
    if (k >= space.dim()) {
        throw std::invalid_argument("k-photon subtraction with k >= D is the zero map on the truncated space");
    }
    double factor = std::exp(0.5 * log_subtraction_prefactor(gamma, k));
    FockOperator op = scaled(power(annihilation(space), k) * damping(space, gamma), factor);
    return KrausOperation(std::move(op), OperationKind::approx_subtract_k, format_label("approx_sub_k", gamma, k),
                          std::nullopt, gamma, k);
}

KrausOperation approx_add_k(const TruncatedFockSpace &space, double gamma, unsigned k, AdditionNormalization mode) {
    require_positive_gamma(gamma);
    if (k < 1) {
        throw std::invalid_argument("k-photon addition needs k >= 1");
    }
    if (k >= space.dim()) {
        throw std::invalid_argument("k-photon addition with k >= D leaves the truncated space");
    }
    double factor = std::exp(0.5 * log_addition_prefactor(gamma, k, mode));
    FockOperator op = scaled(damping(space, gamma) * power(creation(space), k), factor);
    std::string label = format_label(mode == AdditionNormalization::as_written ? "approx_add_k" : "approx_add_k_ic",
                                     gamma, k);
    return KrausOperation(std::move(op), OperationKind::approx_add_k, std::move(label), std::nullopt, gamma, k);
}

// ---------------------------------------------------------------------------
// Application

ApplyResult apply(const KrausOperation &op, const DensityOperator &rho) {
    if (!(op.space() == rho.space())) {
        throw DimensionMismatch("operation and state live on different truncated spaces");
    }
    const ShiftDiagonal &k = op.kraus().structure();
    guard_overflow(op, lost_mass(k, [&](std::size_t j) { return rho.population(j); }));

    const Matrix &m = rho.matrix();
    auto d = static_cast<Eigen::Index>(k.dim());
    Matrix out = Matrix::Zero(d, d);
    for (std::size_t jc = 0; jc < k.dim(); ++jc) {
        auto ic = k.target(jc);
        double wc = k.weight(jc);
        if (!ic || wc == 0.0) {
            continue;
        }
        for (std::size_t jr = 0; jr < k.dim(); ++jr) {
            auto ir = k.target(jr);
            double wr = k.weight(jr);
            if (!ir || wr == 0.0) {
                continue;
            }
            out(static_cast<Eigen::Index>(*ir), static_cast<Eigen::Index>(*ic)) =
                wr * m(static_cast<Eigen::Index>(jr), static_cast<Eigen::Index>(jc)) * wc;
        }
    }
    double trace = out.trace().real();
    return ApplyResult{std::move(out), trace};
}

PureApplyResult apply(const KrausOperation &op, const PureState &psi) {
    if (!(op.space() == psi.space())) {
        throw DimensionMismatch("operation and state live on different truncated spaces");
    }
    const ShiftDiagonal &k = op.kraus().structure();
    guard_overflow(op, lost_mass(k, [&](std::size_t j) { return std::norm(psi.amplitude(j)); }));
    Vector out = k.apply(psi.amplitudes());
    double trace = out.squaredNorm();
    return PureApplyResult{std::move(out), trace};
}

DiagonalApplyResult apply(const KrausOperation &op, const DiagonalState &rho) {
    if (!(op.space() == rho.space())) {
        throw DimensionMismatch("operation and state live on different truncated spaces");
    }
    const ShiftDiagonal &k = op.kraus().structure();
    auto pops = rho.populations();
    guard_overflow(op, lost_mass(k, [&](std::size_t j) { return pops[j]; }));
    std::vector<double> out(k.dim(), 0.0);
    for (std::size_t j = 0; j < k.dim(); ++j) {
        if (auto i = k.target(j)) {
            double w = k.weight(j);
            out[*i] = w * w * pops[j];
        }
    }
    double trace = 0.0;
    for (double p : out) {
        trace += p;
    }
    return DiagonalApplyResult{std::move(out), trace};
}

ConditionalOutput conditional(const KrausOperation &op, const DensityOperator &rho) {
    ApplyResult r = apply(op, rho);
    guard_probability(op, r.trace);
    Matrix state = r.output / r.trace;
    return ConditionalOutput{DensityOperator(op.space(), std::move(state)), r.trace};
}

PureConditionalOutput conditional(const KrausOperation &op, const PureState &psi) {
    PureApplyResult r = apply(op, psi);
    guard_probability(op, r.trace);
    Vector state = r.output / std::sqrt(r.trace);
    return PureConditionalOutput{PureState(op.space(), std::move(state)), r.trace};
}

DiagonalConditionalOutput conditional(const KrausOperation &op, const DiagonalState &rho) {
    DiagonalApplyResult r = apply(op, rho);
    guard_probability(op, r.trace);
    for (double &p : r.output) {
        p /= r.trace;
    }
    return DiagonalConditionalOutput{DiagonalState(op.space(), std::move(r.output)), r.trace};
}

// ---------------------------------------------------------------------------
// Instrument completeness

std::vector<double> completeness_sums(const TruncatedFockSpace &space, double gamma, unsigned k_max) {
    require_positive_gamma(gamma);
    auto last = static_cast<unsigned>(std::min<std::size_t>(k_max, space.dim() - 1));
    std::vector<double> sums(space.dim(), 0.0);
    for (unsigned k = 0; k <= last; ++k) {
        std::vector<double> effect = approx_subtract_k(space, gamma, k).effect_diagonal();
        for (std::size_t n = 0; n < sums.size(); ++n) {
            sums[n] += effect[n];
        }
    }
    return sums;
}

double completeness_defect(const TruncatedFockSpace &space, double gamma, unsigned k_max,
                           std::optional<std::size_t> guard_levels) {
    std::vector<double> sums = completeness_sums(space, gamma, k_max);
    std::size_t levels = std::min(guard_levels.value_or(space.dim()), space.dim());
    double defect = 0.0;
    for (std::size_t n = 0; n < levels; ++n) {
        defect = std::max(defect, std::abs(1.0 - sums[n]));
    }
    return defect;
}

// ---------------------------------------------------------------------------
// Multi-photon composition

KrausOperation compose(const KrausOperation &op, unsigned k) {
    if (k < 1) {
        throw std::invalid_argument("compose needs k >= 1");
    }
    if (k == 1) {
        return op;
    }
    std::ostringstream label;
    label << op.label() << "^" << k;
    return KrausOperation(power(op.kraus(), k), OperationKind::composite, label.str(), op.t(), op.gamma(), k);
}

double multiphoton_constant(PhotonDirection direction, double gamma, unsigned k, AdditionNormalization mode) {
    require_positive_gamma(gamma);
    if (k < 1) {
        throw std::invalid_argument("multiphoton_constant needs k >= 1");
    }
    // (a e^{-gH})^k = e^{g k(k-1)/2} a^k e^{-k g H}, and likewise for
    // (e^{-gH} a^dag)^k. Squaring the Kraus ratio gives the map ratio.
    double kd = static_cast<double>(k);
    double log_composed = kd * std::log(std::expm1(2.0 * gamma)) + gamma * kd * (kd - 1.0);
    double log_target = direction == PhotonDirection::subtract ? log_subtraction_prefactor(kd * gamma, k)
                                                               : log_addition_prefactor(kd * gamma, k, mode);
    return std::exp(log_composed - log_target);
}

ProportionalityReport proportionality(const Matrix &lhs, const Matrix &rhs, double floor) {
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
        throw DimensionMismatch("proportionality check on matrices of different shape");
    }
    Complex num = (rhs.adjoint() * lhs).trace();
    double den = rhs.squaredNorm();
    if (den == 0.0) {
        throw std::invalid_argument("proportionality check against a zero matrix");
    }
    double c = num.real() / den;

    ProportionalityReport report{c, 0.0, 0};
    for (Eigen::Index col = 0; col < lhs.cols(); ++col) {
        for (Eigen::Index row = 0; row < lhs.rows(); ++row) {
            double l = std::abs(lhs(row, col));
            Complex scaled_rhs = c * rhs(row, col);
            double r = std::abs(scaled_rhs);
            bool l_above = l > floor;
            bool r_above = r > floor;
            if (l_above != r_above) {
                ++report.support_mismatches;
                continue;
            }
            if (!l_above) {
                continue;
            }
            double dev = std::abs(lhs(row, col) - scaled_rhs) / r;
            report.max_relative_deviation = std::max(report.max_relative_deviation, dev);
        }
    }
    return report;
}

}  // namespace fockops
