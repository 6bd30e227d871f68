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

#ifndef FOCKOPS_ANALYTIC_H
#define FOCKOPS_ANALYTIC_H

#include <cstddef>

namespace fockops {

/// A series evaluation together with a bound on what was left out.
struct SeriesValue {
    double value;
    /// Upper bound on |value - exact|.
    double tail_bound;
    std::size_t terms_used;
};

/// Riemann zeta for real s > 1 by Euler-Maclaurin summation.
SeriesValue zeta(double s);

/// sum_{n >= start} n^{-s} for s > 1 and start >= 1.
SeriesValue zeta_tail(double s, std::size_t start);

/// Li_s(z) = sum_{n >= 1} z^n / n^s for real s and 0 < z < 1.
SeriesValue polylog(double s, double z);

/// ||ideal - approximate||_1 for one-photon subtraction applied to the
/// state with populations n^{-s} / zeta(s), n >= 1:
///   sum_n n^{1-s} | e^{-2 gamma n} / Li_{s-1}(e^{-2 gamma}) - 1 / zeta(s-1) |.
/// Requires s > 2 and gamma > 0.
SeriesValue prop1_distance(double s, double gamma);

struct Prop1Thresholds {
    /// (1/2) ln(e - 1): the distance every gamma can be pushed to.
    double distance;
    /// (1/2) ln(e / (e - 1)): where the argument switches branches.
    double gamma_split;
};

Prop1Thresholds prop1_thresholds();

/// Distance bound after linearizing e^{-x} >= 1 - x. `intermediate` is
/// 2 sqrt(1 - x^2) with x the linearized overlap; `bound` is the looser
/// square-root form.
struct BoundValue {
    double bound;
    double intermediate;
};

/// sqrt(8 gamma (1 + 2 f1 + f2) / (f1 + 1)). Throws RegimeViolation when
/// gamma (1 + 2 f1 + f2) >= f1 + 1.
BoundValue addition_bound(double gamma, double f1, double f2);

/// sqrt(8 gamma f2 / f1). Throws RegimeViolation when gamma f2 >= f1.
BoundValue subtraction_bound(double gamma, double f1, double f2);

/// eps^2 / (8 (3E + 2)).
double gamma_for_addition(double epsilon, double energy_bound);
/// E1 eps^2 / (8 E2).
double gamma_for_subtraction(double epsilon, double e1, double e2);

enum class OperationSide { addition, subtraction };

/// Halved trace-distance estimate from energy F and variance sigma2:
/// addition sqrt(2 gamma ((F+1)^2 + sigma2) / (F+1)),
/// subtraction sqrt(2 gamma (F^2 + sigma2) / F).
double variance_accuracy(OperationSide side, double gamma, double energy, double variance);

}  // namespace fockops

#endif
