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

#include "fockops/analytic.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fockops/errors.h"

namespace fockops {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Direct-summation length before the Euler-Maclaurin correction.
constexpr std::size_t kDirectTerms = 50;

// B_2, B_4, ..., B_18. The last one only feeds the remainder bound.
constexpr std::array<double, 9> kBernoulli = {
    1.0 / 6.0,       -1.0 / 30.0,          1.0 / 42.0,     -1.0 / 30.0,          5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,            -3617.0 / 510.0, 43867.0 / 798.0,
};

// Partial sums stop once the geometric remainder drops below this
// fraction of the running value.
constexpr double kSeriesRelTol = 1e-17;
constexpr std::size_t kMaxPolylogTerms = 50'000'000;

struct TailSum {
    double value;
    double bound;
    std::size_t terms;
};

// sum_{n >= start} n^{-s} z^n by direct summation with a geometric
// remainder bound. Requires 0 < z < 1.
TailSum weighted_tail(double s, double z, std::size_t start) {
    double log_z = std::log(z);
    double sum = 0.0;
    double compensation = 0.0;
    std::size_t n = start;
    std::size_t terms = 0;
    while (true) {
        double nd = static_cast<double>(n);
        double term = std::exp(nd * log_z - s * std::log(nd));
        // Kahan summation keeps long tails near z = 1 accurate.
        double y = term - compensation;
        double t = sum + y;
        compensation = (t - sum) - y;
        sum = t;
        ++terms;
        ++n;

        // Remainder sum_{m >= n} m^{-s} z^m.
        double next = static_cast<double>(n);
        double ratio = s >= 0.0 ? z : z * std::pow((next + 1.0) / next, -s);
        if (ratio < 1.0) {
            double first = std::exp(next * log_z - s * std::log(next));
            double bound = first / (1.0 - ratio);
            if (bound <= kSeriesRelTol * std::abs(sum) || bound == 0.0 || terms >= kMaxPolylogTerms) {
                return TailSum{sum, bound + 4.0 * kEps * std::abs(sum), terms};
            }
        } else if (terms >= kMaxPolylogTerms) {
            return TailSum{sum, std::numeric_limits<double>::infinity(), terms};
        }
    }
}

}  // namespace

SeriesValue zeta_tail(double s, std::size_t start) {
    if (!(s > 1.0) || !std::isfinite(s)) {
        throw std::invalid_argument("zeta needs real s > 1");
    }
    if (start < 1) {
        throw std::invalid_argument("zeta_tail needs start >= 1");
    }
    std::size_t cut = std::max(start, kDirectTerms);
    double direct = 0.0;
    for (std::size_t n = cut; n-- > start;) {
        direct += std::pow(static_cast<double>(n), -s);
    }

    // Euler-Maclaurin at M = cut:
    //   sum_{n >= M} n^{-s} = M^{1-s}/(s-1) + M^{-s}/2
    //     + sum_j B_{2j}/(2j)! s(s+1)...(s+2j-2) M^{-s-2j+1} + R.
    double m = static_cast<double>(cut);
    double correction = std::pow(m, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(m, -s);
    // rising = s(s+1)...(s+2j-2) / (2j)!, power = M^{-s-2j+1}
    double rising = s / 2.0;
    double power = std::pow(m, -s - 1.0);
    double omitted = 0.0;
    for (std::size_t j = 1; j <= kBernoulli.size(); ++j) {
        double term = kBernoulli[j - 1] * rising * power;
        if (j == kBernoulli.size()) {
            // For x^{-s} the remainder is bounded by the first omitted term.
            omitted = std::abs(term);
        } else {
            correction += term;
        }
        double k = static_cast<double>(2 * j);
        rising *= (s + k - 1.0) * (s + k) / ((k + 1.0) * (k + 2.0));
        power /= m * m;
    }
    double value = direct + correction;
    double rounding = 8.0 * kEps * (std::abs(direct) + std::abs(correction));
    return SeriesValue{value, omitted + rounding, cut - start + kBernoulli.size() + 1};
}

SeriesValue zeta(double s) {
    return zeta_tail(s, 1);
}

SeriesValue polylog(double s, double z) {
    if (!(z > 0.0 && z < 1.0)) {
        throw std::invalid_argument("polylog needs 0 < z < 1");
    }
    if (!std::isfinite(s)) {
        throw std::invalid_argument("polylog order must be finite");
    }
    TailSum t = weighted_tail(s, z, 1);
    return SeriesValue{t.value, t.bound, t.terms};
}

SeriesValue prop1_distance(double s, double gamma) {
    if (!(s > 2.0) || !std::isfinite(s)) {
        throw std::invalid_argument("prop1_distance needs s > 2");
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("prop1_distance needs gamma > 0");
    }
    // Output populations on level n-1:
    //   ideal        q_n = n^{1-s} / zeta(s-1)
    //   approximate  p_n = n^{1-s} z^n / Li_{s-1}(z),  z = e^{-2 gamma}.
    // p_n / q_n decreases in n, so |p_n - q_n| has a single sign change at
    // n* = ln(zeta / Li) / (2 gamma).
    double order = s - 1.0;
    double z = std::exp(-2.0 * gamma);
    SeriesValue zv = zeta(order);
    SeriesValue lv = polylog(order, z);
    double zeta_val = zv.value;
    double li_val = lv.value;

    double crossover = std::log(zeta_val / li_val) / (2.0 * gamma);
    auto split = static_cast<std::size_t>(std::max(0.0, std::floor(crossover)));

    double head = 0.0;
    for (std::size_t n = 1; n <= split; ++n) {
        double nd = static_cast<double>(n);
        double base = std::pow(nd, 1.0 - s);
        double p = std::exp(-2.0 * gamma * nd) / li_val;
        head += base * (p - 1.0 / zeta_val);
    }
    SeriesValue q_tail_raw = zeta_tail(order, split + 1);
    TailSum p_tail_raw = weighted_tail(order, z, split + 1);
    double q_tail = q_tail_raw.value / zeta_val;
    double p_tail = p_tail_raw.value / li_val;
    double value = std::max(0.0, head + (q_tail - p_tail));

    double rel_zeta = zv.tail_bound / zeta_val;
    double rel_li = lv.tail_bound / li_val;
    double bound = 2.0 * (rel_zeta + rel_li) + q_tail_raw.tail_bound / zeta_val + p_tail_raw.bound / li_val +
                   8.0 * kEps * static_cast<double>(split + 1);
    std::size_t terms = zv.terms_used + lv.terms_used + split + q_tail_raw.terms_used + p_tail_raw.terms;
    return SeriesValue{value, bound, terms};
}

Prop1Thresholds prop1_thresholds() {
    double log_em1 = std::log(std::numbers::e - 1.0);
    return Prop1Thresholds{0.5 * log_em1, 0.5 * (1.0 - log_em1)};
}

namespace {

void require_gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("gamma must be a finite positive number");
    }
}

BoundValue from_linearized_overlap(double x, double excess) {
    // x = 1 - excess; 2 sqrt(1 - x^2) <= 2 sqrt(2 excess) = sqrt(8 excess).
    return BoundValue{std::sqrt(8.0 * excess), 2.0 * std::sqrt(std::max(0.0, 1.0 - x * x))};
}

}  // namespace

BoundValue addition_bound(double gamma, double f1, double f2) {
    require_gamma(gamma);
    if (!(f1 >= 0.0) || !(f2 >= f1)) {
        throw std::invalid_argument("addition_bound needs 0 <= f1 <= f2");
    }
    double load = gamma * (1.0 + 2.0 * f1 + f2);
    if (!(load < f1 + 1.0)) {
        throw RegimeViolation("addition bound is vacuous: gamma (1 + 2 f1 + f2) >= f1 + 1");
    }
    double excess = load / (f1 + 1.0);
    return from_linearized_overlap(1.0 - excess, excess);
}

BoundValue subtraction_bound(double gamma, double f1, double f2) {
    require_gamma(gamma);
    if (!(f1 > 0.0) || !(f2 >= f1)) {
        throw std::invalid_argument("subtraction_bound needs 0 < f1 <= f2");
    }
    double load = gamma * f2;
    if (!(load < f1)) {
        throw RegimeViolation("subtraction bound is vacuous: gamma f2 >= f1");
    }
    double excess = load / f1;
    return from_linearized_overlap(1.0 - excess, excess);
}

double gamma_for_addition(double epsilon, double energy_bound) {
    if (!(epsilon > 0.0 && epsilon < 2.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 2)");
    }
    if (!(energy_bound > 0.0)) {
        throw std::invalid_argument("energy bound must be positive");
    }
    return epsilon * epsilon / (8.0 * (3.0 * energy_bound + 2.0));
}

double gamma_for_subtraction(double epsilon, double e1, double e2) {
    if (!(epsilon > 0.0 && epsilon < 2.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 2)");
    }
    if (!(e1 > 0.0) || !(e2 >= e1)) {
        throw std::invalid_argument("gamma_for_subtraction needs 0 < E1 <= E2");
    }
    return e1 * epsilon * epsilon / (8.0 * e2);
}

double variance_accuracy(OperationSide side, double gamma, double energy, double variance) {
    require_gamma(gamma);
    if (!(variance >= 0.0)) {
        throw std::invalid_argument("variance must be nonnegative");
    }
    if (side == OperationSide::addition) {
        if (!(energy >= 0.0)) {
            throw std::invalid_argument("energy must be nonnegative");
        }
        double shifted = energy + 1.0;
        return std::sqrt(2.0 * gamma * (shifted * shifted + variance) / shifted);
    }
    if (!(energy > 0.0)) {
        throw std::invalid_argument("subtraction accuracy needs positive energy");
    }
    return std::sqrt(2.0 * gamma * (energy * energy + variance) / energy);
}

}  // namespace fockops
