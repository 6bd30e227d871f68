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


#include "fockops/cli.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "fockops/analytic.h"
#include "fockops/channels.h"
#include "fockops/families.h"
#include "fockops/metrics.h"

namespace fockops {

namespace {

constexpr double kBoundSlack = 1e-8;
// Series and truncated-matrix values count as certified when their
// combined error budget is this small.
constexpr double kCertifiedAgreement = 1e-6;
constexpr double kLimitTolerance = 1e-3;
constexpr double kCompletenessTolerance = 1e-8;
constexpr double kProportionalityTolerance = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Runs fn(0..n-1) on a small thread pool. Results are stored by index, and
// the lowest-index exception wins, so the outcome never depends on timing.
template <typename F>
auto parallel_map(std::size_t n, F fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using T = decltype(fn(std::size_t{}));
    std::vector<std::optional<T>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    workers = std::min(workers, std::max<std::size_t>(n, 1));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i]) {
            std::rethrow_exception(errors[i]);
        }
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

class Resolver {
   public:
    explicit Resolver(RunResult &result) : result_(result) {
    }

    double real(const char *name, std::optional<double> value, double fallback) {
        double v = value.value_or(fallback);
        if (!std::isfinite(v)) {
            throw ConfigError(std::string(name) + " must be finite");
        }
        result_.config.emplace_back(name, v);
        return v;
    }
    double positive(const char *name, std::optional<double> value, double fallback) {
        double v = real(name, value, fallback);
        if (!(v > 0.0)) {
            throw ConfigError(std::string(name) + " must be positive");
        }
        return v;
    }
    std::size_t count(const char *name, std::optional<std::size_t> value, std::size_t fallback,
                      std::size_t minimum) {
        std::size_t v = value.value_or(fallback);
        if (v < minimum) {
            throw ConfigError(std::string(name) + " must be at least " + std::to_string(minimum));
        }
        result_.config.emplace_back(name, static_cast<std::int64_t>(v));
        return v;
    }
    void record(const char *name, Cell value) {
        result_.config.emplace_back(name, std::move(value));
    }

   private:
    RunResult &result_;
};

double epsilon_of(Resolver &r, const RunConfig &c) {
    double eps = r.positive("epsilon", c.epsilon, 0.1);
    if (!(eps < 2.0)) {
        throw ConfigError("epsilon must lie in (0, 2)");
    }
    return eps;
}

// ---------------------------------------------------------------------------

void run_prop1(const RunConfig &c, Resolver &r, RunResult &out) {
    double gamma = r.positive("gamma", c.gamma, 0.5);
    double s_min = r.real("s_min", c.s_min, 2.001);
    double s_max = r.real("s_max", c.s_max, 4.0);
    std::size_t steps = r.count("s_steps", c.s_steps, 48, 2);
    std::size_t dim = r.count("dim", c.dim, 4000, 2);
    if (!(s_min > 2.0) || !(s_max > s_min)) {
        throw ConfigError("need 2 < s_min < s_max");
    }
    double target = prop1_thresholds().distance;
    r.record("threshold", target);

    TruncatedFockSpace space(dim);
    KrausOperation ideal = ideal_subtract(space);
    KrausOperation approx = approx_subtract(space, gamma);

    Prop1Witness w = find_prop1_witness(gamma, std::nullopt, s_max, steps, s_min - 2.0);

    std::vector<std::pair<std::string, double>> points;
    for (const auto &[s, value] : w.grid) {
        points.emplace_back("grid", s);
    }
    if (w.found) {
        points.emplace_back("witness", w.s);
        points.emplace_back("edge", w.boundary_s);
    }

    auto rows = parallel_map(points.size(), [&](std::size_t i) {
        double s = points[i].second;
        SeriesValue series = prop1_distance(s, gamma);
        TruncatedZetaState z = zeta_state_diagonal(s, space);
        double matrix = conditional_distance(ideal, approx, z.state).value;
        // Each renormalized output moves by at most twice its neglected
        // mass, and the approximate output's tail is the lighter one.
        double ideal_tail = zeta_tail(s - 1.0, dim).value / zeta(s - 1.0).value;
        double truncation = 4.0 * ideal_tail;
        double allowed = series.tail_bound + truncation + 1e-12;
        double diff = std::abs(series.value - matrix);
        return Row{{"kind", points[i].first},
                   {"s", s},
                   {"series_value", series.value},
                   {"series_tail_bound", series.tail_bound},
                   {"matrix_value", matrix},
                   {"truncation_bound", truncation},
                   {"difference", diff},
                   {"allowed_difference", allowed},
                   {"threshold", target},
                   {"reaches_threshold", series.value >= target},
                   {"certified", allowed <= kCertifiedAgreement},
                   {"agrees", diff <= allowed}};
    });

    bool agrees = std::all_of(rows.begin(), rows.end(), [](const Row &row) { return std::get<bool>(row.back().second); });
    out.rows = std::move(rows);
    out.pass = w.found && agrees;
}

void run_propN(const RunConfig &c, Resolver &r, RunResult &out, WitnessFamily family) {
    double energy = r.positive("energy", c.energy, family == WitnessFamily::prop2 ? 1.0 : 2.0);
    double gamma = r.positive("gamma", c.gamma, 0.2);
    std::size_t dim = c.n_max ? *c.n_max + 2 : c.dim.value_or(2002);
    r.count("dim", dim, dim, 2);
    r.record("n_max", static_cast<std::int64_t>(dim - 2));
    double limit = propN_limit(family, energy);
    double target = family == WitnessFamily::prop2 ? 0.5 * limit : 1.0;
    r.record("target", target);
    r.record("limit", limit);
    r.record("limit_tolerance", kLimitTolerance);

    TruncatedFockSpace space(dim);
    PropNWitness w = find_propN_witness(family, energy, gamma, target, space);
    for (const auto &[n, value] : w.scan) {
        out.rows.push_back(Row{{"n", static_cast<std::int64_t>(n)},
                               {"value", value},
                               {"target", target},
                               {"limit", limit},
                               {"reaches_target", value >= target},
                               {"distance_to_limit", std::abs(value - limit)}});
    }
    bool near_limit = !w.scan.empty() && std::abs(w.scan.back().second - limit) <= kLimitTolerance;
    out.pass = w.found && near_limit;
}

void run_uniform(const RunConfig &c, Resolver &r, RunResult &out, OperationSide side) {
    double eps = epsilon_of(r, c);
    std::optional<ConstraintSet> set;
    double gamma = 0.0;
    if (side == OperationSide::addition) {
        double energy = r.positive("energy", c.energy, 4.0);
        set = ConstraintSet::second_moment(energy);
        gamma = r.positive("gamma", c.gamma, gamma_for_addition(eps, energy));
    } else {
        double e1 = r.positive("e1", c.e1, 0.5);
        double e2 = r.positive("e2", c.e2, 4.0);
        set = ConstraintSet::energy_and_second_moment(e1, e2);
        gamma = r.positive("gamma", c.gamma, gamma_for_subtraction(eps, e1, e2));
    }
    std::size_t dim = r.count("dim", c.dim, 64, 5);
    std::size_t count = r.count("count", c.count, 100, 1);
    r.record("seed", static_cast<std::int64_t>(c.seed));
    r.record("constraint", set->describe());
    r.record("bound_slack", kBoundSlack);

    TruncatedFockSpace space(dim);
    std::vector<DensityOperator> states = sample_constrained(*set, space, c.seed, count);
    KrausOperation ideal = side == OperationSide::addition ? ideal_add(space) : ideal_subtract(space);
    KrausOperation approx =
        side == OperationSide::addition ? approx_add(space, gamma) : approx_subtract(space, gamma);

    auto rows = parallel_map(states.size(), [&](std::size_t i) {
        EnergyMoments m = energy_moments(states[i]);
        double measured = conditional_distance(ideal, approx, states[i]).value;
        double bound = kInf;
        try {
            bound = side == OperationSide::addition ? addition_bound(gamma, m.f1, m.f2).bound
                                                    : subtraction_bound(gamma, m.f1, m.f2).bound;
        } catch (const RegimeViolation &) {
            // Vacuous at this gamma; only the epsilon test applies.
        }
        bool below = measured < eps;
        bool within = measured <= bound + kBoundSlack;
        return Row{{"state", static_cast<std::int64_t>(i)},
                   {"f1", m.f1},
                   {"f2", m.f2},
                   {"measured", measured},
                   {"bound", bound},
                   {"epsilon", eps},
                   {"tolerance", kBoundSlack},
                   {"below_epsilon", below},
                   {"within_bound", within},
                   {"pass", below && within}};
    });
    out.pass = std::all_of(rows.begin(), rows.end(), [](const Row &row) { return std::get<bool>(row.back().second); });
    out.rows = std::move(rows);
}

void run_completeness(const RunConfig &c, Resolver &r, RunResult &out) {
    double gamma = r.positive("gamma", c.gamma, 0.5);
    std::size_t dim = r.count("dim", c.dim, 40, 2);
    std::size_t k_max = r.count("k_max", c.n_max, dim - 1, 0);
    r.record("tolerance", kCompletenessTolerance);
    TruncatedFockSpace space(dim);
    std::vector<double> sums = completeness_sums(space, gamma, static_cast<unsigned>(std::min(k_max, dim - 1)));
    // Levels n <= K_max receive every outcome k = 0..n.
    bool pass = true;
    for (std::size_t n = 0; n < dim; ++n) {
        double defect = std::abs(1.0 - sums[n]);
        bool guarded = n <= k_max;
        bool ok = !guarded || defect <= kCompletenessTolerance;
        pass = pass && ok;
        out.rows.push_back(Row{{"level", static_cast<std::int64_t>(n)},
                               {"sum", sums[n]},
                               {"defect", defect},
                               {"tolerance", kCompletenessTolerance},
                               {"guarded", guarded},
                               {"pass", ok}});
    }
    out.pass = pass;
}

void run_multik(const RunConfig &c, Resolver &r, RunResult &out) {
    std::size_t dim = r.count("dim", c.dim, 24, 8);
    std::size_t k_max = r.count("k_max", c.n_max, 3, 2);
    std::size_t count = r.count("count", c.count, 3, 1);
    r.record("seed", static_cast<std::int64_t>(c.seed));
    r.record("tolerance", kProportionalityTolerance);
    if (k_max + 2 >= dim) {
        throw ConfigError("multik needs k_max + 2 < dim");
    }
    std::vector<double> gammas = c.gamma ? std::vector<double>{*c.gamma} : std::vector<double>{0.1, 0.5};
    for (double g : gammas) {
        if (!(g > 0.0) || !std::isfinite(g)) {
            throw ConfigError("gamma must be positive");
        }
        r.record("gamma", g);
    }

    TruncatedFockSpace space(dim);
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> normal;
    std::size_t support = dim - k_max - 1;
    std::vector<DensityOperator> states;
    for (std::size_t i = 0; i < count; ++i) {
        auto d = static_cast<Eigen::Index>(dim);
        Matrix m = Matrix::Zero(d, d);
        for (int rank = 0; rank < 2; ++rank) {
            Vector v = Vector::Zero(d);
            for (std::size_t n = 0; n < support; ++n) {
                v(static_cast<Eigen::Index>(n)) = Complex(normal(rng), normal(rng));
            }
            m += v * v.adjoint();
        }
        states.emplace_back(space, m / m.trace().real());
    }

    struct Job {
        unsigned k;
        double gamma;
        PhotonDirection direction;
        std::size_t state;
    };
    std::vector<Job> jobs;
    for (unsigned k = 2; k <= k_max; ++k) {
        for (double g : gammas) {
            for (PhotonDirection dir : {PhotonDirection::subtract, PhotonDirection::add}) {
                for (std::size_t i = 0; i < count; ++i) {
                    jobs.push_back({k, g, dir, i});
                }
            }
        }
    }
    auto rows = parallel_map(jobs.size(), [&](std::size_t j) {
        const Job &job = jobs[j];
        const DensityOperator &rho = states[job.state];
        bool sub = job.direction == PhotonDirection::subtract;
        auto mode = AdditionNormalization::instrument_consistent;
        KrausOperation single = sub ? approx_subtract(space, job.gamma) : approx_add(space, job.gamma);
        KrausOperation direct = sub ? approx_subtract_k(space, job.k * job.gamma, job.k)
                                    : approx_add_k(space, job.k * job.gamma, job.k, mode);
        ProportionalityReport rep =
            proportionality(apply(compose(single, job.k), rho).output, apply(direct, rho).output);
        double predicted = multiphoton_constant(job.direction, job.gamma, job.k, mode);
        double constant_error = std::abs(rep.constant - predicted) / predicted;
        bool ok = rep.support_mismatches == 0 && rep.max_relative_deviation <= kProportionalityTolerance &&
                  constant_error <= kProportionalityTolerance;
        return Row{{"k", static_cast<std::int64_t>(job.k)},
                   {"gamma", job.gamma},
                   {"direction", std::string(sub ? "subtract" : "add")},
                   {"state", static_cast<std::int64_t>(job.state)},
                   {"constant", rep.constant},
                   {"predicted_constant", predicted},
                   {"constant_rel_error", constant_error},
                   {"max_rel_deviation", rep.max_relative_deviation},
                   {"support_mismatches", static_cast<std::int64_t>(rep.support_mismatches)},
                   {"tolerance", kProportionalityTolerance},
                   {"pass", ok}};
    });
    out.pass = std::all_of(rows.begin(), rows.end(), [](const Row &row) { return std::get<bool>(row.back().second); });
    out.rows = std::move(rows);
}

void run_bounds(const RunConfig &c, Resolver &r, RunResult &out) {
    double eps = epsilon_of(r, c);
    double energy = r.positive("energy", c.energy, 4.0);
    double e1 = r.positive("e1", c.e1, 0.5);
    double e2 = r.positive("e2", c.e2, 4.0);
    std::size_t steps = r.count("s_steps", c.s_steps, 9, 2);
    if (e1 * e1 > e2) {
        throw ConfigError("need e1^2 <= e2");
    }
    double g_add = gamma_for_addition(eps, energy);
    double g_sub = gamma_for_subtraction(eps, e1, e2);
    r.record("gamma_addition", g_add);
    r.record("gamma_subtraction", g_sub);

    bool pass = true;
    auto emit = [&](const char *side, double gamma, double f1, double f2, BoundValue b, double variance_form) {
        bool ok = b.bound <= eps * (1.0 + 1e-12) && b.intermediate <= b.bound * (1.0 + 1e-12);
        pass = pass && ok;
        out.rows.push_back(Row{{"side", std::string(side)},
                               {"gamma", gamma},
                               {"f1", f1},
                               {"f2", f2},
                               {"bound", b.bound},
                               {"intermediate", b.intermediate},
                               {"variance_form", variance_form},
                               {"epsilon", eps},
                               {"pass", ok}});
    };
    // Worst case of each set: second moment on its upper face.
    double f1_top = std::sqrt(energy);
    for (std::size_t i = 0; i < steps; ++i) {
        double f1 = f1_top * static_cast<double>(i) / static_cast<double>(steps - 1);
        double var = energy - f1 * f1;
        emit("addition", g_add, f1, energy, addition_bound(g_add, f1, energy),
             2.0 * variance_accuracy(OperationSide::addition, g_add, f1, var));
    }
    double f1_hi = std::sqrt(e2);
    for (std::size_t i = 0; i < steps; ++i) {
        double f1 = e1 + (f1_hi - e1) * static_cast<double>(i) / static_cast<double>(steps - 1);
        double var = e2 - f1 * f1;
        emit("subtraction", g_sub, f1, e2, subtraction_bound(g_sub, f1, e2),
             2.0 * variance_accuracy(OperationSide::subtraction, g_sub, f1, var));
    }
    out.pass = pass;
}

// ---------------------------------------------------------------------------
// Output

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_cell(const Cell &cell) {
    struct Visitor {
        std::string operator()(double v) const {
            return format_double(v);
        }
        std::string operator()(std::int64_t v) const {
            return std::to_string(v);
        }
        std::string operator()(bool v) const {
            return v ? "true" : "false";
        }
        std::string operator()(const std::string &v) const {
            if (v.find_first_of(",\"\n") == std::string::npos) {
                return v;
            }
            std::string quoted = "\"";
            for (char ch : v) {
                quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            }
            return quoted + "\"";
        }
    };
    return std::visit(Visitor{}, cell);
}

nlohmann::ordered_json to_json(const Cell &cell) {
    return std::visit(
        [](const auto &v) -> nlohmann::ordered_json {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
                if (!std::isfinite(v)) {
                    return nullptr;
                }
            }
            return v;
        },
        cell);
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string to_string(Subcommand cmd) {
    switch (cmd) {
        case Subcommand::prop1:
            return "prop1";
        case Subcommand::prop2:
            return "prop2";
        case Subcommand::prop3:
            return "prop3";
        case Subcommand::prop4:
            return "prop4";
        case Subcommand::prop5:
            return "prop5";
        case Subcommand::completeness:
            return "completeness";
        case Subcommand::multik:
            return "multik";
        case Subcommand::bounds:
            return "bounds";
    }
    return "unknown";
}

Subcommand parse_subcommand(const std::string &name) {
    for (Subcommand cmd : {Subcommand::prop1, Subcommand::prop2, Subcommand::prop3, Subcommand::prop4,
                           Subcommand::prop5, Subcommand::completeness, Subcommand::multik, Subcommand::bounds}) {
        if (to_string(cmd) == name) {
            return cmd;
        }
    }
    throw std::invalid_argument("unknown subcommand '" + name + "'");
}

RunResult execute(const RunConfig &config) {
    RunResult out;
    out.config.emplace_back("subcommand", to_string(config.subcommand));
    Resolver r(out);
    try {
        switch (config.subcommand) {
            case Subcommand::prop1:
                run_prop1(config, r, out);
                break;
            case Subcommand::prop2:
                run_propN(config, r, out, WitnessFamily::prop2);
                break;
            case Subcommand::prop3:
                run_uniform(config, r, out, OperationSide::addition);
                break;
            case Subcommand::prop4:
                run_propN(config, r, out, WitnessFamily::prop4);
                break;
            case Subcommand::prop5:
                run_uniform(config, r, out, OperationSide::subtraction);
                break;
            case Subcommand::completeness:
                run_completeness(config, r, out);
                break;
            case Subcommand::multik:
                run_multik(config, r, out);
                break;
            case Subcommand::bounds:
                run_bounds(config, r, out);
                break;
        }
        out.exit_code = out.pass ? kExitPass : kExitCriterionFailure;
    } catch (const TruncationInsufficient &e) {
        out.pass = false;
        out.exit_code = kExitTruncation;
        out.error = e.what();
    } catch (const TruncationOverflow &e) {
        out.pass = false;
        out.exit_code = kExitTruncation;
        out.error = e.what();
    } catch (const std::invalid_argument &e) {
        out.pass = false;
        out.exit_code = kExitConfigError;
        out.error = e.what();
    } catch (const std::domain_error &e) {
        out.pass = false;
        out.exit_code = kExitConfigError;
        out.error = e.what();
    } catch (const std::exception &e) {
        out.pass = false;
        out.exit_code = kExitCriterionFailure;
        out.error = e.what();
    }
    if (!out.error.empty()) {
        out.rows.clear();
    }
    return out;
}

void write_csv(const RunResult &result, bool timestamp, std::ostream &os) {
    os << "# fockops " << kVersion << "\n";
    for (const auto &[name, value] : result.config) {
        os << "# " << name << "=" << format_cell(value) << "\n";
    }
    if (timestamp) {
        os << "# generated=" << utc_timestamp() << "\n";
    }
    os << "# pass=" << (result.pass ? "true" : "false") << "\n";
    os << "# exit_code=" << result.exit_code << "\n";
    if (!result.error.empty()) {
        os << "# error=" << result.error << "\n";
    }
    if (result.rows.empty()) {
        return;
    }
    const Row &first = result.rows.front();
    for (std::size_t i = 0; i < first.size(); ++i) {
        os << (i ? "," : "") << first[i].first;
    }
    os << "\n";
    for (const Row &row : result.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << format_cell(row[i].second);
        }
        os << "\n";
    }
}

void write_json(const RunResult &result, bool timestamp, std::ostream &os) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto &[name, value] : result.config) {
        config[name] = to_json(value);
    }
    if (timestamp) {
        config["generated"] = utc_timestamp();
    }
    doc["config"] = config;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const Row &row : result.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const auto &[name, value] : row) {
            obj[name] = to_json(value);
        }
        rows.push_back(std::move(obj));
    }
    doc["results"] = std::move(rows);
    doc["pass"] = result.pass;
    doc["version"] = kVersion;
    doc["exit_code"] = result.exit_code;
    if (!result.error.empty()) {
        doc["error"] = result.error;
    }
    os << doc.dump(2) << "\n";
}

int run(const RunConfig &config, std::ostream &diagnostics) {
    RunResult result = execute(config);
    std::ofstream file;
    std::ostream *sink = &std::cout;
    if (!config.out.empty()) {
        file.open(config.out);
        if (!file) {
            diagnostics << "error: cannot write " << config.out << "\n";
            return kExitConfigError;
        }
        sink = &file;
    }
    if (config.format == OutputFormat::json) {
        write_json(result, config.timestamp, *sink);
    } else {
        write_csv(result, config.timestamp, *sink);
    }
    if (!result.error.empty()) {
        diagnostics << "error: " << result.error << "\n";
    } else if (!result.pass) {
        diagnostics << to_string(config.subcommand) << ": criterion failed\n";
    }
    return result.exit_code;
}

}  // namespace fockops
