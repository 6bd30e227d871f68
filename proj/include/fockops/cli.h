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


#ifndef FOCKOPS_CLI_H
#define FOCKOPS_CLI_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fockops {

inline constexpr const char *kVersion = "0.1.0";

enum class Subcommand { prop1, prop2, prop3, prop4, prop5, completeness, multik, bounds };
enum class OutputFormat { csv, json };

std::string to_string(Subcommand cmd);
/// Throws std::invalid_argument for unknown names.
Subcommand parse_subcommand(const std::string &name);

/// Unset optionals take the per-subcommand defaults listed in the README.
struct RunConfig {
    Subcommand subcommand = Subcommand::bounds;
    std::optional<double> gamma;
    std::optional<double> epsilon;
    std::optional<double> energy;
    std::optional<double> e1;
    std::optional<double> e2;
    std::optional<std::size_t> dim;
    std::uint64_t seed = 7;
    std::optional<std::size_t> count;
    std::optional<double> s_min;
    std::optional<double> s_max;
    std::optional<std::size_t> s_steps;
    std::optional<std::size_t> n_max;
    /// Empty writes to stdout.
    std::string out;
    OutputFormat format = OutputFormat::csv;
    bool timestamp = true;
};

enum ExitCode : int {
    kExitPass = 0,
    kExitCriterionFailure = 1,
    kExitConfigError = 2,
    kExitTruncation = 3,
};

using Cell = std::variant<double, std::int64_t, bool, std::string>;
using Row = std::vector<std::pair<std::string, Cell>>;

struct RunResult {
    /// Fully resolved parameters, in a fixed order.
    std::vector<std::pair<std::string, Cell>> config;
    std::vector<Row> rows;
    bool pass = false;
    int exit_code = kExitCriterionFailure;
    /// Set when the run stopped on an error.
    std::string error;
};

/// Computes the table without writing anything.
RunResult execute(const RunConfig &config);

void write_csv(const RunResult &result, bool timestamp, std::ostream &os);
void write_json(const RunResult &result, bool timestamp, std::ostream &os);

/// execute() plus output to config.out; returns the exit code.
int run(const RunConfig &config, std::ostream &diagnostics);

}  // namespace fockops

#endif
