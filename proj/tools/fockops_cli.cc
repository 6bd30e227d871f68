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


#include <iostream>

#include "CLI11.hpp"

#include "fockops/cli.h"

namespace {

template <typename T>
void optional_flag(CLI::App &app, const std::string &name, std::optional<T> &slot, const std::string &help) {
    app.add_option_function<T>(
        name, [&slot](const T &v) { slot = v; }, help);
}

}  // namespace

int main(int argc, char **argv) {
    fockops::RunConfig config;
    std::string subcommand;
    std::string format = "csv";
    bool no_timestamp = false;

    CLI::App app{"Batch runs for approximate photon subtraction and addition"};
    app.set_version_flag("--version", std::string(fockops::kVersion));
    app.add_option("subcommand", subcommand, "prop1 | prop2 | prop3 | prop4 | prop5 | completeness | multik | bounds")
        ->required()
        ->check(CLI::IsMember({"prop1", "prop2", "prop3", "prop4", "prop5", "completeness", "multik", "bounds"}));
    optional_flag(app, "--gamma", config.gamma, "Damping parameter gamma > 0");
    optional_flag(app, "--epsilon", config.epsilon, "Target accuracy in (0, 2)");
    optional_flag(app, "--energy", config.energy, "Energy bound E");
    optional_flag(app, "--e1", config.e1, "Lower energy bound E1");
    optional_flag(app, "--e2", config.e2, "Second-moment bound E2");
    optional_flag(app, "--dim", config.dim, "Truncation dimension D");
    app.add_option("--seed", config.seed, "Sampler seed")->capture_default_str();
    optional_flag(app, "--count", config.count, "Number of sampled states");
    optional_flag(app, "--s-min", config.s_min, "Smallest s of the zeta grid (> 2)");
    optional_flag(app, "--s-max", config.s_max, "Largest s of the zeta grid");
    optional_flag(app, "--s-steps", config.s_steps, "Grid points");
    optional_flag(app, "--n-max", config.n_max, "Largest N (witness scans) or K_max (completeness, multik)");
    app.add_option("--out", config.out, "Output path (default stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_flag("--no-timestamp", no_timestamp, "Omit the generation time so outputs are byte-identical");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return fockops::kExitConfigError;
    }

    config.subcommand = fockops::parse_subcommand(subcommand);
    config.format = format == "json" ? fockops::OutputFormat::json : fockops::OutputFormat::csv;
    config.timestamp = !no_timestamp;
    return fockops::run(config, std::cerr);
}
