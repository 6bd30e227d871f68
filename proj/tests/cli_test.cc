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

#include <sstream>

#include <gtest/gtest.h>

namespace fockops {
namespace {

TEST(Cli, SubcommandNamesRoundTrip) {
    for (const char *name : {"prop1", "prop2", "prop3", "prop4", "prop5", "completeness", "multik", "bounds"}) {
        EXPECT_EQ(to_string(parse_subcommand(name)), name);
    }
    EXPECT_THROW(parse_subcommand("prop6"), std::invalid_argument);
}

TEST(Cli, ResolvedConfigIsRecorded) {
    RunConfig c;
    c.subcommand = Subcommand::prop3;
    c.count = 4;
    RunResult r = execute(c);
    ASSERT_EQ(r.exit_code, kExitPass);
    auto find = [&](const std::string &key) -> const Cell * {
        for (const auto &[k, v] : r.config) {
            if (k == key) {
                return &v;
            }
        }
        return nullptr;
    };
    ASSERT_NE(find("gamma"), nullptr);
    EXPECT_DOUBLE_EQ(std::get<double>(*find("gamma")), 0.01 / 112.0);
    EXPECT_EQ(std::get<std::int64_t>(*find("dim")), 64);
    EXPECT_EQ(std::get<std::int64_t>(*find("seed")), 7);
    EXPECT_EQ(r.rows.size(), 4u);
}

TEST(Cli, RowsCarryTheirPassInputs) {
    RunConfig c;
    c.subcommand = Subcommand::prop5;
    c.count = 10;
    RunResult r = execute(c);
    ASSERT_TRUE(r.pass);
    for (const Row &row : r.rows) {
        double measured = 0.0;
        double bound = 0.0;
        double eps = 0.0;
        double tol = 0.0;
        bool pass = false;
        for (const auto &[k, v] : row) {
            if (k == "measured") measured = std::get<double>(v);
            if (k == "bound") bound = std::get<double>(v);
            if (k == "epsilon") eps = std::get<double>(v);
            if (k == "tolerance") tol = std::get<double>(v);
            if (k == "pass") pass = std::get<bool>(v);
        }
        EXPECT_EQ(pass, measured < eps && measured <= bound + tol);
    }
}

TEST(Cli, CsvIsFullPrecisionAndStable) {
    RunConfig c;
    c.subcommand = Subcommand::bounds;
    RunResult first = execute(c);
    RunResult second = execute(c);
    std::ostringstream a;
    std::ostringstream b;
    write_csv(first, false, a);
    write_csv(second, false, b);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_NE(a.str().find("# fockops 0.1.0"), std::string::npos);
    EXPECT_EQ(a.str().find("generated="), std::string::npos);
    EXPECT_NE(a.str().find("0.10000000000000001"), std::string::npos);
}

TEST(Cli, ParallelSweepsAreOrderedByParameter) {
    RunConfig c;
    c.subcommand = Subcommand::multik;
    RunResult r = execute(c);
    ASSERT_TRUE(r.pass);
    std::int64_t last_k = 0;
    for (const Row &row : r.rows) {
        std::int64_t k = std::get<std::int64_t>(row.front().second);
        EXPECT_GE(k, last_k);
        last_k = k;
    }
}

TEST(Cli, ErrorsMapToExitCodes) {
    RunConfig bad;
    bad.subcommand = Subcommand::completeness;
    bad.gamma = 0.0;
    EXPECT_EQ(execute(bad).exit_code, kExitConfigError);

    RunConfig eps;
    eps.subcommand = Subcommand::bounds;
    eps.epsilon = 2.5;
    EXPECT_EQ(execute(eps).exit_code, kExitConfigError);

    RunConfig trunc;
    trunc.subcommand = Subcommand::prop4;
    trunc.energy = 100.0;
    trunc.dim = 8;
    RunResult t = execute(trunc);
    EXPECT_EQ(t.exit_code, kExitTruncation);
    EXPECT_FALSE(t.error.empty());
    EXPECT_TRUE(t.rows.empty());

    RunConfig fail;
    fail.subcommand = Subcommand::prop5;
    fail.gamma = 0.1;
    fail.count = 20;
    EXPECT_EQ(execute(fail).exit_code, kExitCriterionFailure);
}

TEST(Cli, JsonSchema) {
    RunConfig c;
    c.subcommand = Subcommand::completeness;
    c.dim = 6;
    std::ostringstream os;
    write_json(execute(c), false, os);
    std::string s = os.str();
    for (const char *key : {"\"config\"", "\"results\"", "\"pass\": true", "\"version\": \"0.1.0\""}) {
        EXPECT_NE(s.find(key), std::string::npos) << key;
    }
}

}  // namespace
}  // namespace fockops
