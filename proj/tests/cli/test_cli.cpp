// Copyright 2026 The MDI-QCT Simulator Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <iterator>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using mdiqct::cli::kExitOk;
using mdiqct::cli::kExitRuntime;
using mdiqct::cli::kExitUsage;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = mdiqct::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_path(const std::string& name) { return fs::temp_directory_path() / ("mdiqct_cli_test_" + name); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Probability of the first CSV row starting with `prefix` ("verification,psi+,phi00,phi00,").
double csv_cell(const std::string& csv, const std::string& prefix) {
    const auto pos = csv.find("\n" + prefix);
    if (pos == std::string::npos) {
        return -1.0;
    }
    return std::stod(csv.substr(pos + 1 + prefix.size()));
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, TablesJson) {
    const Result r = run({"tables", "--y", "0.9"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    ASSERT_EQ(doc["verification_table"].size(), 32u);
    ASSERT_EQ(doc["cheat_table"].size(), 16u);
    int zeros = 0;
    for (const auto& cell : doc["verification_table"]) {
        if (cell["alice"] == cell["bob"] && cell["outcome"] == "psi+") {
            EXPECT_NEAR(cell["probability"].get<double>(), 0.18, 1e-12);
        }
        zeros += cell["zero_cell"].get<bool>() ? 1 : 0;
    }
    EXPECT_EQ(zeros, 8);
    const auto& first = doc["cheat_table"][0];
    EXPECT_EQ(first["alice"], "plus");
    EXPECT_EQ(first["bob"], "phi00");
    EXPECT_NEAR(first["probability"].get<double>(), 0.8, 1e-12);
}

TEST(Cli, TablesCsvAndText) {
    const Result csv = run({"tables", "--format", "csv"});
    ASSERT_EQ(csv.code, kExitOk);
    EXPECT_EQ(lines(csv.out), 1u + 32u + 16u);
    EXPECT_NEAR(csv_cell(csv.out, "verification,psi+,phi00,phi00,"), 0.18, 1e-12);
    EXPECT_NEAR(csv_cell(csv.out, "cheat,psi+,plus,phi00,"), 0.8, 1e-12);
    const Result text = run({"tables", "--format", "text"});
    ASSERT_EQ(text.code, kExitOk);
    EXPECT_NE(text.out.find("0.180000"), std::string::npos);
    EXPECT_NE(text.out.find("0.800000"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({"tables", "--y", "0.3"}).code, kExitUsage);
    EXPECT_EQ(run({"tables", "--bogus"}).code, kExitUsage);
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"sweep", "--format", "text"}).code, kExitUsage);
    EXPECT_EQ(run({"attack", "--adversary", "eve"}).code, kExitUsage);
    EXPECT_EQ(run({"attack", "--adversary", "alice-blinding", "--trials", "10"}).code, kExitUsage);
    EXPECT_EQ(run({"run", "--dark", "0.7"}).code, kExitUsage);
    EXPECT_EQ(run({"run", "--trials", "abc"}).code, kExitUsage);
    EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, RuntimeErrorExitCode) {
    const Result r = run({"run", "--la", "300", "--lb", "300", "--dark", "0", "--max-rounds", "5", "--trials", "1"});
    EXPECT_EQ(r.code, kExitRuntime);
    EXPECT_NE(r.err.find("rounds"), std::string::npos);
}

TEST(Cli, Fair) {
    const Result r = run({"fair", "--format", "csv"});
    ASSERT_EQ(r.code, kExitOk);
    std::istringstream in(r.out);
    std::string header;
    std::string row;
    std::getline(in, header);
    std::getline(in, row);
    const double y = std::stod(row.substr(0, row.find(',')));
    const double bias = std::stod(row.substr(row.find(',') + 1));
    EXPECT_NEAR(y, 0.9, 1e-9);
    EXPECT_NEAR(bias, 0.4, 1e-9);
}

TEST(Cli, SweepCsvHasElevenRows) {
    const Result r =
        run({"sweep", "--lmin", "0", "--lmax", "50", "--step", "5", "--eta", "0.1", "--dark", "1e-4", "--format", "csv"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_EQ(lines(r.out), 12u);
    EXPECT_EQ(r.out.rfind("L_km,pr_h,pr_h_per_run,dark_dark_fraction\n", 0), 0u);
    EXPECT_NE(r.out.find("\n0,8.100000000000001e-09,"), std::string::npos);
}

TEST(Cli, RunEmitsOneRecordPerRun) {
    const Result json = run({"run", "--trials", "25", "--seed", "4"});
    ASSERT_EQ(json.code, kExitOk);
    EXPECT_EQ(lines(json.out), 25u);
    const Result csv = run({"run", "--trials", "25", "--seed", "4", "--format", "csv"});
    EXPECT_EQ(lines(csv.out), 26u);
}

TEST(Cli, AttackUsesIdealDevicesByDefault) {
    const Result r = run({"attack", "--adversary", "alice-coherent", "--trials", "20000", "--seed", "2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("\"ideal_value\": 0.9"), std::string::npos);
    const Result blind = run({"attack", "--adversary", "alice-blinding", "--mode", "baseline", "--trials", "1000"});
    ASSERT_EQ(blind.code, kExitOk);
    EXPECT_NE(blind.out.find("\"success_rate\": 1.0"), std::string::npos);
}

TEST(Cli, DeterministicAcrossWorkers) {
    for (const std::vector<std::string>& base : std::vector<std::vector<std::string>>{
             {"run", "--trials", "200", "--la", "5", "--lb", "5"},
             {"attack", "--adversary", "alice-individual", "--trials", "20000"},
             {"attack", "--adversary", "bob-med", "--trials", "20000", "--format", "csv"}}) {
        auto a = base;
        a.insert(a.end(), {"--seed", "9", "--workers", "1"});
        auto b = base;
        b.insert(b.end(), {"--seed", "9", "--workers", "3"});
        const Result ra = run(a);
        ASSERT_EQ(ra.code, kExitOk) << ra.err;
        EXPECT_EQ(ra.out, run(b).out);
        EXPECT_EQ(ra.out, run(a).out);
    }
}

TEST(Cli, OutFileAndNoPartialOutput) {
    const fs::path out = temp_path("out.json");
    fs::remove(out);
    ASSERT_EQ(run({"fair", "--out", out.string()}).code, kExitOk);
    EXPECT_NE(slurp(out).find("\"bias\""), std::string::npos);

    const fs::path bad = temp_path("bad.json");
    fs::remove(bad);
    EXPECT_EQ(run({"tables", "--y", "1.5", "--out", bad.string()}).code, kExitUsage);
    EXPECT_FALSE(fs::exists(bad));
    EXPECT_EQ(run({"sweep", "--step", "0", "--out", bad.string()}).code, kExitUsage);
    EXPECT_FALSE(fs::exists(bad));
    fs::remove(out);
}

TEST(Cli, ConfigPrecedence) {
    const fs::path cfg = temp_path("config.json");
    {
        std::ofstream f(cfg);
        f << R"({"y": 0.8, "format": "csv"})";
    }
    const Result from_file = run({"tables", "--config", cfg.string()});
    ASSERT_EQ(from_file.code, kExitOk) << from_file.err;
    EXPECT_NEAR(csv_cell(from_file.out, "verification,psi+,phi00,phi00,"), 0.32, 1e-12);

    const Result flag_wins = run({"tables", "--config", cfg.string(), "--y", "0.9"});
    ASSERT_EQ(flag_wins.code, kExitOk);
    EXPECT_NEAR(csv_cell(flag_wins.out, "verification,psi+,phi00,phi00,"), 0.18, 1e-12);

    {
        std::ofstream f(cfg);
        f << R"({"lmax": 10})";
    }
    EXPECT_EQ(run({"tables", "--config", cfg.string()}).code, kExitUsage);
    EXPECT_EQ(run({"tables", "--config", temp_path("missing.json").string()}).code, kExitUsage);
    fs::remove(cfg);
}

TEST(Cli, SeedFromEnvironment) {
    const std::vector<std::string> args{"run", "--trials", "20", "--la", "3", "--lb", "3"};
    ::setenv(mdiqct::cli::kSeedEnv, "12345", 1);
    const Result env = run(args);
    auto explicit_args = args;
    explicit_args.insert(explicit_args.end(), {"--seed", "12345"});
    const Result flag = run(explicit_args);
    auto other_args = args;
    other_args.insert(other_args.end(), {"--seed", "1"});
    const Result other = run(other_args);
    ::setenv(mdiqct::cli::kSeedEnv, "not-a-number", 1);
    const int bad = run(args).code;
    ::unsetenv(mdiqct::cli::kSeedEnv);
    ASSERT_EQ(env.code, kExitOk);
    EXPECT_EQ(env.out, flag.out);
    EXPECT_NE(env.out, other.out);
    EXPECT_EQ(bad, kExitUsage);
}
