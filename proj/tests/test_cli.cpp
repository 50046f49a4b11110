// SPDX-License-Identifier: Apache-2.0
//
// risim: simulation and analysis toolkit for RIS-assisted MIMO links
// Copyright (C) 2026 The risim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cli_runner.hpp"
#include "risim/io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <unistd.h>

#include <sstream>

using namespace risim;
namespace fs = std::filesystem;

namespace
{
    class Cli : public ::testing::Test
    {
    protected:
        void SetUp() override
        {
            const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
            dir_ = fs::temp_directory_path() / ("risim_cli_" + std::to_string(::getpid()) + "_" + info->name());
            fs::remove_all(dir_);
            fs::create_directories(dir_);
        }
        void TearDown() override { fs::remove_all(dir_); }

        test::CliRun run(const std::string &args, const std::string &out = "out")
        {
            return test::run_cli(RISIM_CLI_PATH, "--out-dir " + test::quote((dir_ / out).string()) + " " + args, dir_ / "io");
        }

        std::string scenario(const char *name) const { return test::quote((test::data_dir() / name).string()); }

        fs::path dir_;
    };

    double value_after(const std::string &text, const std::string &key)
    {
        const auto at = text.find(key + " = ");
        if (at == std::string::npos)
            return std::nan("");
        return std::stod(text.substr(at + key.size() + 3));
    }
}

TEST_F(Cli, MetricsEirpExample)
{
    const auto r = run("metrics --eirp-per-5mhz 44 --antenna-gain-dbi 20.4 --bandwidth-mhz 50");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_NE(r.out.find("tx_power_dbm = 33.6\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("eirp_total_dbm = 54\n"), std::string::npos) << r.out;
}

TEST_F(Cli, PatternPeaksNearTarget)
{
    const auto r = run("pattern --incidence 120 --steer 90");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const double peak = value_after(r.out, "peak_deg");
    EXPECT_NEAR(peak, 90.0, 3.0) << r.out;
    const auto csv = test::slurp(dir_ / "out" / "pattern.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "steer_deg,angle_deg,gain_db");
}

TEST_F(Cli, SimulateIsByteIdentical)
{
    const std::string args = "--seed 3 --scenario " + scenario("zone_a.scn") + " simulate";
    ASSERT_EQ(run(args, "a").exit_code, 0);
    ASSERT_EQ(run(args, "b").exit_code, 0);
    const auto a = test::snapshot(dir_ / "a"), b = test::snapshot(dir_ / "b");
    EXPECT_EQ(a.size(), b.size());
    EXPECT_TRUE(a.count("sweep_ris.csv"));
    EXPECT_TRUE(a.count("report_ris.txt"));
    EXPECT_EQ(a, b);
}

TEST_F(Cli, SimulateThenIngestRoundTrip)
{
    ASSERT_EQ(run("--scenario " + scenario("zone_a.scn") + " simulate").exit_code, 0);
    const auto sweep = dir_ / "out" / "sweep_ris.csv";
    const auto r = run("ingest --sweep " + test::quote(sweep.string()) + " --output again.csv");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(test::slurp(dir_ / "out" / "again.csv"), test::slurp(sweep));
}

TEST_F(Cli, MetricsOnSweepReportsGain)
{
    ASSERT_EQ(run("--scenario " + scenario("zone_a.scn") + " simulate").exit_code, 0);
    const auto r = run("metrics --sweep " + test::quote((dir_ / "out" / "sweep_ris.csv").string()), "m");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const auto report = test::slurp(dir_ / "m" / "report_measured.txt");
    const auto original = test::slurp(dir_ / "out" / "report_ris.txt");
    EXPECT_DOUBLE_EQ(value_after(report, "band_gain"), value_after(original, "band_gain"));
}

TEST_F(Cli, UsageErrorsExitTwo)
{
    for (const char *args : {"", "frobnicate", "pattern --tile -3", "simulate", "pattern --bogus"})
    {
        const auto r = run(args);
        EXPECT_EQ(r.exit_code, 2) << args;
        EXPECT_EQ(r.err.rfind("risim-error code=USAGE exit=2\n", 0), 0u) << args << ": " << r.err;
    }
}

TEST_F(Cli, ValidationErrorsExitThree)
{
    std::ofstream(dir_ / "bad.scn") << "schema_version = 1\n[tx_array]\n";
    const auto r = run("--scenario " + test::quote((dir_ / "bad.scn").string()) + " simulate");
    EXPECT_EQ(r.exit_code, 3);
    EXPECT_EQ(r.err.rfind("risim-error code=VALIDATION exit=3\n", 0), 0u) << r.err;
    EXPECT_NE(r.err.find("[band]"), std::string::npos) << r.err;
}

TEST_F(Cli, NumericErrorsExitFour)
{
    std::ofstream(dir_ / "raw.csv") << "freq_hz,rx,tx,re,im\n1,0,0,1,0\n";
    std::ofstream(dir_ / "ref.csv") << "freq_hz,re,im\n1,0,0\n";
    const auto r = run("ingest --sweep " + test::quote((dir_ / "raw.csv").string()) + " --reference " +
                       test::quote((dir_ / "ref.csv").string()));
    EXPECT_EQ(r.exit_code, 4);
    EXPECT_EQ(r.err.rfind("risim-error code=NUMERIC exit=4\n", 0), 0u) << r.err;
}

TEST_F(Cli, HelpExitsZero)
{
    EXPECT_EQ(run("--help").exit_code, 0);
    EXPECT_EQ(run("simulate --help").exit_code, 0);
}
