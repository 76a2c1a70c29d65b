// SPDX-License-Identifier: Apache-2.0
//
// mmwave-pdp: first-order reflection channel model for outdoor mmWave links
// Copyright (C) 2026 The mmwave-pdp Authors
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

// Runs the mmwave-pdp executable and compares its CSV output with the files
// in tests/golden. Set MMW_UPDATE_GOLDEN=1 to rewrite them.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace
{

struct CliRun
{
    int status;
    std::string out;
};

CliRun run(const std::string &args)
{
    const std::string cmd = std::string(MMW_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return {-1, {}};
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), n);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string read_file(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void check_golden(const std::string &name, const std::string &args)
{
    const CliRun r = run(args);
    ASSERT_EQ(r.status, 0) << args;
    const std::filesystem::path path = std::filesystem::path(MMW_GOLDEN_DIR) / (name + ".csv");
    const char *update = std::getenv("MMW_UPDATE_GOLDEN");
    if (update && std::string(update) == "1")
    {
        std::ofstream(path, std::ios::binary) << r.out;
        GTEST_SKIP() << "rewrote " << path;
    }
    ASSERT_TRUE(std::filesystem::exists(path)) << path << " missing; run with MMW_UPDATE_GOLDEN=1";
    EXPECT_EQ(r.out, read_file(path)) << name;
}

} // namespace

TEST(Golden, BlockageArea) { check_golden("blockage_area", "blockage-area"); }
TEST(Golden, PdpAnalytic) { check_golden("pdp_analytic", "pdp-analytic --phi 0.2"); }
TEST(Golden, PdpSimulate) { check_golden("pdp_simulate", "pdp-simulate --seed 3 --n 400 --bins 20"); }
TEST(Golden, PathlossVsPhi) { check_golden("pathloss_vs_phi", "pathloss-vs-phi --set sweep.phi_points=8"); }
TEST(Golden, PathlossVsDistance)
{
    check_golden("pathloss_vs_distance", "pathloss-vs-distance --set sweep.distance_points=12");
}
TEST(Golden, NumpathsVsPhi)
{
    check_golden("numpaths_vs_phi",
                 "numpaths-vs-phi --set sweep.phi_points=5 --set sweep.simulate=true --seed 2 --n 100");
}
TEST(Golden, Fig4) { check_golden("fig4", "reproduce fig4"); }
TEST(Golden, Fig5a) { check_golden("fig5a", "reproduce fig5a --seed 1 --n 200"); }
TEST(Golden, Fig5b) { check_golden("fig5b", "reproduce fig5b --seed 1 --n 200"); }
TEST(Golden, Fig5c) { check_golden("fig5c", "reproduce fig5c --seed 1 --n 200"); }
TEST(Golden, Fig7) { check_golden("fig7", "reproduce fig7"); }
TEST(Golden, Fig8) { check_golden("fig8", "reproduce fig8"); }
TEST(Golden, Fig9) { check_golden("fig9", "reproduce fig9 --seed 1 --n 20"); }

TEST(Cli, ZeroDensityGivesZeroProfile)
{
    const CliRun r = run("pdp-analytic --set env.lambda=0");
    ASSERT_EQ(r.status, 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line))
    {
        ++rows;
        // sigma_db,sigma_linear,tau_s,a, then profile columns.
        std::istringstream fields(line);
        std::string f;
        for (int i = 0; std::getline(fields, f, ','); ++i)
            if (i == 4 || i == 6 || i == 8 || i == 9)
                EXPECT_EQ(std::stod(f), 0) << line;
    }
    EXPECT_EQ(rows, 40);
}

TEST(Cli, SameOutputForAnyThreadCount)
{
    const std::string args = "reproduce fig5b --seed 11 --n 300";
    const CliRun one = run(args + " --threads 1");
    ASSERT_EQ(one.status, 0);
    for (const char *t : {"2", "4", "7"})
        EXPECT_EQ(run(args + " --threads " + t).out, one.out) << t;
    const CliRun sim = run("pdp-simulate --seed 4 --n 500 --threads 1");
    EXPECT_EQ(run("pdp-simulate --seed 4 --n 500 --threads 5").out, sim.out);
}

TEST(Cli, RepeatedRunsAreIdentical)
{
    EXPECT_EQ(run("reproduce fig5a --seed 1 --n 100").out, run("reproduce fig5a --seed 1 --n 100").out);
}

TEST(Cli, OutFileMatchesStdout)
{
    const auto tmp = std::filesystem::temp_directory_path() / "mmwave_pdp_cli_out.csv";
    ASSERT_EQ(run("pdp-analytic --out " + tmp.string()).status, 0);
    EXPECT_EQ(read_file(tmp), run("pdp-analytic").out);
    std::filesystem::remove(tmp);
}

TEST(Cli, ScenarioFileAndOverrides)
{
    const auto tmp = std::filesystem::temp_directory_path() / "mmwave_pdp_cli_scenario.ini";
    std::ofstream(tmp) << "[link]\ndistance = 150 ; m\n[env]\nlambda = 1e-4\nlength_min = 54\nlength_max = 56\n"
                          "width_min = 49\nwidth_max = 51\n[grid]\nn_bins = 10\n";
    const CliRun r = run("pdp-analytic --scenario " + tmp.string());
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 11);
    EXPECT_EQ(run("pdp-analytic --scenario " + tmp.string() + " --bins 5").out,
              run("pdp-analytic --scenario " + tmp.string() + " --set grid.n_bins=5").out);
    // --phi replaces the file's lambda.
    EXPECT_EQ(run("pdp-analytic --scenario " + tmp.string() + " --phi 0.3").status, 0);

    std::ofstream(tmp) << "[env]\nphi = 0.1\nlambda = 1e-4\n";
    EXPECT_EQ(run("pdp-analytic --scenario " + tmp.string()).status, 3);
    std::ofstream(tmp) << "[env]\ncolour = red\n";
    EXPECT_EQ(run("pdp-analytic --scenario " + tmp.string()).status, 2);
    std::filesystem::remove(tmp);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("no-such-command").status, 2);
    EXPECT_EQ(run("reproduce fig6").status, 2);
    EXPECT_EQ(run("pdp-simulate").status, 2);
    EXPECT_EQ(run("reproduce fig5a").status, 2);
    EXPECT_EQ(run("pdp-analytic --set nope.key=1").status, 2);
    EXPECT_EQ(run("pdp-analytic --bins abc").status, 2);
    EXPECT_EQ(run("pdp-analytic --scenario /nonexistent.ini").status, 2);
    EXPECT_EQ(run("pdp-analytic --phi 1.5").status, 3);
    EXPECT_EQ(run("pdp-analytic --set link.distance=-4").status, 3);
    EXPECT_EQ(run("pdp-analytic --tau-max-ratio 0.5").status, 3);
    EXPECT_EQ(run("pdp-analytic --set link.sigma_db=-1").status, 3);
    EXPECT_EQ(run("--help").status, 0);
}
