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

// mmwave-pdp: command-line front end. Every command writes one CSV table.
//
// Exit status: 0 success, 2 usage error, 3 invalid parameters, 4 numerical
// integration did not converge.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mmw/errors.hpp"
#include "mmw/scenario.hpp"

namespace
{

struct Options
{
    std::string scenario;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<long long> n;
    std::optional<int> bins;
    std::optional<double> tau_max_ratio;
    std::optional<double> phi;
    std::optional<unsigned> threads;
    std::vector<std::string> set;
    std::string figure;
};

void add_common(CLI::App &cmd, Options &o)
{
    cmd.add_option("--scenario", o.scenario, "INI scenario file")->check(CLI::ExistingFile);
    cmd.add_option("--out", o.out, "write the CSV here instead of stdout");
    cmd.add_option("--seed", o.seed, "master seed for randomized commands");
    cmd.add_option("--n", o.n, "number of Monte Carlo realizations");
    cmd.add_option("--bins", o.bins, "number of delay bins");
    cmd.add_option("--tau-max-ratio", o.tau_max_ratio, "tau_max as a multiple of the LoS delay");
    cmd.add_option("--phi", o.phi, "covered ratio (replaces env.lambda)");
    cmd.add_option("--threads", o.threads, "worker threads, 0 = hardware concurrency");
    cmd.add_option("--set", o.set, "override a setting, section.key=value (repeatable)");
}

mmw::app::Scenario build_scenario(const Options &o)
{
    using namespace mmw::app;
    Settings settings = o.scenario.empty() ? default_settings() : load_settings(o.scenario);
    auto put = [&](const char *key, const auto &value) {
        if (value)
            apply_override(settings, fmt::format("{}={}", key, *value));
    };
    put("sim.master_seed", o.seed);
    put("sim.n_realizations", o.n);
    put("grid.n_bins", o.bins);
    put("grid.tau_max_ratio", o.tau_max_ratio);
    put("env.phi", o.phi);
    put("sim.workers", o.threads);
    for (const auto &assignment : o.set)
        apply_override(settings, assignment);
    return make_scenario(settings);
}

int fail(int code, const std::string &kind, const std::string &what)
{
    std::cerr << "mmwave-pdp: " << kind << ": " << what << '\n';
    return code;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"First-order reflection channel model for outdoor mmWave links"};
    app.require_subcommand(1);
    Options o;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"blockage-area", "exact vs approximate blockage area over orientation"},
        {"pdp-analytic", "closed-form and numeric power delay profile"},
        {"pdp-simulate", "Monte Carlo power delay profile (needs --seed)"},
        {"pathloss-vs-phi", "LoS, reflected and total gain over covered ratio"},
        {"pathloss-vs-distance", "LoS, reflected and total gain over link distance"},
        {"numpaths-vs-phi", "mean number of reflected paths over covered ratio"},
        {"reproduce", "figure preset tables"},
    };
    for (const auto &[name, help] : commands)
    {
        CLI::App *cmd = app.add_subcommand(name, help);
        add_common(*cmd, o);
        if (name == "reproduce")
            cmd->add_option("figure", o.figure, "figure preset")
                ->required()
                ->check(CLI::IsMember(mmw::app::figure_names()));
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try
    {
        const auto scenario = build_scenario(o);
        const std::string csv = mmw::app::run_command(command, o.figure, scenario).to_string();
        if (o.out.empty())
        {
            std::cout << csv;
        }
        else
        {
            std::ofstream file(o.out, std::ios::binary);
            if (!(file << csv))
                return fail(2, "error", fmt::format("cannot write '{}'", o.out));
        }
    }
    catch (const mmw::app::UsageError &e)
    {
        return fail(2, "usage error", e.what());
    }
    catch (const mmw::DomainError &e)
    {
        return fail(3, "invalid parameters", e.what());
    }
    catch (const mmw::ConvergenceError &e)
    {
        return fail(4, "integration did not converge",
                    fmt::format("{} (partial value {:.6g}, error estimate {:.3g})", e.what(), e.partial_value(),
                                e.error_estimate()));
    }
    return 0;
}
