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

#ifndef MMW_SCENARIO_HPP
#define MMW_SCENARIO_HPP

// Scenario files, parameter overrides, experiment tables and CSV output for
// the command-line tool.
//
// A scenario file is a flat INI file:
//
//   [link]
//   distance = 100        ; m
//   frequency = 73e9      ; Hz
//   sigma_db = 3          ; mean reflection loss, dB
//   [env]
//   phi = 0.05            ; covered ratio, or `lambda = ...` (exactly one)
//   length_min = 9        ; building length ~ U[length_min, length_max] (m)
//   length_max = 11
//   width_min = 9
//   width_max = 11
//   [grid]
//   tau_max_ratio = 3     ; tau_max = ratio * D / c
//   n_bins = 40
//   [sim]
//   area_side = 500       ; m
//   n_realizations = 2000
//   master_seed = 1       ; required by every randomized command
//
// Missing keys fall back to the defaults above (master_seed has none).

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mmw/analytic.hpp"
#include "mmw/montecarlo.hpp"

namespace mmw::app
{

// Malformed input: bad file, unknown key, unparseable value, missing seed.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// "section.key" -> raw value.
using Settings = std::map<std::string, std::string>;

Settings default_settings();
// Merges the file's keys over `base`. Throws UsageError on syntax errors or
// unknown keys.
Settings read_settings(std::istream &in, Settings base = default_settings());
Settings load_settings(const std::string &path, Settings base = default_settings());
// Applies one "section.key=value" override. Setting env.phi drops env.lambda
// and vice versa.
void apply_override(Settings &settings, std::string_view assignment);

struct SizeClass
{
    int id;
    const char *name;
    SizeDistribution length;
    SizeDistribution width;
};

// Building classes used by the figure presets: small, medium, large.
std::span<const SizeClass> size_classes();

struct Scenario
{
    LinkParams link;
    double sigma_db = 3;
    EnvironmentParams env;
    double tau_max_ratio = 3;
    int n_bins = 40;
    double area_side = 500;
    std::size_t n_realizations = 2000;
    std::optional<std::uint64_t> master_seed;
    unsigned workers = 0;

    // Sweep and table settings.
    double phi_min = 0.03;
    double phi_max = 0.9;
    int phi_points = 30;
    double distance_min = 10;
    double distance_max = 1000;
    int distance_points = 100;
    std::vector<double> path_ratios{1.1, 1.5, 2.0};
    int theta_points = 179;
    bool simulate = false;

    DelayGrid grid() const { return DelayGrid::for_link(link, tau_max_ratio, n_bins); }
    mc::SceneConfig scene() const { return mc::SceneConfig::centered(link, env, area_side); }
    std::vector<double> phi_sweep() const;
    std::vector<double> distance_sweep() const;

    // Seed for randomized commands; throws UsageError when absent.
    std::uint64_t require_seed() const;

    Scenario with_environment(double phi, const SizeClass &size) const;
};

// Throws UsageError on unparseable values and DomainError on invalid physics
// (including both or neither of env.phi / env.lambda).
Scenario make_scenario(const Settings &settings);

struct CsvTable
{
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
    // Comma separated, header first, '.' decimal point, 10 significant digits.
    std::string to_string() const;
};

CsvTable blockage_area_table(const Scenario &s);
CsvTable pdp_analytic_table(const Scenario &s);
CsvTable pdp_simulate_table(const Scenario &s);
CsvTable pathloss_vs_phi_table(const Scenario &s);
CsvTable pathloss_vs_distance_table(const Scenario &s);
CsvTable numpaths_vs_phi_table(const Scenario &s);

// Figure presets: fig4, fig5a, fig5b, fig5c, fig7, fig8, fig9. Only the
// simulation size, seed and worker count are taken from `s`.
CsvTable reproduce(std::string_view figure, const Scenario &s);

inline const std::vector<std::string> &figure_names()
{
    static const std::vector<std::string> names{"fig4", "fig5a", "fig5b", "fig5c", "fig7", "fig8", "fig9"};
    return names;
}

// Dispatches one of the commands above; `figure` is used by "reproduce".
CsvTable run_command(std::string_view command, std::string_view figure, const Scenario &s);

// Mean over the bin [lo, hi] of the closed-form PDP.
double pdp_bin_average(double lo, double hi, const LinkParams &link, const EnvironmentParams &env);

} // namespace mmw::app

#endif
