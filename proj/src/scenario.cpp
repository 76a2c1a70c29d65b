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

#include "mmw/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "mmw/errors.hpp"

namespace mmw::app
{
namespace
{

const std::set<std::string> &known_keys()
{
    static const std::set<std::string> keys{
        "link.distance",    "link.frequency",      "link.sigma_db",      "env.phi",
        "env.lambda",       "env.length_min",      "env.length_max",     "env.width_min",
        "env.width_max",    "grid.tau_max_ratio",  "grid.n_bins",        "sim.area_side",
        "sim.n_realizations", "sim.master_seed",   "sim.workers",        "sweep.phi_min",
        "sweep.phi_max",    "sweep.phi_points",    "sweep.distance_min", "sweep.distance_max",
        "sweep.distance_points", "sweep.simulate", "blockage.path_ratios", "blockage.theta_points",
    };
    return keys;
}

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

// Drops a trailing "; comment" or "# comment".
std::string strip_comment(const std::string &value)
{
    const auto pos = value.find_first_of(";#");
    return trim(pos == std::string::npos ? value : value.substr(0, pos));
}

void set_checked(Settings &settings, const std::string &key, const std::string &value)
{
    if (!known_keys().contains(key))
        throw UsageError(fmt::format("unknown setting '{}'", key));
    settings[key] = value;
}

template <typename T>
T parse_number(const Settings &settings, const std::string &key)
{
    const auto it = settings.find(key);
    if (it == settings.end())
        throw UsageError(fmt::format("missing setting '{}'", key));
    const std::string &text = it->second;
    T value{};
    const char *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw UsageError(fmt::format("setting '{}': cannot parse '{}'", key, text));
    return value;
}

bool parse_bool(const Settings &settings, const std::string &key)
{
    const std::string &v = settings.at(key);
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw UsageError(fmt::format("setting '{}': expected true/false, got '{}'", key, v));
}

std::vector<double> parse_list(const Settings &settings, const std::string &key)
{
    std::vector<double> out;
    std::stringstream in(settings.at(key));
    std::string item;
    while (std::getline(in, item, ','))
    {
        Settings one{{key, trim(item)}};
        out.push_back(parse_number<double>(one, key));
    }
    if (out.empty())
        throw UsageError(fmt::format("setting '{}' is empty", key));
    return out;
}

std::vector<double> linspace(double lo, double hi, int points)
{
    if (points < 1)
        throw DomainError("sweep needs at least one point");
    if (points == 1)
        return {lo};
    std::vector<double> v(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    return v;
}

} // namespace

Settings default_settings()
{
    return Settings{
        {"link.distance", "100"},      {"link.frequency", "73e9"},     {"link.sigma_db", "3"},
        {"env.phi", "0.05"},           {"env.length_min", "9"},        {"env.length_max", "11"},
        {"env.width_min", "9"},        {"env.width_max", "11"},        {"grid.tau_max_ratio", "3"},
        {"grid.n_bins", "40"},         {"sim.area_side", "500"},       {"sim.n_realizations", "2000"},
        {"sim.workers", "0"},          {"sweep.phi_min", "0.03"},      {"sweep.phi_max", "0.9"},
        {"sweep.phi_points", "30"},    {"sweep.distance_min", "10"},   {"sweep.distance_max", "1000"},
        {"sweep.distance_points", "100"}, {"sweep.simulate", "false"}, {"blockage.path_ratios", "1.1,1.5,2.0"},
        {"blockage.theta_points", "179"},
    };
}

Settings read_settings(std::istream &in, Settings base)
{
    boost::property_tree::ptree tree;
    try
    {
        boost::property_tree::ini_parser::read_ini(in, tree);
    }
    catch (const boost::property_tree::ini_parser_error &e)
    {
        throw UsageError(fmt::format("scenario file: {}", e.what()));
    }

    Settings file;
    for (const auto &[section, body] : tree)
    {
        if (body.empty())
            throw UsageError(fmt::format("scenario file: key '{}' outside of a section", section));
        for (const auto &[key, value] : body)
            set_checked(file, section + "." + key, strip_comment(value.data()));
    }
    if (file.contains("env.phi") && file.contains("env.lambda"))
        throw DomainError("scenario file: give exactly one of env.phi and env.lambda");
    if (file.contains("env.phi") || file.contains("env.lambda"))
    {
        base.erase("env.phi");
        base.erase("env.lambda");
    }
    for (auto &[key, value] : file)
        base[key] = value;
    return base;
}

Settings load_settings(const std::string &path, Settings base)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError(fmt::format("cannot open scenario file '{}'", path));
    return read_settings(in, std::move(base));
}

void apply_override(Settings &settings, std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw UsageError(fmt::format("override '{}' is not of the form key=value", assignment));
    const std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    if (key == "env.phi")
        settings.erase("env.lambda");
    else if (key == "env.lambda")
        settings.erase("env.phi");
    set_checked(settings, key, value);
}

std::span<const SizeClass> size_classes()
{
    static const SizeClass classes[] = {
        {0, "small", {9, 11}, {9, 11}},
        {1, "medium", {54, 56}, {49, 51}},
        {2, "large", {149, 151}, {149, 151}},
    };
    return classes;
}

std::vector<double> Scenario::phi_sweep() const
{
    return linspace(phi_min, phi_max, phi_points);
}

std::vector<double> Scenario::distance_sweep() const
{
    return linspace(distance_min, distance_max, distance_points);
}

std::uint64_t Scenario::require_seed() const
{
    if (!master_seed)
        throw UsageError("this command is randomized and needs an explicit seed (--seed or sim.master_seed)");
    return *master_seed;
}

Scenario Scenario::with_environment(double phi, const SizeClass &size) const
{
    Scenario s = *this;
    s.env = EnvironmentParams::from_covered_ratio(phi, size.length, size.width);
    return s;
}

Scenario make_scenario(const Settings &settings)
{
    Scenario s;
    s.sigma_db = parse_number<double>(settings, "link.sigma_db");
    if (!(s.sigma_db >= 0))
        throw DomainError(fmt::format("link.sigma_db must be >= 0 dB, got {}", s.sigma_db));
    s.link = LinkParams::with_loss_db(parse_number<double>(settings, "link.distance"),
                                      parse_number<double>(settings, "link.frequency"), s.sigma_db);
    s.link.validate();

    s.env.length = {parse_number<double>(settings, "env.length_min"), parse_number<double>(settings, "env.length_max")};
    s.env.width = {parse_number<double>(settings, "env.width_min"), parse_number<double>(settings, "env.width_max")};
    const bool has_phi = settings.contains("env.phi");
    const bool has_lambda = settings.contains("env.lambda");
    if (has_phi == has_lambda)
        throw DomainError("exactly one of env.phi and env.lambda must be given");
    s.env.validate();
    s.env.density = has_phi ? lambda_from_phi(parse_number<double>(settings, "env.phi"), s.env.mean_length(),
                                              s.env.mean_width())
                            : parse_number<double>(settings, "env.lambda");
    s.env.validate();

    s.tau_max_ratio = parse_number<double>(settings, "grid.tau_max_ratio");
    s.n_bins = parse_number<int>(settings, "grid.n_bins");
    if (!(s.tau_max_ratio > 1))
        throw DomainError(fmt::format("grid.tau_max_ratio must exceed 1, got {}", s.tau_max_ratio));
    s.grid().validate();

    s.area_side = parse_number<double>(settings, "sim.area_side");
    const auto n = parse_number<long long>(settings, "sim.n_realizations");
    if (n < 1)
        throw DomainError("sim.n_realizations must be >= 1");
    s.n_realizations = static_cast<std::size_t>(n);
    if (settings.contains("sim.master_seed"))
        s.master_seed = parse_number<std::uint64_t>(settings, "sim.master_seed");
    s.workers = parse_number<unsigned>(settings, "sim.workers");
    s.scene().validate();

    s.phi_min = parse_number<double>(settings, "sweep.phi_min");
    s.phi_max = parse_number<double>(settings, "sweep.phi_max");
    s.phi_points = parse_number<int>(settings, "sweep.phi_points");
    s.distance_min = parse_number<double>(settings, "sweep.distance_min");
    s.distance_max = parse_number<double>(settings, "sweep.distance_max");
    s.distance_points = parse_number<int>(settings, "sweep.distance_points");
    s.simulate = parse_bool(settings, "sweep.simulate");
    s.path_ratios = parse_list(settings, "blockage.path_ratios");
    s.theta_points = parse_number<int>(settings, "blockage.theta_points");
    if (!(s.phi_min >= 0) || !(s.phi_max < 1) || s.phi_points < 1 || s.phi_min > s.phi_max)
        throw DomainError("sweep: need 0 <= phi_min <= phi_max < 1 and phi_points >= 1");
    if (!(s.distance_min > 0) || s.distance_min > s.distance_max || s.distance_points < 1)
        throw DomainError("sweep: need 0 < distance_min <= distance_max and distance_points >= 1");
    if (s.theta_points < 1)
        throw DomainError("blockage.theta_points must be >= 1");
    for (double r : s.path_ratios)
        if (!(r > 1))
            throw DomainError(fmt::format("blockage.path_ratios entries must exceed 1, got {}", r));
    return s;
}

void CsvTable::add_row(std::vector<double> row)
{
    if (row.size() != columns.size())
        throw std::logic_error(fmt::format("CsvTable: row has {} fields, header has {}", row.size(), columns.size()));
    rows.push_back(std::move(row));
}

std::string CsvTable::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i)
        out += (i ? "," : "") + columns[i];
    out += '\n';
    for (const auto &row : rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            if (i)
                out += ',';
            fmt::format_to(std::back_inserter(out), "{:.10g}", row[i]);
        }
        out += '\n';
    }
    return out;
}

} // namespace mmw::app
