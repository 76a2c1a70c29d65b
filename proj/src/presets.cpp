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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include <fmt/format.h>

#include "mmw/errors.hpp"
#include "mmw/geometry.hpp"
#include "mmw/numerics.hpp"
#include "mmw/scenario.hpp"

namespace mmw::app
{
namespace
{

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// 10 log10, with -inf for a zero gain.
double to_db(double gain)
{
    return gain > 0 ? linear_to_db(gain) : -std::numeric_limits<double>::infinity();
}

std::vector<double> phi_set() { return {0.05, 0.2, 0.4}; }

struct PathlossRow
{
    double los;
    double ref;
    double total;
};

PathlossRow pathloss_at(const Scenario &s)
{
    const double los = los_pathloss(s.link, s.env);
    const double ref = ref_pathloss(s.link, s.env, s.grid());
    return {los, ref, los + ref};
}

} // namespace

double pdp_bin_average(double lo, double hi, const LinkParams &link, const EnvironmentParams &env)
{
    const double tau0 = link.los_delay();
    if (!(hi > lo))
        throw DomainError(fmt::format("pdp_bin_average: empty bin [{}, {}]", lo, hi));
    // The profile is finite but undefined at tau0 itself.
    const double start = std::max(lo, tau0 * (1 + 1e-9));
    // Integrate over u in [0, 1] so the result is the bin mean itself; raw
    // values in seconds sit far below any absolute tolerance.
    const QuadratureSpec spec{1e-300, 1e-9, 40};
    const double mean = integrate_or_throw([&](double u) { return pdp(start + u * (hi - start), link, env); }, 0, 1,
                                           spec);
    return mean * (hi - start) / (hi - lo);
}

CsvTable blockage_area_table(const Scenario &s)
{
    CsvTable t{{"path_ratio", "theta_rad", "exact_area_m2", "approx_area_m2", "relative_error"}, {}};
    const double D = s.link.distance;
    const double l = s.env.mean_length();
    const double w = s.env.mean_width();
    for (double ratio : s.path_ratios)
    {
        const double L = ratio * D;
        const double tau = L / speed_of_light;
        for (int k = 1; k <= s.theta_points; ++k)
        {
            const double theta = std::numbers::pi * k / (s.theta_points + 1);
            const double exact = exact_blockage_area(D, L, theta, l, w);
            const double approx = blockage_area_approx(tau, theta, l, w, s.link);
            t.add_row({ratio, theta, exact, approx, std::abs(approx - exact) / exact});
        }
    }
    return t;
}

CsvTable pdp_analytic_table(const Scenario &s)
{
    CsvTable t{{"tau_s", "a", "pdp_closed_per_s", "pdp_closed_db", "pdp_numeric_per_s", "pdp_numeric_db",
                "density_closed_per_s", "density_numeric_per_s"},
               {}};
    const DelayGrid g = s.grid();
    for (int i = 0; i < g.n_bins; ++i)
    {
        const double tau = g.center(i);
        const double closed = pdp(tau, s.link, s.env);
        const double numeric = pdp_numeric(tau, s.link, s.env);
        t.add_row({tau, tau / g.tau0, closed, to_db(closed), numeric, to_db(numeric),
                   path_density_closed(tau, s.link, s.env), path_density_numeric(tau, s.link, s.env)});
    }
    return t;
}

CsvTable pdp_simulate_table(const Scenario &s)
{
    CsvTable t{{"bin_lo_s", "bin_hi_s", "tau_s", "a", "pdp_sim_per_s", "pdp_sim_stderr_per_s", "pdp_sim_db",
                "pdp_closed_bin_avg_per_s", "pdp_closed_db"},
               {}};
    const DelayGrid g = s.grid();
    const auto est = mc::estimate_pdp(s.scene(), g, s.n_realizations, s.require_seed(), s.workers);
    for (int i = 0; i < g.n_bins; ++i)
    {
        const double sim = est.bin_values(i);
        const double closed = pdp_bin_average(g.edge(i), g.edge(i + 1), s.link, s.env);
        t.add_row({g.edge(i), g.edge(i + 1), g.center(i), g.center(i) / g.tau0, sim, est.bin_stderr(i), to_db(sim),
                   closed, to_db(closed)});
    }
    return t;
}

CsvTable pathloss_vs_phi_table(const Scenario &s)
{
    CsvTable t{{"phi", "lambda_per_m2", "los_gain", "los_db", "ref_gain", "ref_db", "total_gain", "total_db"}, {}};
    for (double phi : s.phi_sweep())
    {
        Scenario p = s;
        p.env.density = lambda_from_phi(phi, s.env.mean_length(), s.env.mean_width());
        const auto r = pathloss_at(p);
        t.add_row({phi, p.env.density, r.los, to_db(r.los), r.ref, to_db(r.ref), r.total, to_db(r.total)});
    }
    return t;
}

CsvTable pathloss_vs_distance_table(const Scenario &s)
{
    CsvTable t{{"distance_m", "los_gain", "los_db", "ref_gain", "ref_db", "total_gain", "total_db"}, {}};
    for (double d : s.distance_sweep())
    {
        Scenario p = s;
        p.link = LinkParams::with_loss_db(d, s.link.frequency, s.sigma_db);
        const auto r = pathloss_at(p);
        t.add_row({d, r.los, to_db(r.los), r.ref, to_db(r.ref), r.total, to_db(r.total)});
    }
    return t;
}

CsvTable numpaths_vs_phi_table(const Scenario &s)
{
    CsvTable t{{"phi", "lambda_per_m2", "avg_num_paths"}, {}};
    if (s.simulate)
    {
        t.columns.push_back("sim_mean");
        t.columns.push_back("sim_stderr");
    }
    for (double phi : s.phi_sweep())
    {
        Scenario p = s;
        p.env.density = lambda_from_phi(phi, s.env.mean_length(), s.env.mean_width());
        std::vector<double> row{phi, p.env.density, avg_num_paths(p.link, p.env, p.grid())};
        if (s.simulate)
        {
            const auto m = mc::estimate_avg_num_paths(p.scene(), p.n_realizations, p.require_seed(), p.grid().tau_max,
                                                      p.workers);
            row.push_back(m.mean);
            row.push_back(m.std_error);
        }
        t.add_row(std::move(row));
    }
    return t;
}

namespace
{

// Base scenario for the presets: defaults plus the caller's simulation knobs.
Scenario preset_base(const Scenario &s)
{
    Scenario p = make_scenario(default_settings());
    p.n_realizations = s.n_realizations;
    p.master_seed = s.master_seed;
    p.workers = s.workers;
    return p;
}

CsvTable fig4(const Scenario &s)
{
    Scenario p = preset_base(s);
    p.env.length = SizeDistribution::fixed(55);
    p.env.width = SizeDistribution::fixed(50);
    p.path_ratios = {1.1, 1.5, 2.0};
    p.theta_points = 179;
    return blockage_area_table(p);
}

CsvTable fig5(int cls, const Scenario &s)
{
    const SizeClass &size = size_classes()[static_cast<std::size_t>(cls)];
    const Scenario base = preset_base(s);
    const std::uint64_t seed = base.require_seed();
    CsvTable t{{"phi", "bin_lo_s", "bin_hi_s", "tau_s", "a", "pdp_closed_bin_avg_per_s", "pdp_closed_db",
                "pdp_numeric_per_s", "pdp_sim_per_s", "pdp_sim_stderr_per_s", "pdp_sim_db"},
               {}};
    for (double phi : phi_set())
    {
        const Scenario p = base.with_environment(phi, size);
        const DelayGrid g = p.grid();
        // The dense small-building case is shown analytically only.
        const bool simulate = !(size.id == 0 && phi == 0.4);
        std::optional<mc::PdpEstimate> est;
        if (simulate)
            est = mc::estimate_pdp(p.scene(), g, p.n_realizations, seed, p.workers);
        for (int i = 0; i < g.n_bins; ++i)
        {
            const double closed = pdp_bin_average(g.edge(i), g.edge(i + 1), p.link, p.env);
            const double sim = est ? est->bin_values(i) : nan;
            const double err = est ? est->bin_stderr(i) : nan;
            t.add_row({phi, g.edge(i), g.edge(i + 1), g.center(i), g.center(i) / g.tau0, closed, to_db(closed),
                       pdp_numeric(g.center(i), p.link, p.env), sim, err, est ? to_db(sim) : nan});
        }
    }
    return t;
}

CsvTable fig7(const Scenario &s)
{
    const Scenario base = preset_base(s);
    CsvTable t{{"size_class", "mean_length_m", "mean_width_m", "phi", "los_gain", "los_db", "ref_gain", "ref_db",
                "total_gain", "total_db"},
               {}};
    for (const SizeClass &size : size_classes())
        for (double phi : base.phi_sweep())
        {
            const Scenario p = base.with_environment(phi, size);
            const auto r = pathloss_at(p);
            t.add_row({double(size.id), p.env.mean_length(), p.env.mean_width(), phi, r.los, to_db(r.los), r.ref,
                       to_db(r.ref), r.total, to_db(r.total)});
        }
    return t;
}

CsvTable fig8(const Scenario &s)
{
    const Scenario base = preset_base(s);
    CsvTable t{{"phi", "distance_m", "los_gain", "los_db", "ref_gain", "ref_db", "total_gain", "total_db"}, {}};
    for (double phi : {0.05, 0.4})
    {
        const Scenario env = base.with_environment(phi, size_classes()[0]);
        for (double d : base.distance_sweep())
        {
            Scenario p = env;
            p.link = LinkParams::with_loss_db(d, base.link.frequency, base.sigma_db);
            const auto r = pathloss_at(p);
            t.add_row({phi, d, r.los, to_db(r.los), r.ref, to_db(r.ref), r.total, to_db(r.total)});
        }
    }
    return t;
}

CsvTable fig9(const Scenario &s)
{
    const Scenario base = preset_base(s);
    const std::uint64_t seed = base.require_seed();
    CsvTable t{{"size_class", "mean_length_m", "mean_width_m", "phi", "avg_num_paths", "sim_mean", "sim_stderr"},
               {}};
    for (const SizeClass &size : size_classes())
        for (double phi : base.phi_sweep())
        {
            const Scenario p = base.with_environment(phi, size);
            const double analytic = avg_num_paths(p.link, p.env, p.grid());
            const auto m = mc::estimate_avg_num_paths(p.scene(), p.n_realizations, seed, p.grid().tau_max, p.workers);
            t.add_row({double(size.id), p.env.mean_length(), p.env.mean_width(), phi, analytic, m.mean, m.std_error});
        }
    return t;
}

// Prepends the reflection loss in dB and linear form to every row.
CsvTable with_sigma(CsvTable t, double sigma_db)
{
    t.columns.insert(t.columns.begin(), {"sigma_db", "sigma_linear"});
    for (auto &row : t.rows)
        row.insert(row.begin(), {sigma_db, db_to_linear(sigma_db)});
    return t;
}

} // namespace

CsvTable reproduce(std::string_view figure, const Scenario &s)
{
    if (figure == "fig4")
        return fig4(s);
    if (figure == "fig5a")
        return with_sigma(fig5(0, s), 3);
    if (figure == "fig5b")
        return with_sigma(fig5(1, s), 3);
    if (figure == "fig5c")
        return with_sigma(fig5(2, s), 3);
    if (figure == "fig7")
        return with_sigma(fig7(s), 3);
    if (figure == "fig8")
        return with_sigma(fig8(s), 3);
    if (figure == "fig9")
        return fig9(s);
    throw UsageError(fmt::format("unknown figure '{}'", figure));
}

CsvTable run_command(std::string_view command, std::string_view figure, const Scenario &s)
{
    if (command == "blockage-area")
        return blockage_area_table(s);
    if (command == "pdp-analytic")
        return with_sigma(pdp_analytic_table(s), s.sigma_db);
    if (command == "pdp-simulate")
        return with_sigma(pdp_simulate_table(s), s.sigma_db);
    if (command == "pathloss-vs-phi")
        return with_sigma(pathloss_vs_phi_table(s), s.sigma_db);
    if (command == "pathloss-vs-distance")
        return with_sigma(pathloss_vs_distance_table(s), s.sigma_db);
    if (command == "numpaths-vs-phi")
        return numpaths_vs_phi_table(s);
    if (command == "reproduce")
        return reproduce(figure, s);
    throw UsageError(fmt::format("unknown command '{}'", command));
}

} // namespace mmw::app
