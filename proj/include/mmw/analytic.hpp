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

#ifndef MMW_ANALYTIC_HPP
#define MMW_ANALYTIC_HPP

// Closed-form and semi-analytic power delay profile of first-order building
// reflections between an omnidirectional Tx at (-D/2, 0) and Rx at (D/2, 0).
//
// Densities over delay are per second: the expected number of unblocked
// first-order paths with delay in [tau, tau + dtau] is density(tau) * dtau.
// Internally the geometric derivation yields a density per meter of path
// length; it is multiplied by the speed of light on the way out.
//
// The analytic engine only consumes the mean building dimensions.

#include <cmath>
#include <cstdint>

#include "mmw/numerics.hpp"

namespace mmw
{

inline constexpr double speed_of_light = 2.998e8; // m/s

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

struct LinkParams
{
    double distance = 100;      // Tx-Rx separation D (m)
    double frequency = 73e9;    // carrier f (Hz)
    double reflection_loss = 2; // mean reflection loss sigma, linear power factor >= 1

    static LinkParams with_loss_db(double distance, double frequency, double loss_db)
    {
        return LinkParams{distance, frequency, db_to_linear(loss_db)};
    }

    double los_delay() const { return distance / speed_of_light; }

    // Throws DomainError on D <= 0, f <= 0, sigma < 1 or non-finite values.
    void validate() const;
};

// Uniform law on [lo, hi]; lo == hi is a fixed size.
struct SizeDistribution
{
    double lo = 10;
    double hi = 10;

    double mean() const { return 0.5 * (lo + hi); }
    static SizeDistribution fixed(double v) { return {v, v}; }
};

struct EnvironmentParams
{
    double density = 0; // buildings per square meter
    SizeDistribution length;
    SizeDistribution width;

    double mean_length() const { return length.mean(); }
    double mean_width() const { return width.mean(); }

    static EnvironmentParams from_covered_ratio(double phi, SizeDistribution length, SizeDistribution width);

    void validate() const;
};

// Uniform delay bins from the LoS delay tau0 to tau_max.
struct DelayGrid
{
    double tau0 = 0;
    double tau_max = 0;
    int n_bins = 1;

    // Default grid: 40 bins over [D/c, 3 D/c].
    static DelayGrid for_link(const LinkParams &link, double tau_max_ratio = 3.0, int n_bins = 40);

    double bin_width() const { return (tau_max - tau0) / n_bins; }
    double edge(int i) const { return tau0 + i * bin_width(); }
    double center(int i) const { return tau0 + (i + 0.5) * bin_width(); }
    // Bin index of tau, or -1 when tau lies outside [tau0, tau_max).
    int bin_of(double tau) const;

    void validate() const;
};

// Coefficients of the closed-form path density. zeta1 and zeta2 are already
// scaled to per-second densities.
struct ClosedFormCoeffs
{
    double a = 1;     // normalized path length c tau / D
    double eta = 0;   // sqrt(a^2 - 1/2)
    double zeta1 = 0; // length-side scale
    double zeta2 = 0; // width-side scale
    double beta1 = 0;
    double beta2 = 0;
};

// Free-space gain of a once-reflected path of delay tau, 1 / ((4 pi f tau)^2 sigma).
double reflected_path_gain(double tau, const LinkParams &link);

// Density per meter of path length of buildings able to reflect at one
// tangency point of the ellipse, for walls at orientation theta whose length
// has mean side_mean:
//   lambda * side_mean * c tau / (2 sqrt(c^2 tau^2 - D^2 cos^2 theta)).
double reflector_density(double tau, double theta, double side_mean, const LinkParams &link,
                         const EnvironmentParams &env);

// Approximate area of the union of the two blockage regions of a reflected
// path (Tx -> R -> Rx), for a building of length `length` along the reflecting
// wall and depth `width`.
double blockage_area_approx(double tau, double theta, double length, double width, const LinkParams &link);

// exp(-lambda * area), the probability that no building blocks the path. A
// negative approximate area is clamped to zero and counted.
double unblocked_probability(double tau, double theta, double length, double width, const LinkParams &link,
                             const EnvironmentParams &env);

// Number of negative-area clamps applied by unblocked_probability since start.
std::uint64_t negative_area_clamp_count();

// Density over delay of unblocked first-order paths when all buildings have
// orientation theta in (0, pi], summed over the four reflection points.
double path_density_given_orientation(double tau, double theta, const LinkParams &link, const EnvironmentParams &env);

// (1/pi) * integral over theta of the conditional density, evaluated as
// (2/pi) times the integral over (pi/2, pi]. Reference for the closed form.
double path_density_numeric(double tau, const LinkParams &link, const EnvironmentParams &env,
                            const QuadratureSpec &spec = {});

// Same integral over the full (0, pi] range, without the symmetry shortcut.
double path_density_numeric_full(double tau, const LinkParams &link, const EnvironmentParams &env,
                                 const QuadratureSpec &spec = {});

ClosedFormCoeffs closed_form_coeffs(double tau, const LinkParams &link, const EnvironmentParams &env);

// Closed-form path density (per second).
double path_density_closed(double tau, const LinkParams &link, const EnvironmentParams &env);

// Power delay profile: reflected_path_gain * path_density_closed.
double pdp(double tau, const LinkParams &link, const EnvironmentParams &env);
double pdp_numeric(double tau, const LinkParams &link, const EnvironmentParams &env, const QuadratureSpec &spec = {});

// Mean LoS gain: free-space gain at D times the LoS probability of a
// segment of length D among randomly oriented rectangles.
double los_pathloss(const LinkParams &link, const EnvironmentParams &env);

// Probability that the direct Tx-Rx segment is unblocked.
double los_probability(const LinkParams &link, const EnvironmentParams &env);

// Integral of pdp over [tau0, tau_max] of the grid.
double ref_pathloss(const LinkParams &link, const EnvironmentParams &env, const DelayGrid &grid,
                    const QuadratureSpec &spec = {});

double total_pathloss(const LinkParams &link, const EnvironmentParams &env, const DelayGrid &grid,
                      const QuadratureSpec &spec = {});

// Integral of path_density_closed over [tau0, tau_max] of the grid.
double avg_num_paths(const LinkParams &link, const EnvironmentParams &env, const DelayGrid &grid,
                     const QuadratureSpec &spec = {});

// Covered ratio 1 - exp(-lambda E[l] E[w]) and its inverse.
double covered_ratio(const EnvironmentParams &env);
double lambda_from_phi(double phi, double mean_length, double mean_width);

} // namespace mmw

#endif
