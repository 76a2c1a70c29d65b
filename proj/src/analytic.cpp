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

#include "mmw/analytic.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <utility>

#include <fmt/format.h>

#include "mmw/errors.hpp"

namespace mmw
{
namespace
{

constexpr double pi = std::numbers::pi;

std::atomic<std::uint64_t> clamp_counter{0};

void require_beyond_los(double tau, const LinkParams &link, const char *who)
{
    if (!(speed_of_light * tau > link.distance))
        throw DomainError(fmt::format("{}: delay {} s is not beyond the LoS delay {} s", who, tau, link.los_delay()));
}

void require_orientation(double theta, const char *who)
{
    if (!(theta > 0) || theta > pi)
        throw DomainError(fmt::format("{}: orientation {} outside (0, pi]", who, theta));
}

// sqrt(a^2 - 1) - a, written to avoid cancellation for large a.
double ellipse_gap(double a)
{
    return -1.0 / (a + std::sqrt(a * a - 1.0));
}

// Expected number of unblocked paths per unit of normalized path length a.
double paths_per_unit_a(double a, const LinkParams &link, const EnvironmentParams &env)
{
    const double tau = a * link.los_delay();
    return path_density_closed(tau, link, env) * link.los_delay();
}

} // namespace

void LinkParams::validate() const
{
    if (!(distance > 0) || !std::isfinite(distance))
        throw DomainError(fmt::format("link: distance must be positive, got {}", distance));
    if (!(frequency > 0) || !std::isfinite(frequency))
        throw DomainError(fmt::format("link: frequency must be positive, got {}", frequency));
    if (!(reflection_loss >= 1) || !std::isfinite(reflection_loss))
        throw DomainError(fmt::format("link: reflection loss must be >= 1 (>= 0 dB), got {}", reflection_loss));
}

EnvironmentParams EnvironmentParams::from_covered_ratio(double phi, SizeDistribution length, SizeDistribution width)
{
    EnvironmentParams env{0, length, width};
    env.density = lambda_from_phi(phi, env.mean_length(), env.mean_width());
    return env;
}

void EnvironmentParams::validate() const
{
    if (!(density >= 0) || !std::isfinite(density))
        throw DomainError(fmt::format("environment: density must be >= 0, got {}", density));
    for (const auto &[name, d] : {std::pair{"length", length}, std::pair{"width", width}})
    {
        if (!(d.lo > 0) || !(d.hi >= d.lo) || !std::isfinite(d.hi))
            throw DomainError(fmt::format("environment: {} range [{}, {}] must satisfy 0 < lo <= hi", name, d.lo, d.hi));
    }
}

DelayGrid DelayGrid::for_link(const LinkParams &link, double tau_max_ratio, int n_bins)
{
    DelayGrid g{link.los_delay(), tau_max_ratio * link.los_delay(), n_bins};
    g.validate();
    return g;
}

int DelayGrid::bin_of(double tau) const
{
    if (!(tau >= tau0) || !(tau < tau_max))
        return -1;
    const int i = static_cast<int>((tau - tau0) / bin_width());
    return std::min(i, n_bins - 1);
}

void DelayGrid::validate() const
{
    if (!(tau0 > 0) || !(tau_max > tau0) || n_bins < 1)
        throw DomainError(fmt::format("grid: need 0 < tau0 < tau_max and n_bins >= 1 (got {}, {}, {})", tau0, tau_max,
                                      n_bins));
}

double reflected_path_gain(double tau, const LinkParams &link)
{
    if (!(tau > 0))
        throw DomainError(fmt::format("reflected_path_gain: delay must be positive, got {}", tau));
    const double k = 4 * pi * link.frequency * tau;
    return 1.0 / (k * k * link.reflection_loss);
}

double reflector_density(double tau, double theta, double side_mean, const LinkParams &link,
                         const EnvironmentParams &env)
{
    require_beyond_los(tau, link, "reflector_density");
    const double path = speed_of_light * tau;
    const double cos_t = std::cos(theta);
    const double radical = std::sqrt(path * path - link.distance * link.distance * cos_t * cos_t);
    return env.density * side_mean * path / (2 * radical);
}

double blockage_area_approx(double tau, double theta, double length, double width, const LinkParams &link)
{
    const double path = speed_of_light * tau;
    const double d = link.distance;
    if (!(path >= d))
        throw DomainError(fmt::format("blockage_area_approx: path length {} shorter than D = {}", path, d));
    const double cos_t = std::cos(theta);
    const double swept = length * std::sqrt(path * path - d * d * cos_t * cos_t) + width * d * std::abs(cos_t);
    // Overlap of the two regions near the reflection point, averaged between
    // its rectangular (theta = pi/2) and triangular (theta = pi) extremes.
    const double overlap = length * (path - d) / 4 + length * length * std::sqrt(path * path - d * d) / (8 * d);
    return swept + length * width - overlap;
}

double unblocked_probability(double tau, double theta, double length, double width, const LinkParams &link,
                             const EnvironmentParams &env)
{
    double area = blockage_area_approx(tau, theta, length, width, link);
    if (area < 0)
    {
        clamp_counter.fetch_add(1, std::memory_order_relaxed);
        area = 0;
    }
    return std::exp(-env.density * area);
}

std::uint64_t negative_area_clamp_count()
{
    return clamp_counter.load(std::memory_order_relaxed);
}

double path_density_given_orientation(double tau, double theta, const LinkParams &link, const EnvironmentParams &env)
{
    require_beyond_los(tau, link, "path_density_given_orientation");
    require_orientation(theta, "path_density_given_orientation");

    double along = env.mean_length();
    double across = env.mean_width();
    double phi = theta;
    if (theta <= pi / 2)
    {
        // The wall tangent at R1 is rotated by a quarter turn and the two
        // building sides trade roles.
        phi = theta + pi / 2;
        std::swap(along, across);
    }
    // Each term counts a tangency point and its mirror image through the origin.
    const double per_meter = 2 * reflector_density(tau, phi, along, link, env) *
                                 unblocked_probability(tau, phi, along, across, link, env) +
                             2 * reflector_density(tau, phi, across, link, env) *
                                 unblocked_probability(tau, phi, across, along, link, env);
    return per_meter * speed_of_light;
}

double path_density_numeric(double tau, const LinkParams &link, const EnvironmentParams &env,
                            const QuadratureSpec &spec)
{
    require_beyond_los(tau, link, "path_density_numeric");
    if (env.density == 0)
        return 0;
    const auto f = [&](double theta) { return path_density_given_orientation(tau, theta, link, env); };
    return 2 / pi * integrate_or_throw(f, pi / 2, pi, spec);
}

double path_density_numeric_full(double tau, const LinkParams &link, const EnvironmentParams &env,
                                 const QuadratureSpec &spec)
{
    require_beyond_los(tau, link, "path_density_numeric_full");
    if (env.density == 0)
        return 0;
    const auto f = [&](double theta) { return path_density_given_orientation(tau, theta, link, env); };
    return (integrate_or_throw(f, 0, pi / 2, spec) + integrate_or_throw(f, pi / 2, pi, spec)) / pi;
}

ClosedFormCoeffs closed_form_coeffs(double tau, const LinkParams &link, const EnvironmentParams &env)
{
    require_beyond_los(tau, link, "closed_form_coeffs");
    const double lambda = env.density;
    const double el = env.mean_length();
    const double ew = env.mean_width();
    const double d = link.distance;

    ClosedFormCoeffs k;
    k.a = speed_of_light * tau / d;
    const double a = k.a;
    const double root = std::sqrt(a * a - 1);
    const double gap = ellipse_gap(a);
    k.eta = std::sqrt(a * a - 0.5);
    const double eta = k.eta;

    const auto zeta = [&](double side, double other) {
        const double exponent = lambda * side * (d * (a - 1) / 4 - d * eta - other) +
                                lambda * side * side * root / 8 + lambda * other * d * (a - eta) / gap;
        return lambda * side * a * std::exp(exponent) * speed_of_light;
    };
    k.zeta1 = zeta(el, ew);
    k.zeta2 = zeta(ew, el);
    k.beta1 = lambda * d * (el + ew / gap);
    k.beta2 = lambda * d * (ew + el / gap);
    return k;
}

double path_density_closed(double tau, const LinkParams &link, const EnvironmentParams &env)
{
    const ClosedFormCoeffs k = closed_form_coeffs(tau, link, env);
    if (env.density == 0)
        return 0;
    const double eta = k.eta;
    const double log_ratio = atanh_guarded(pi / (8 * eta * eta));
    const auto term = [&](double zeta, double beta) {
        return zeta * (8 * eta / pi * (1 + eta * beta) * log_ratio - beta);
    };
    return term(k.zeta1, k.beta1) + term(k.zeta2, k.beta2);
}

double pdp(double tau, const LinkParams &link, const EnvironmentParams &env)
{
    return reflected_path_gain(tau, link) * path_density_closed(tau, link, env);
}

double pdp_numeric(double tau, const LinkParams &link, const EnvironmentParams &env, const QuadratureSpec &spec)
{
    return reflected_path_gain(tau, link) * path_density_numeric(tau, link, env, spec);
}

double los_probability(const LinkParams &link, const EnvironmentParams &env)
{
    const double el = env.mean_length();
    const double ew = env.mean_width();
    return std::exp(-2 * env.density * (el + ew) * link.distance / pi - env.density * el * ew);
}

double los_pathloss(const LinkParams &link, const EnvironmentParams &env)
{
    const double k = 4 * pi * link.frequency * link.los_delay();
    return los_probability(link, env) / (k * k);
}

double ref_pathloss(const LinkParams &link, const EnvironmentParams &env, const DelayGrid &grid,
                    const QuadratureSpec &spec)
{
    grid.validate();
    if (env.density == 0)
        return 0;
    // Integrate over a = tau / tau0; the gain falls as 1 / a^2.
    const double gain0 = reflected_path_gain(link.los_delay(), link);
    const auto f = [&](double a) { return paths_per_unit_a(a, link, env) / (a * a); };
    const double lo = grid.tau0 / link.los_delay() * (1 + 1e-9);
    const double hi = grid.tau_max / link.los_delay();
    return gain0 * integrate_or_throw(f, lo, hi, spec);
}

double total_pathloss(const LinkParams &link, const EnvironmentParams &env, const DelayGrid &grid,
                      const QuadratureSpec &spec)
{
    return los_pathloss(link, env) + ref_pathloss(link, env, grid, spec);
}

double avg_num_paths(const LinkParams &link, const EnvironmentParams &env, const DelayGrid &grid,
                     const QuadratureSpec &spec)
{
    grid.validate();
    if (env.density == 0)
        return 0;
    const auto f = [&](double a) { return paths_per_unit_a(a, link, env); };
    const double lo = grid.tau0 / link.los_delay() * (1 + 1e-9);
    const double hi = grid.tau_max / link.los_delay();
    return integrate_or_throw(f, lo, hi, spec);
}

double covered_ratio(const EnvironmentParams &env)
{
    return -std::expm1(-env.density * env.mean_length() * env.mean_width());
}

double lambda_from_phi(double phi, double mean_length, double mean_width)
{
    if (!(phi >= 0) || !(phi < 1))
        throw DomainError(fmt::format("covered ratio must lie in [0, 1), got {}", phi));
    if (!(mean_length > 0) || !(mean_width > 0))
        throw DomainError("lambda_from_phi: mean building dimensions must be positive");
    return -std::log1p(-phi) / (mean_length * mean_width);
}

} // namespace mmw
