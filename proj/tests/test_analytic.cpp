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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "mmw/analytic.hpp"
#include "mmw/errors.hpp"
#include "mmw/geometry.hpp"
#include "oracles.hpp"

using namespace mmw;
using std::numbers::pi;

namespace
{

constexpr double c = speed_of_light;

EnvironmentParams env_for(double phi, double l_lo, double l_hi, double w_lo, double w_hi)
{
    return EnvironmentParams::from_covered_ratio(phi, {l_lo, l_hi}, {w_lo, w_hi});
}

EnvironmentParams small_env(double phi) { return env_for(phi, 9, 11, 9, 11); }
EnvironmentParams medium_env(double phi) { return env_for(phi, 54, 56, 49, 51); }

// Reflector density and survival written out from the model, for the
// compositional check.
double f_rf(double path, double D, double theta, double side, double lambda)
{
    return lambda * side * path / (2 * std::sqrt(path * path - D * D * std::cos(theta) * std::cos(theta)));
}

double f_nb(double path, double D, double theta, double l, double w, double lambda)
{
    const double ct = std::cos(theta);
    const double area = l * std::sqrt(path * path - D * D * ct * ct) + w * D * std::abs(ct) + l * w -
                        l * (path - D) / 4 - l * l * std::sqrt(path * path - D * D) / (8 * D);
    return std::exp(-lambda * std::max(area, 0.0));
}

} // namespace

TEST(PathGain, Examples)
{
    const LinkParams link = LinkParams::with_loss_db(100, 73e9, 10 * std::log10(2.0));
    const double g = reflected_path_gain(link.los_delay(), link);
    EXPECT_NEAR(g, 5.34e-12, 0.01e-12);
    EXPECT_NEAR(linear_to_db(g), -112.7, 0.05);

    const LinkParams free{100, 73e9, 1};
    const double tau = 4e-7;
    const double fs = c / (4 * pi * 73e9 * c * tau);
    EXPECT_NEAR(reflected_path_gain(tau, free), fs * fs, 1e-15 * fs * fs);
    EXPECT_DOUBLE_EQ(reflected_path_gain(2 * tau, link) * 4, reflected_path_gain(tau, link));
    EXPECT_THROW(reflected_path_gain(0, link), DomainError);
}

TEST(ReflectorDensity, Examples)
{
    const LinkParams link;
    EnvironmentParams env = small_env(0.05);
    const double tau = 1.5 * link.los_delay();
    EXPECT_DOUBLE_EQ(reflector_density(tau, pi / 2, 10, link, env), env.density * 10 / 2);
    env.density = 5.129e-4;
    EXPECT_NEAR(reflector_density(tau, pi / 2, 10, link, env), 2.5645e-3, 1e-12);
    env.density = 0;
    EXPECT_EQ(reflector_density(tau, 2.0, 10, link, env), 0);
    EXPECT_THROW(reflector_density(link.los_delay(), 2.0, 10, link, env), DomainError);
}

TEST(BlockageApprox, Examples)
{
    const LinkParams link;
    EXPECT_NEAR(blockage_area_approx(110 / c, pi / 2, 55, 50, link), 8489.2, 0.05);
    EXPECT_NEAR(blockage_area_approx(100 / c, pi / 2, 55, 50, link), 55 * 100 + 55 * 50, 1e-6);
    EXPECT_THROW(blockage_area_approx(90 / c, pi / 2, 55, 50, link), DomainError);
}

TEST(BlockageApprox, WithinFivePercentOfExactAtShortPaths)
{
    const LinkParams link;
    for (int k = 1; k < 1000; ++k)
    {
        const double theta = pi * k / 1000;
        const double exact = exact_blockage_area(100.0, 110.0, theta, 55.0, 50.0);
        EXPECT_LE(std::abs(blockage_area_approx(110 / c, theta, 55, 50, link) - exact) / exact, 0.05) << theta;
    }
}

TEST(Unblocked, ExamplesAndMonotonicity)
{
    const LinkParams link;
    EnvironmentParams env = medium_env(0.2);
    env.density = 0;
    EXPECT_EQ(unblocked_probability(110 / c, pi / 2, 55, 50, link, env), 1);
    env.density = 8.114e-5;
    EXPECT_NEAR(unblocked_probability(110 / c, pi / 2, 55, 50, link, env), 0.5022, 1e-4);
    double prev = 1;
    for (double lambda = 1e-5; lambda < 1e-3; lambda *= 1.5)
    {
        env.density = lambda;
        const double p = unblocked_probability(130 / c, 2.2, 55, 50, link, env);
        EXPECT_LT(p, prev);
        prev = p;
    }
}

TEST(Unblocked, NegativeAreaIsClampedAndCounted)
{
    // Long, shallow buildings close to a short link.
    const LinkParams link{10, 73e9, 2};
    EnvironmentParams env = env_for(0.3, 149, 151, 0.5, 1.5);
    const double tau = 3 * link.los_delay();
    ASSERT_LT(blockage_area_approx(tau, pi, 150, 1, link), 0);
    const auto before = negative_area_clamp_count();
    EXPECT_EQ(unblocked_probability(tau, pi, 150, 1, link, env), 1);
    EXPECT_EQ(negative_area_clamp_count(), before + 1);
}

TEST(ConditionalDensity, ComposesFromFactors)
{
    const LinkParams link;
    const EnvironmentParams env = medium_env(0.2);
    const double path = 150, theta = 3 * pi / 4, D = link.distance, lam = env.density;
    const double el = env.mean_length(), ew = env.mean_width();
    const double want = c * (2 * f_rf(path, D, theta, el, lam) * f_nb(path, D, theta, el, ew, lam) +
                             2 * f_rf(path, D, theta, ew, lam) * f_nb(path, D, theta, ew, el, lam));
    EXPECT_NEAR(path_density_given_orientation(path / c, theta, link, env), want, 1e-12 * want);

    // Below a quarter turn the wall direction rotates and the sides swap.
    const double t2 = pi / 3, phi = t2 + pi / 2;
    const double want2 = c * (2 * f_rf(path, D, phi, ew, lam) * f_nb(path, D, phi, ew, el, lam) +
                              2 * f_rf(path, D, phi, el, lam) * f_nb(path, D, phi, el, ew, lam));
    EXPECT_NEAR(path_density_given_orientation(path / c, t2, link, env), want2, 1e-12 * want2);

    EnvironmentParams none = env;
    none.density = 0;
    EXPECT_EQ(path_density_given_orientation(path / c, theta, link, none), 0);
}

TEST(NumericDensity, SymmetryShortcutAndPinnedValue)
{
    const LinkParams link;
    const EnvironmentParams env = medium_env(0.2);
    const double tau = 150 / c;
    const double half = path_density_numeric(tau, link, env);
    const double full = path_density_numeric_full(tau, link, env);
    EXPECT_NEAR(half, full, 1e-7 * full);

    // Brute-force midpoint rule on each half; the integrand jumps at pi/2.
    const int n = 100000;
    double sum = 0;
    for (int i = 0; i < 2 * n; ++i)
        sum += path_density_given_orientation(tau, pi * (i + 0.5) / (2 * n), link, env);
    const double brute = sum / (2 * n);
    EXPECT_NEAR(half, brute, 1e-7 * brute);

    // Regression value for this scenario.
    EXPECT_NEAR(half, 1110182.541054468, 1e-9 * half);

    EnvironmentParams none = env;
    none.density = 0;
    EXPECT_EQ(path_density_numeric(tau, link, none), 0);
}

TEST(ClosedForm, StructureAndLimits)
{
    const LinkParams link;
    EnvironmentParams env = small_env(0.2);
    for (double a : {1.0 + 1e-12, 1.05, 2.0, 3.0, 10.0})
    {
        const auto k = closed_form_coeffs(a * link.los_delay(), link, env);
        EXPECT_NEAR(k.eta, std::sqrt(a * a - 0.5), 1e-12);
        EXPECT_LT(pi / (8 * k.eta * k.eta), 1);
        EXPECT_TRUE(std::isfinite(k.zeta1) && std::isfinite(k.beta1) && std::isfinite(k.zeta2) && std::isfinite(k.beta2));
        EXPECT_GE(path_density_closed(a * link.los_delay(), link, env), 0);
    }
    // Approaching the LoS delay the closed form tends to a finite value.
    const double near1 = path_density_closed((1 + 1e-12) * link.los_delay(), link, env);
    const double near2 = path_density_closed((1 + 1e-9) * link.los_delay(), link, env);
    EXPECT_NEAR(near1, near2, 1e-4 * near2);

    env.density = 0;
    const auto k0 = closed_form_coeffs(2 * link.los_delay(), link, env);
    EXPECT_EQ(k0.zeta1, 0);
    EXPECT_EQ(k0.zeta2, 0);
    EXPECT_EQ(path_density_closed(2 * link.los_delay(), link, env), 0);
    EXPECT_THROW(path_density_closed(link.los_delay(), link, env), DomainError);
}

TEST(Pdp, FactorsIntoGainTimesDensity)
{
    const LinkParams link = LinkParams::with_loss_db(100, 73e9, 3);
    const EnvironmentParams env = medium_env(0.2);
    for (double a : {1.1, 1.7, 2.6})
    {
        const double tau = a * link.los_delay();
        EXPECT_DOUBLE_EQ(pdp(tau, link, env) / path_density_closed(tau, link, env), reflected_path_gain(tau, link));
    }
    EnvironmentParams none = env;
    none.density = 0;
    EXPECT_EQ(pdp(1.5 * link.los_delay(), link, none), 0);
}

TEST(LosPathloss, Examples)
{
    const LinkParams link = LinkParams::with_loss_db(100, 73e9, 3);
    EnvironmentParams env = small_env(0.05);
    env.density = 5.129e-4;
    EXPECT_NEAR(linear_to_db(los_pathloss(link, env)), -112.8, 0.05);
    EXPECT_NEAR(los_probability(link, env), std::exp(-0.7044), 1e-4);
    env.density = 0;
    const double fs = c / (4 * pi * 73e9 * 100);
    EXPECT_NEAR(los_pathloss(link, env), fs * fs, 1e-15 * fs * fs);
}

TEST(Pathloss, TotalAndZeroDensity)
{
    const LinkParams link = LinkParams::with_loss_db(100, 73e9, 3);
    const EnvironmentParams env = medium_env(0.2);
    const DelayGrid grid = DelayGrid::for_link(link);
    const double los = los_pathloss(link, env), ref = ref_pathloss(link, env, grid);
    EXPECT_DOUBLE_EQ(total_pathloss(link, env, grid), los + ref);
    EXPECT_GT(ref, 0);
    EnvironmentParams none = env;
    none.density = 0;
    EXPECT_EQ(ref_pathloss(link, none, grid), 0);
    EXPECT_EQ(avg_num_paths(link, none, grid), 0);
    EXPECT_DOUBLE_EQ(total_pathloss(link, none, grid), los_pathloss(link, none));

    // ref_pathloss is the integral of the profile.
    const QuadratureSpec fine{1e-300, 1e-10, 40};
    const double direct = integrate_or_throw([&](double t) { return pdp(t, link, env); }, grid.tau0 * (1 + 1e-9),
                                             grid.tau_max, fine);
    EXPECT_NEAR(ref, direct, 1e-7 * ref);
    const double count = integrate_or_throw([&](double t) { return path_density_closed(t, link, env); },
                                            grid.tau0 * (1 + 1e-9), grid.tau_max, fine);
    EXPECT_NEAR(avg_num_paths(link, env, grid), count, 1e-7 * count);
}

TEST(Pathloss, MonotoneInDelayHorizon)
{
    const LinkParams link = LinkParams::with_loss_db(100, 73e9, 3);
    const EnvironmentParams env = small_env(0.2);
    double prev_ref = 0, prev_n = 0;
    for (double ratio : {1.5, 2.0, 3.0, 6.0})
    {
        const DelayGrid grid = DelayGrid::for_link(link, ratio);
        const double ref = ref_pathloss(link, env, grid), n = avg_num_paths(link, env, grid);
        EXPECT_GE(ref, prev_ref);
        EXPECT_GE(n, prev_n);
        prev_ref = ref;
        prev_n = n;
    }
}

TEST(CoveredRatio, RoundTrip)
{
    EXPECT_NEAR(lambda_from_phi(0.05, 10, 10), 5.129e-4, 1e-7);
    EXPECT_NEAR(lambda_from_phi(0.05, 10, 10), -std::log(0.95) / 100, 1e-18);
    EXPECT_EQ(lambda_from_phi(0, 10, 10), 0);
    EXPECT_THROW(lambda_from_phi(1, 10, 10), DomainError);
    for (double lambda : {1e-6, 3e-5, 2e-4, 1e-3})
    {
        EnvironmentParams env{lambda, {54, 56}, {49, 51}};
        EXPECT_NEAR(lambda_from_phi(covered_ratio(env), env.mean_length(), env.mean_width()), lambda, 1e-12 * lambda);
    }
}

TEST(SweptArea, MatchesTangencyGeometry)
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ud(10, 500), ua(1.01, 3), ut(1e-3, pi), ul(5, 150);
    for (int k = 0; k < 100; ++k)
    {
        const double D = ud(rng), tau = ua(rng) * D / c, theta = ut(rng), l = ul(rng);
        const double dtau = 1e-6 * tau;
        const auto f = reflection_point(D, c * tau, theta, ReflectionBranch::length_side);
        const auto f2 = reflection_point(D, c * (tau + dtau), theta, ReflectionBranch::length_side);
        const double geom = oracle::swept_quadrilateral(f, f2, l, theta);
        const double formula = oracle::swept_area_formula(D, tau, dtau, l, theta);
        EXPECT_NEAR(geom, formula, 1e-3 * formula);
    }
}

TEST(ReflectorDensity, LimitOfSweptProbability)
{
    const LinkParams link;
    const EnvironmentParams env = medium_env(0.2);
    for (double a : {1.05, 1.5, 2.5})
        for (double theta : {0.4, pi / 2, 2.3, pi})
        {
            const double tau = a * link.los_delay(), dtau = 1e-7 * tau;
            const double s = oracle::swept_area_formula(link.distance, tau, dtau, env.mean_length(), theta);
            const double limit = -std::expm1(-env.density * s) / (c * dtau);
            const double want = reflector_density(tau, theta, env.mean_length(), link, env);
            EXPECT_NEAR(limit, want, 1e-3 * want);
        }
}

TEST(DelayGrid, BinsAndValidation)
{
    const LinkParams link;
    const DelayGrid g = DelayGrid::for_link(link, 3, 40);
    EXPECT_DOUBLE_EQ(g.tau0, link.los_delay());
    EXPECT_DOUBLE_EQ(g.tau_max, 3 * link.los_delay());
    EXPECT_EQ(g.bin_of(g.tau0), 0);
    EXPECT_EQ(g.bin_of(g.center(17)), 17);
    EXPECT_EQ(g.bin_of(g.tau_max * 1.01), -1);
    EXPECT_EQ(g.bin_of(g.tau0 * 0.99), -1);
    EXPECT_THROW(DelayGrid::for_link(link, 1.0, 40), DomainError);
    EXPECT_THROW(DelayGrid::for_link(link, 3, 0), DomainError);
}

TEST(Params, Validation)
{
    EXPECT_THROW(LinkParams::with_loss_db(-1, 73e9, 3).validate(), DomainError);
    EXPECT_THROW(LinkParams::with_loss_db(100, 73e9, -1).validate(), DomainError);
    EXPECT_NEAR(LinkParams::with_loss_db(100, 73e9, 3).reflection_loss, std::pow(10, 0.3), 1e-15);
    EXPECT_THROW((EnvironmentParams{-1, {1, 2}, {1, 2}}).validate(), DomainError);
    EXPECT_THROW((EnvironmentParams{1e-4, {2, 1}, {1, 2}}).validate(), DomainError);
}

TEST(DelayHorizon, DoublingChangesResultsByUnderOnePercent)
{
    const LinkParams link = LinkParams::with_loss_db(100, 73e9, 3);
    const DelayGrid base = DelayGrid::for_link(link, 3);
    const DelayGrid doubled = DelayGrid::for_link(link, 6);
    for (const auto &[l, w] : {std::pair{SizeDistribution{9, 11}, SizeDistribution{9, 11}},
                               std::pair{SizeDistribution{54, 56}, SizeDistribution{49, 51}},
                               std::pair{SizeDistribution{149, 151}, SizeDistribution{149, 151}}})
        for (double phi : {0.05, 0.2, 0.4})
        {
            const EnvironmentParams env = EnvironmentParams::from_covered_ratio(phi, l, w);
            const double r0 = ref_pathloss(link, env, base), r1 = ref_pathloss(link, env, doubled);
            const double n0 = avg_num_paths(link, env, base), n1 = avg_num_paths(link, env, doubled);
            EXPECT_LT((r1 - r0) / r0, 0.01) << "ref_pathloss, E[l]=" << l.mean() << " phi=" << phi;
            EXPECT_LT((n1 - n0) / n0, 0.01) << "avg_num_paths, E[l]=" << l.mean() << " phi=" << phi;
        }
}
