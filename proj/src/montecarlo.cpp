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

#include "mmw/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

#include <fmt/format.h>

namespace mmw::mc
{
namespace
{

// Runs body(i) for i in [0, n) on up to `workers` threads. Each index is
// processed exactly once; callers write results into per-index slots.
void for_each_realization(std::size_t n, unsigned workers, const std::function<void(std::size_t)> &body)
{
    if (workers == 0)
        workers = default_workers();
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
        {
            pool.emplace_back([&] {
                try
                {
                    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                        body(i);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next = n;
                }
            });
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

double sample_size(std::mt19937_64 &rng, const SizeDistribution &d)
{
    if (d.hi == d.lo)
        return d.lo;
    return std::uniform_real_distribution<double>(d.lo, d.hi)(rng);
}

MeanEstimate mean_and_stderr(const Eigen::VectorXd &samples)
{
    const auto n = static_cast<double>(samples.size());
    MeanEstimate est;
    est.mean = samples.mean();
    if (samples.size() > 1)
    {
        const double var = (samples.array() - est.mean).square().sum() / (n - 1);
        est.std_error = std::sqrt(var / n);
    }
    return est;
}

} // namespace

SceneConfig SceneConfig::centered(const LinkParams &link, const EnvironmentParams &env, double area_side)
{
    SceneConfig cfg;
    cfg.area_side = area_side;
    cfg.link = link;
    cfg.env = env;
    const double mid = 0.5 * area_side;
    cfg.tx = Point2d(mid - 0.5 * link.distance, mid);
    cfg.rx = Point2d(mid + 0.5 * link.distance, mid);
    cfg.validate();
    return cfg;
}

void SceneConfig::validate() const
{
    link.validate();
    env.validate();
    if (!(area_side > 0))
        throw DomainError("scene: area side must be positive");
    const auto inside = [this](const Point2d &p) {
        return p.allFinite() && p.x() >= 0 && p.x() <= area_side && p.y() >= 0 && p.y() <= area_side;
    };
    if (!inside(tx) || !inside(rx))
        throw DomainError("scene: Tx and Rx must lie inside the simulation region");
    const double sep = (rx - tx).norm();
    if (!(sep > 0))
        throw DomainError("scene: Tx and Rx coincide");
    if (std::abs(sep - link.distance) > 1e-9 * std::max(1.0, link.distance))
        throw DomainError(fmt::format("scene: |tx - rx| = {} differs from link distance {}", sep, link.distance));
}

std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t index)
{
    std::uint64_t z = master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

unsigned default_workers()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

Scene sample_scene(const SceneConfig &cfg, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Scene scene;
    // unit() lies in [0, 1), so the orientation lies in (0, pi].
    scene.theta = std::numbers::pi * (1.0 - unit(rng));
    const double mean_count = cfg.env.density * cfg.area_side * cfg.area_side;
    if (mean_count <= 0)
        return scene;

    const auto count = std::poisson_distribution<std::int64_t>(mean_count)(rng);
    scene.buildings.reserve(static_cast<std::size_t>(count));
    for (std::int64_t k = 0; k < count; ++k)
    {
        const double x = cfg.area_side * unit(rng);
        const double y = cfg.area_side * unit(rng);
        const double l = sample_size(rng, cfg.env.length);
        const double w = sample_size(rng, cfg.env.width);
        scene.buildings.emplace_back(Point2d(x, y), l, w, scene.theta);
    }
    return scene;
}

bool segment_blocked(const Segment2d &seg, const Scene &scene)
{
    const Point2d a = seg.a();
    const Point2d d = seg.direction();
    const double len2 = d.squaredNorm();
    for (const auto &b : scene.buildings)
    {
        // Reject buildings whose circumcircle misses the segment.
        const double t = std::clamp((b.center() - a).dot(d) / len2, 0.0, 1.0);
        const double r = b.circumradius();
        if ((a + t * d - b.center()).squaredNorm() >= r * r)
            continue;
        if (segment_intersects_rect(seg, b))
            return true;
    }
    return false;
}

std::vector<PathRecord> enumerate_paths(const Scene &scene, const SceneConfig &cfg)
{
    std::vector<PathRecord> paths;
    for (std::size_t bi = 0; bi < scene.buildings.size(); ++bi)
    {
        const auto walls = scene.buildings[bi].walls();
        for (int wi = 0; wi < 4; ++wi)
        {
            const auto hit = specular_reflection(cfg.tx, cfg.rx, walls[static_cast<std::size_t>(wi)]);
            if (!hit)
                continue;
            if (segment_blocked(Segment2d(cfg.tx, hit->point), scene) ||
                segment_blocked(Segment2d(hit->point, cfg.rx), scene))
                continue;
            PathRecord rec;
            rec.reflection_point = hit->point;
            rec.building_index = bi;
            rec.wall_index = wi;
            rec.path_length = hit->length;
            rec.delay = hit->length / speed_of_light;
            rec.pathloss = reflected_path_gain(rec.delay, cfg.link);
            paths.push_back(rec);
        }
    }
    return paths;
}

bool los_blocked(const Scene &scene, const SceneConfig &cfg)
{
    return segment_blocked(Segment2d(cfg.tx, cfg.rx), scene);
}

PdpEstimate estimate_pdp(const SceneConfig &cfg, const DelayGrid &grid, std::size_t n_realizations,
                         std::uint64_t master_seed, unsigned workers)
{
    cfg.validate();
    grid.validate();
    if (n_realizations < 1)
        throw DomainError("estimate_pdp: need at least one realization");

    // Column i holds the per-bin gain sums of realization i.
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(grid.n_bins, static_cast<Eigen::Index>(n_realizations));
    for_each_realization(n_realizations, workers, [&](std::size_t i) {
        const Scene scene = sample_scene(cfg, realization_seed(master_seed, i));
        for (const auto &p : enumerate_paths(scene, cfg))
        {
            const int bin = grid.bin_of(p.delay);
            if (bin >= 0)
                sums(bin, static_cast<Eigen::Index>(i)) += p.pathloss;
        }
    });

    const auto n = static_cast<double>(n_realizations);
    const double width = grid.bin_width();
    PdpEstimate est;
    est.grid = grid;
    est.n_realizations = n_realizations;
    const Eigen::VectorXd mean = sums.rowwise().sum() / n;
    est.bin_values = mean / width;
    est.bin_stderr = Eigen::VectorXd::Zero(grid.n_bins);
    if (n_realizations > 1)
    {
        const Eigen::VectorXd var = (sums.colwise() - mean).array().square().rowwise().sum() / (n - 1);
        est.bin_stderr = (var / n).cwiseSqrt() / width;
    }
    return est;
}

MeanEstimate estimate_avg_num_paths(const SceneConfig &cfg, std::size_t n_realizations, std::uint64_t master_seed,
                                    std::optional<double> tau_max, unsigned workers)
{
    cfg.validate();
    if (n_realizations < 1)
        throw DomainError("estimate_avg_num_paths: need at least one realization");
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_realizations));
    for_each_realization(n_realizations, workers, [&](std::size_t i) {
        const Scene scene = sample_scene(cfg, realization_seed(master_seed, i));
        const auto paths = enumerate_paths(scene, cfg);
        counts(static_cast<Eigen::Index>(i)) = static_cast<double>(std::count_if(
            paths.begin(), paths.end(), [&](const PathRecord &p) { return !tau_max || p.delay <= *tau_max; }));
    });
    return mean_and_stderr(counts);
}

MeanEstimate estimate_los_probability(const SceneConfig &cfg, std::size_t n_realizations, std::uint64_t master_seed,
                                      unsigned workers)
{
    cfg.validate();
    if (n_realizations < 1)
        throw DomainError("estimate_los_probability: need at least one realization");
    Eigen::VectorXd clear = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_realizations));
    for_each_realization(n_realizations, workers, [&](std::size_t i) {
        const Scene scene = sample_scene(cfg, realization_seed(master_seed, i));
        clear(static_cast<Eigen::Index>(i)) = los_blocked(scene, cfg) ? 0.0 : 1.0;
    });
    return mean_and_stderr(clear);
}

} // namespace mmw::mc
