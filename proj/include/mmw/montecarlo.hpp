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

#ifndef MMW_MONTECARLO_HPP
#define MMW_MONTECARLO_HPP

// Ray-tracing simulator over Poisson scenes of identically oriented
// rectangular buildings. Each realization samples a scene, enumerates every
// wall's first-order specular reflection, drops paths crossing any building
// interior, and contributes the surviving path gains to delay bins.
//
// Realization i is driven by an mt19937_64 seeded with
// realization_seed(master_seed, i), so results do not depend on how
// realizations are spread over worker threads.

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "mmw/analytic.hpp"
#include "mmw/geometry.hpp"

namespace mmw::mc
{

struct SceneConfig
{
    double area_side = 500; // square region [0, side]^2 holding building centers
    Point2d tx{200, 250};
    Point2d rx{300, 250};
    EnvironmentParams env;
    LinkParams link;

    // Tx and Rx placed symmetrically about the center of the region.
    static SceneConfig centered(const LinkParams &link, const EnvironmentParams &env, double area_side = 500);

    // Throws DomainError unless tx != rx, both lie in the region, and
    // |tx - rx| matches link.distance.
    void validate() const;
};

struct Scene
{
    std::vector<OrientedRectd> buildings;
    double theta = std::numbers::pi;
};

struct PathRecord
{
    Point2d reflection_point;
    std::size_t building_index = 0;
    int wall_index = 0;
    double path_length = 0;
    double delay = 0;
    double pathloss = 0;
};

struct PdpEstimate
{
    DelayGrid grid;
    Eigen::VectorXd bin_values; // linear gain per second
    Eigen::VectorXd bin_stderr;
    std::size_t n_realizations = 0;
};

struct MeanEstimate
{
    double mean = 0;
    double std_error = 0;
};

// SplitMix64 finalizer applied to master_seed + (index + 1) * golden gamma.
std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t index);

// Number of worker threads used when 0 is requested.
unsigned default_workers();

Scene sample_scene(const SceneConfig &cfg, std::uint64_t seed);

// First-order paths that survive blockage, in (building, wall) order.
std::vector<PathRecord> enumerate_paths(const Scene &scene, const SceneConfig &cfg);

// Whether a segment crosses the interior of any building.
bool segment_blocked(const Segment2d &seg, const Scene &scene);

bool los_blocked(const Scene &scene, const SceneConfig &cfg);

PdpEstimate estimate_pdp(const SceneConfig &cfg, const DelayGrid &grid, std::size_t n_realizations,
                         std::uint64_t master_seed, unsigned workers = 0);

// Mean number of surviving paths per realization, counting only delays up to
// tau_max when given.
MeanEstimate estimate_avg_num_paths(const SceneConfig &cfg, std::size_t n_realizations, std::uint64_t master_seed,
                                    std::optional<double> tau_max = std::nullopt, unsigned workers = 0);

// Fraction of realizations whose direct path is unblocked.
MeanEstimate estimate_los_probability(const SceneConfig &cfg, std::size_t n_realizations, std::uint64_t master_seed,
                                      unsigned workers = 0);

} // namespace mmw::mc

#endif
