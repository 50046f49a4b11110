// SPDX-License-Identifier: Apache-2.0
//
// risim: simulation and analysis toolkit for RIS-assisted MIMO links
// Copyright (C) 2026 The risim authors
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

#ifndef risim_pso_H
#define risim_pso_H

#include "risim/channel.hpp"
#include "risim/ris.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace risim
{
    // Beam-search variables: receiver position in the RIS frame and the global bit flip
    struct SearchParams
    {
        SphericalCoord rx_coord{};
        bool flip = false;
    };

    struct SearchBounds
    {
        double r_min = 5.0, r_max = 300.0;                     // [m]
        double theta_min = deg2rad(60.0), theta_max = deg2rad(120.0); // [rad]
        double phi_min = deg2rad(0.0), phi_max = deg2rad(180.0);      // [rad]

        bool contains(const SearchParams &p) const;
    };

    struct SwarmConfig
    {
        std::size_t swarm_size = 32;
        std::size_t iterations = 100;
        double inertia = 0.72;
        double cognitive = 1.49;
        double social = 1.49;
        SearchBounds bounds{};
        std::uint64_t seed = 1;
        std::size_t stall_limit = 30;  // Stop after this many iterations without improvement, 0 = never
        std::size_t fitness_points = 0; // Frequency points used by the fitness, 0 = full band grid

        void validate() const;
    };

    // Objective maximized by the swarm
    using Objective = std::function<double(const SearchParams &)>;

    struct Particle
    {
        std::array<double, 3> position{}; // r [m], theta [rad], phi [rad]
        std::array<double, 3> velocity{};
        bool flip = false;
        double flip_velocity = 0.0;

        std::array<double, 3> best_position{};
        bool best_flip = false;
        double best_fitness = 0.0;

        SearchParams params() const;
        SearchParams best_params() const;
    };

    struct SwarmState
    {
        std::vector<Particle> particles;
        std::size_t global_best = 0; // Index of the particle holding the global best
        std::size_t evaluations = 0;

        const Particle &best() const { return particles.at(global_best); }
        double best_fitness() const { return best().best_fitness; }
    };

    struct OptimizationResult
    {
        SearchParams best_params{};
        RisConfig best_config{};
        std::vector<double> fitness_trace; // Global best after init and after every iteration (linear gain)
        std::size_t evaluations = 0;
        double best_fitness = 0.0;
    };

    // Band gain of the synthesized channel for a search point, with the scenario-dependent parts
    // (direct path, scatter, element coefficients) precomputed once
    class FitnessEvaluator
    {
    public:
        // points = 0 uses the scenario's full band grid, otherwise a uniform sub-grid of the band
        explicit FitnessEvaluator(const Scenario &scn, std::size_t points = 0);

        double operator()(const SearchParams &p) const;
        RisConfig config_for(const SearchParams &p) const;

        const std::vector<double> &frequencies() const { return table_.frequencies(); }

    private:
        const Scenario *scn_;
        PanelElements elements_;
        CascadeTable table_;
        std::vector<ChannelMatrix> base_;
    };

    // Fitness of a single point, computed through the full synthesis path
    double fitness(const Scenario &scn, const SearchParams &p);

    // Focus target realized by the search variables of a scenario
    FocusTarget focus_target(const Scenario &scn, const SearchParams &p);

    // Uniform random positions within the bounds, Bernoulli(0.5) flip, zero velocity
    SwarmState init_swarm(const Objective &objective, const SwarmConfig &cfg, std::mt19937_64 &rng);

    // One velocity/position update of every particle followed by evaluation and best refresh
    SwarmState step(SwarmState state, const Objective &objective, const SwarmConfig &cfg, std::mt19937_64 &rng);

    // Full search on a generic objective; best_config is left empty
    OptimizationResult optimize(const Objective &objective, const SwarmConfig &cfg);

    // Full search on the scenario's band gain
    OptimizationResult optimize(const Scenario &scn, const SwarmConfig &cfg);
}

#endif
