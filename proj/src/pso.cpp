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

#include "risim/pso.hpp"
#include "risim/error.hpp"
#include "risim/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace risim
{
    namespace
    {
        constexpr double flip_velocity_limit = 4.0;

        std::array<double, 3> lower(const SearchBounds &b) { return {b.r_min, b.theta_min, b.phi_min}; }
        std::array<double, 3> upper(const SearchBounds &b) { return {b.r_max, b.theta_max, b.phi_max}; }

        SearchParams to_params(const std::array<double, 3> &x, bool flip)
        {
            return {{x[0], x[1], x[2]}, flip};
        }

        // Strictly better candidates replace the incumbent; ties keep the earlier particle
        void refresh_global_best(SwarmState &s)
        {
            for (std::size_t i = 0; i < s.particles.size(); ++i)
                if (s.particles[i].best_fitness > s.particles[s.global_best].best_fitness)
                    s.global_best = i;
        }
    }

    bool SearchBounds::contains(const SearchParams &p) const
    {
        const auto &c = p.rx_coord;
        return c.r >= r_min && c.r <= r_max && c.theta >= theta_min && c.theta <= theta_max && c.phi >= phi_min && c.phi <= phi_max;
    }

    void SwarmConfig::validate() const
    {
        if (swarm_size < 1)
            throw ValidationError("swarm_size must be >= 1");
        if (!(inertia >= 0.0 && inertia <= 1.0))
            throw ValidationError("inertia must lie in [0, 1]");
        if (!(cognitive >= 0.0) || !(social >= 0.0))
            throw ValidationError("cognitive and social weights must be >= 0");
        const auto &b = bounds;
        if (!(b.r_min > 0.0 && b.r_min <= b.r_max))
            throw ValidationError("search bounds need 0 < r_min <= r_max");
        if (!(b.theta_min >= 0.0 && b.theta_min <= b.theta_max && b.theta_max <= std::numbers::pi))
            throw ValidationError("search bounds need 0 <= theta_min <= theta_max <= 180 deg");
        if (!(b.phi_min <= b.phi_max) || !std::isfinite(b.phi_min) || !std::isfinite(b.phi_max))
            throw ValidationError("search bounds need phi_min <= phi_max");
    }

    SearchParams Particle::params() const { return to_params(position, flip); }
    SearchParams Particle::best_params() const { return to_params(best_position, best_flip); }

    FocusTarget focus_target(const Scenario &scn, const SearchParams &p)
    {
        FocusTarget t;
        t.tx_position = scn.tx_array.pose.origin;
        t.rx_coord = p.rx_coord;
        t.flip = p.flip;
        t.frequency = scn.focus_frequency();
        return t;
    }

    namespace
    {
        std::vector<double> fitness_grid(const Scenario &scn, std::size_t points)
        {
            if (points == 0)
                return scn.band.frequencies();
            BandGrid g = scn.band;
            g.points = points;
            return g.frequencies();
        }
    }

    FitnessEvaluator::FitnessEvaluator(const Scenario &scn, std::size_t points)
        : scn_(&scn), elements_(scn.ris), table_((scn.validate(), scn), fitness_grid(scn, points))
    {
        for (double f : table_.frequencies())
        {
            ChannelMatrix h = scatter_channel(scn, f);
            if (scn.propagation.direct_enabled)
                h.entries += direct_channel(scn, f).entries;
            base_.push_back(std::move(h));
        }
    }

    RisConfig FitnessEvaluator::config_for(const SearchParams &p) const
    {
        return phase_profile_for_focus(scn_->ris, elements_, focus_target(*scn_, p));
    }

    double FitnessEvaluator::operator()(const SearchParams &p) const
    {
        return table_.band_gain_with(config_for(p), base_);
    }

    double fitness(const Scenario &scn, const SearchParams &p)
    {
        return band_gain(synthesize(scn, phase_profile_for_focus(scn.ris, focus_target(scn, p))));
    }

    SwarmState init_swarm(const Objective &objective, const SwarmConfig &cfg, std::mt19937_64 &rng)
    {
        cfg.validate();
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const auto lo = lower(cfg.bounds), hi = upper(cfg.bounds);

        SwarmState s;
        s.particles.resize(cfg.swarm_size);
        for (auto &p : s.particles)
        {
            for (std::size_t d = 0; d < 3; ++d)
                p.position[d] = lo[d] + (hi[d] - lo[d]) * unit(rng);
            p.flip = unit(rng) < 0.5;
        }
        for (auto &p : s.particles)
        {
            p.best_fitness = objective(p.params());
            p.best_position = p.position;
            p.best_flip = p.flip;
            ++s.evaluations;
        }
        refresh_global_best(s);
        return s;
    }

    SwarmState step(SwarmState s, const Objective &objective, const SwarmConfig &cfg, std::mt19937_64 &rng)
    {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const auto lo = lower(cfg.bounds), hi = upper(cfg.bounds);
        const Particle leader = s.best();

        for (auto &p : s.particles)
        {
            for (std::size_t d = 0; d < 3; ++d)
            {
                const double u1 = unit(rng), u2 = unit(rng);
                const double v_max = 0.5 * (hi[d] - lo[d]);
                double v = cfg.inertia * p.velocity[d] + cfg.cognitive * u1 * (p.best_position[d] - p.position[d]) +
                           cfg.social * u2 * (leader.best_position[d] - p.position[d]);
                v = std::clamp(v, -v_max, v_max);
                double x = p.position[d] + v;
                if (x < lo[d] || x > hi[d])
                {
                    x = std::clamp(x, lo[d], hi[d]);
                    v = 0.0;
                }
                p.position[d] = x;
                p.velocity[d] = v;
            }

            // Binary dimension: move towards the sign of the velocity with probability |tanh(v)|
            const double u1 = unit(rng), u2 = unit(rng), u3 = unit(rng);
            const double x = p.flip ? 1.0 : 0.0;
            double vf = cfg.inertia * p.flip_velocity + cfg.cognitive * u1 * ((p.best_flip ? 1.0 : 0.0) - x) +
                        cfg.social * u2 * ((leader.best_flip ? 1.0 : 0.0) - x);
            vf = std::clamp(vf, -flip_velocity_limit, flip_velocity_limit);
            if (u3 < std::abs(std::tanh(vf)))
                p.flip = vf > 0.0;
            p.flip_velocity = vf;
        }

        for (auto &p : s.particles)
        {
            const double f = objective(p.params());
            ++s.evaluations;
            if (f > p.best_fitness)
            {
                p.best_fitness = f;
                p.best_position = p.position;
                p.best_flip = p.flip;
            }
        }
        refresh_global_best(s);
        return s;
    }

    OptimizationResult optimize(const Objective &objective, const SwarmConfig &cfg)
    {
        std::mt19937_64 rng(cfg.seed);
        SwarmState s = init_swarm(objective, cfg, rng);

        OptimizationResult r;
        r.fitness_trace.push_back(s.best_fitness());
        std::size_t stall = 0;
        for (std::size_t it = 0; it < cfg.iterations; ++it)
        {
            const double before = s.best_fitness();
            s = step(std::move(s), objective, cfg, rng);
            r.fitness_trace.push_back(s.best_fitness());
            stall = s.best_fitness() > before ? 0 : stall + 1;
            if (cfg.stall_limit > 0 && stall >= cfg.stall_limit)
                break;
        }
        r.best_params = s.best().best_params();
        r.best_fitness = s.best_fitness();
        r.evaluations = s.evaluations;
        return r;
    }

    OptimizationResult optimize(const Scenario &scn, const SwarmConfig &cfg)
    {
        const FitnessEvaluator eval(scn, cfg.fitness_points);
        OptimizationResult r = optimize(std::cref(eval), cfg);
        r.best_config = eval.config_for(r.best_params);
        return r;
    }
}
