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

// risim command-line front end: pattern, simulate, optimize, metrics and ingest

#include "risim/error.hpp"
#include "risim/io.hpp"
#include "risim/kernels.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace risim;

namespace
{
    struct Globals
    {
        std::optional<std::uint64_t> seed;
        std::string out_dir = ".";
        std::string scenario;
        bool quiet = false;
    };

    fs::path out_path(const Globals &g, const std::string &name)
    {
        fs::create_directories(g.out_dir);
        return fs::path(g.out_dir) / name;
    }

    void write_out(const Globals &g, const std::string &name, const std::string &content)
    {
        const auto p = out_path(g, name);
        write_text_atomic(p, content);
        if (!g.quiet)
            std::cout << "wrote " << p.string() << '\n';
    }

    ScenarioFile require_scenario(const Globals &g)
    {
        if (g.scenario.empty())
            throw Error(ErrorCode::usage, "this command needs --scenario");
        std::ostringstream log;
        ScenarioFile f = load_scenario_file(g.scenario, &log);
        if (!g.quiet)
            std::cerr << log.str();
        return f;
    }

    std::vector<double> power_grid(double lo, double hi, double step)
    {
        if (!(step > 0.0) || !(hi >= lo))
            throw ValidationError("capacity power grid needs step > 0 and hi >= lo");
        std::vector<double> p;
        for (std::size_t i = 0;; ++i)
        {
            const double v = lo + step * static_cast<double>(i);
            if (v > hi + 1e-9 * step)
                break;
            p.push_back(v);
        }
        return p;
    }

    struct MetricOptions
    {
        double power_lo = -10.0, power_hi = 40.0, power_step = 2.0;
        std::optional<double> tx_power_dbm;
    };

    void add_power_grid(CLI::App *cmd, MetricOptions &m)
    {
        cmd->add_option("--power-min-dbm", m.power_lo, "Lowest transmit power of the capacity curve")->capture_default_str();
        cmd->add_option("--power-max-dbm", m.power_hi, "Highest transmit power of the capacity curve")->capture_default_str();
        cmd->add_option("--power-step-db", m.power_step, "Step of the capacity curve")->capture_default_str();
        cmd->add_option("--tx-power-dbm", m.tx_power_dbm, "Transmit power for the single capacity figure");
    }

    void emit_metrics(const Globals &g, const FrequencySweep &sweep, const std::string &label, const Scenario &scn,
                      const MetricOptions &m)
    {
        const auto r = make_report(sweep, label, power_grid(m.power_lo, m.power_hi, m.power_step), scn.noise.psd_dbm_hz,
                                   scn.noise.noise_figure_db, scn.band.bandwidth(), m.tx_power_dbm);
        write_out(g, "report_" + label + ".txt", format_report(r));
        write_out(g, "capacity_" + label + ".csv", format_capacity_csv(r.capacity));
        write_out(g, "frequency_" + label + ".csv", format_frequency_csv(r));
        std::cout << label << ": band_gain_db = " << format_double(lin2db(r.band_gain))
                  << ", mean_effective_rank = " << format_double(r.mean_effective_rank) << '\n';
    }

    // A scenario without direct path and scatter has no reference channel to report
    bool emit_reference(const Globals &g, const FrequencySweep &reference, const Scenario &scn, const MetricOptions &m)
    {
        if (band_gain(reference) > 0.0)
        {
            emit_metrics(g, reference, "reference", scn, m);
            return true;
        }
        std::cout << "reference: no channel without the RIS, metrics skipped\n";
        return false;
    }

    // --- pattern ---------------------------------------------------------

    struct PatternOptions
    {
        double incidence = 120.0;
        std::vector<double> steer{90.0};
        double freq = 3.5e9;
        std::size_t tile = 16;
        double step = 0.5;
        double pitch = 0.03;
        int polarization = 0;
    };

    int run_pattern(const Globals &g, const PatternOptions &o)
    {
        if (!(o.step > 0.0))
            throw ValidationError("--step must be > 0");
        RisPanel panel;
        panel.rows = panel.cols = o.tile;
        panel.pitch = o.pitch;
        panel.validate();

        std::vector<double> angles;
        for (std::size_t i = 0;; ++i)
        {
            const double a = o.step * static_cast<double>(i);
            if (a > 180.0 + 1e-9)
                break;
            angles.push_back(std::min(a, 180.0));
        }

        std::string csv = "steer_deg,angle_deg,gain_db\n";
        for (double s : o.steer)
        {
            const auto cfg = steering_config(panel, o.incidence, s, o.freq);
            const auto p = beam_pattern(panel, cfg, o.incidence, angles, o.freq, o.polarization);
            std::size_t peak = 0;
            for (std::size_t i = 0; i < p.size(); ++i)
            {
                csv += format_double(s) + ',' + format_double(angles[i]) + ',' + format_double(p[i]) + '\n';
                if (p[i] > p[peak])
                    peak = i;
            }
            std::cout << "steer_deg = " << format_double(s) << ", peak_deg = " << format_double(angles[peak]) << '\n';
        }
        write_out(g, "pattern.csv", csv);
        return 0;
    }

    // --- simulate --------------------------------------------------------

    int run_simulate(const Globals &g, const std::string &config_path, const MetricOptions &m)
    {
        ScenarioFile file = require_scenario(g);
        Scenario &scn = file.scenario;
        if (g.seed)
            scn.propagation.scatter.seed = *g.seed;

        RisConfig cfg;
        if (!config_path.empty())
            cfg = parse_config(read_text_file(config_path));
        else
        {
            // Focus on the actual receiver location
            SearchParams p;
            p.rx_coord = cartesian_to_spherical(scn.rx_array.pose.origin, scn.ris.pose);
            cfg = phase_profile_for_focus(scn.ris, focus_target(scn, p));
        }
        if (!cfg.matches(scn.ris))
            throw ValidationError("configuration size does not match the RIS panel");

        if (scn.band.points > 1 && !g.quiet)
        {
            const double spacing = scn.band.bandwidth() / static_cast<double>(scn.band.points - 1);
            if (spacing >= phase_continuous_spacing(scn))
                std::cerr << "note: grid spacing " << format_double(spacing) << " Hz exceeds the phase-continuous spacing "
                          << format_double(phase_continuous_spacing(scn)) << " Hz; entry phases wrap between points\n";
        }
        const auto reference = synthesize(scn, std::nullopt);
        const auto with_ris = synthesize(scn, cfg);
        write_out(g, "sweep_reference.csv", format_sweep_csv(reference));
        write_out(g, "sweep_ris.csv", format_sweep_csv(with_ris));
        write_out(g, "config_ris.txt", format_config(cfg));
        emit_reference(g, reference, scn, m);
        emit_metrics(g, with_ris, "ris", scn, m);
        return 0;
    }

    // --- optimize --------------------------------------------------------

    struct OptimizeOptions
    {
        std::optional<std::size_t> swarm_size, iterations, fitness_points;
    };

    int run_optimize(const Globals &g, const OptimizeOptions &o, const MetricOptions &m)
    {
        ScenarioFile file = require_scenario(g);
        const Scenario &scn = file.scenario;
        SwarmConfig cfg = file.swarm;
        if (g.seed)
            cfg.seed = *g.seed;
        if (o.swarm_size)
            cfg.swarm_size = *o.swarm_size;
        if (o.iterations)
            cfg.iterations = *o.iterations;
        if (o.fitness_points)
            cfg.fitness_points = *o.fitness_points;

        const auto result = optimize(scn, cfg);
        write_out(g, "trace.csv", format_trace_csv(result, cfg.swarm_size));
        write_out(g, "result.txt", format_result(result));
        write_out(g, "config_optimized.txt", format_config(result.best_config));

        // Final figures always on the full band grid
        const auto reference = synthesize(scn, std::nullopt);
        const auto optimized = synthesize(scn, result.best_config);
        write_out(g, "sweep_reference.csv", format_sweep_csv(reference));
        write_out(g, "sweep_optimized.csv", format_sweep_csv(optimized));
        emit_metrics(g, optimized, "optimized", scn, m);
        if (emit_reference(g, reference, scn, m))
            std::cout << "gain_improvement_db = " << format_double(lin2db(band_gain(optimized) / band_gain(reference))) << '\n';
        return 0;
    }

    // --- metrics ---------------------------------------------------------

    struct MetricsCmd
    {
        std::string sweep;
        double noise_psd = -174.0;
        double noise_figure = 5.0;
        std::optional<double> eirp_per_5mhz;
        double antenna_gain = 0.0;
        std::optional<double> bandwidth_mhz;
        MetricOptions m;
    };

    int run_metrics(const Globals &g, const MetricsCmd &c)
    {
        std::optional<FrequencySweep> sweep;
        if (!c.sweep.empty())
            sweep = ingest_sweep(c.sweep);

        double bandwidth_hz = 0.0;
        if (c.bandwidth_mhz)
            bandwidth_hz = *c.bandwidth_mhz * 1e6;
        else if (sweep && sweep->size() >= 2)
            bandwidth_hz = sweep->frequencies.back() - sweep->frequencies.front();
        if (!(bandwidth_hz > 0.0) && (sweep || c.eirp_per_5mhz))
            throw Error(ErrorCode::usage, "a bandwidth is needed: pass --bandwidth-mhz");

        std::optional<double> tx_power = c.m.tx_power_dbm;
        if (c.eirp_per_5mhz)
        {
            const double total = eirp_total_dbm(*c.eirp_per_5mhz, bandwidth_hz);
            const double tx = eirp_to_tx_power(*c.eirp_per_5mhz, bandwidth_hz, c.antenna_gain);
            std::cout << "eirp_total_dbm = " << format_double(total) << '\n';
            if (tx_power && *tx_power != tx)
                throw Error(ErrorCode::usage, "--tx-power-dbm conflicts with the EIRP-derived transmit power");
            tx_power = tx;
        }
        if (tx_power)
            std::cout << "tx_power_dbm = " << format_double(*tx_power) << '\n';

        if (sweep)
        {
            const auto r = make_report(*sweep, "measured", power_grid(c.m.power_lo, c.m.power_hi, c.m.power_step), c.noise_psd,
                                       c.noise_figure, bandwidth_hz, tx_power);
            write_out(g, "report_measured.txt", format_report(r));
            write_out(g, "capacity_measured.csv", format_capacity_csv(r.capacity));
            write_out(g, "frequency_measured.csv", format_frequency_csv(r));
            std::cout << format_report(r);
        }
        else if (!c.eirp_per_5mhz && !tx_power)
            throw Error(ErrorCode::usage, "metrics needs --sweep or --eirp-per-5mhz");
        return 0;
    }

    // --- ingest ----------------------------------------------------------

    int run_ingest(const Globals &g, const std::string &sweep, const std::string &reference, const std::string &name)
    {
        std::optional<fs::path> ref;
        if (!reference.empty())
            ref = reference;
        const auto s = ingest_sweep(sweep, ref);
        write_out(g, name, format_sweep_csv(s));
        std::cout << "frequencies = " << s.size() << ", rx = " << s.matrices.front().rx_count()
                  << ", tx = " << s.matrices.front().tx_count() << '\n';
        return 0;
    }

    int fail(ErrorCode code, const std::string &message)
    {
        // First line is for machines, the rest for people
        std::cerr << "risim-error code=" << to_string(code) << " exit=" << static_cast<int>(code) << '\n'
                  << message << '\n';
        return static_cast<int>(code);
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"risim: RIS-assisted MIMO link simulation and analysis"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Seed for the stochastic parts (scatter or beam search)");
    app.add_option("--out-dir", g.out_dir, "Directory for output files")->capture_default_str();
    app.add_option("--scenario", g.scenario, "Scenario file");
    app.add_flag("--quiet", g.quiet, "Suppress progress messages");
    app.add_option_function<std::string>(
        "--simd", [](const std::string &s)
        { kernels::set_simd_level(s == "avx2" ? kernels::SimdLevel::avx2 : kernels::SimdLevel::scalar); },
        "Kernel variant (scalar or avx2)")
        ->check(CLI::IsMember({"scalar", "avx2"}));

    PatternOptions po;
    auto *pattern = app.add_subcommand("pattern", "Far-field pattern of a steered tile (horizontal cut)");
    pattern->add_option("--incidence", po.incidence, "Incidence azimuth [deg], 90 = broadside")->capture_default_str();
    pattern->add_option("--steer", po.steer, "Steering azimuth(s) [deg]")->capture_default_str();
    pattern->add_option("--freq", po.freq, "Frequency [Hz]")->capture_default_str();
    pattern->add_option("--tile", po.tile, "Tile size (elements per side)")->capture_default_str()->check(CLI::PositiveNumber);
    pattern->add_option("--pitch", po.pitch, "Element spacing [m]")->capture_default_str();
    pattern->add_option("--step", po.step, "Angular step [deg]")->capture_default_str();
    pattern->add_option("--polarization", po.polarization, "Polarization 0 or 1")->capture_default_str()->check(CLI::Range(0, 1));

    std::string sim_config;
    MetricOptions sim_m;
    auto *simulate = app.add_subcommand("simulate", "Synthesize reference and RIS sweeps and their metrics");
    simulate->add_option("--config", sim_config, "RIS configuration file (default: focus on the receiver)");
    add_power_grid(simulate, sim_m);

    OptimizeOptions oo;
    MetricOptions opt_m;
    auto *opt = app.add_subcommand("optimize", "Beam search over the receiver location and flip");
    opt->add_option("--swarm-size", oo.swarm_size, "Override the scenario's swarm size");
    opt->add_option("--iterations", oo.iterations, "Override the scenario's iteration count");
    opt->add_option("--fitness-points", oo.fitness_points, "Frequency points used by the fitness (0 = full grid)");
    add_power_grid(opt, opt_m);

    MetricsCmd mc;
    auto *metrics = app.add_subcommand("metrics", "Metrics of a sweep file and EIRP conversions");
    metrics->add_option("--sweep", mc.sweep, "Sweep CSV")->check(CLI::ExistingFile);
    metrics->add_option("--noise-psd", mc.noise_psd, "Noise PSD [dBm/Hz]")->capture_default_str();
    metrics->add_option("--noise-figure", mc.noise_figure, "Noise figure [dB]")->capture_default_str();
    metrics->add_option("--eirp-per-5mhz", mc.eirp_per_5mhz, "EIRP limit [dBm / 5 MHz]");
    metrics->add_option("--antenna-gain-dbi", mc.antenna_gain, "Transmit antenna gain [dBi]")->capture_default_str();
    metrics->add_option("--bandwidth-mhz", mc.bandwidth_mhz, "Bandwidth [MHz] (default: sweep span)");
    add_power_grid(metrics, mc.m);

    std::string ing_sweep, ing_ref, ing_name = "sweep_ingested.csv";
    auto *ingest = app.add_subcommand("ingest", "Read a measured sweep, de-embed it and write it in canonical order");
    ingest->add_option("--sweep", ing_sweep, "Raw sweep CSV")->required()->check(CLI::ExistingFile);
    ingest->add_option("--reference", ing_ref, "Reference trace CSV (freq_hz,re,im)")->check(CLI::ExistingFile);
    ingest->add_option("--output", ing_name, "Output file name inside --out-dir")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        return fail(ErrorCode::usage, e.what());
    }
    catch (const std::exception &e)
    {
        // e.g. --simd avx2 on a CPU without it
        return fail(ErrorCode::usage, e.what());
    }

    try
    {
        if (*pattern)
            return run_pattern(g, po);
        if (*simulate)
            return run_simulate(g, sim_config, sim_m);
        if (*opt)
            return run_optimize(g, oo, opt_m);
        if (*metrics)
            return run_metrics(g, mc);
        if (*ingest)
            return run_ingest(g, ing_sweep, ing_ref, ing_name);
    }
    catch (const Error &e)
    {
        return fail(e.code(), e.what());
    }
    catch (const std::exception &e)
    {
        return fail(ErrorCode::validation, e.what());
    }
    return 0;
}
