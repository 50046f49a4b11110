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

#include "risim/io.hpp"
#include "risim/error.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace risim
{
    namespace
    {
        std::string trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return std::string(s.substr(b, e - b + 1));
        }

        std::vector<std::string> split(std::string_view s, char sep)
        {
            std::vector<std::string> out;
            std::size_t pos = 0;
            while (true)
            {
                const auto next = s.find(sep, pos);
                out.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
                if (next == std::string_view::npos)
                    break;
                pos = next + 1;
            }
            return out;
        }

        struct Entry
        {
            std::string value;
            std::size_t line = 0;
            bool used = false;
        };

        struct Document
        {
            std::map<std::string, std::map<std::string, Entry>> sections; // "" holds top-level keys
            std::map<std::string, std::size_t> section_lines;
        };

        // Collects every problem before failing
        class Diagnostics
        {
        public:
            void add(std::string msg) { errors_.push_back(std::move(msg)); }
            bool empty() const { return errors_.empty(); }

            [[noreturn]] void raise() const
            {
                std::string msg = "scenario has " + std::to_string(errors_.size()) + " error(s):";
                for (const auto &e : errors_)
                    msg += "\n  " + e;
                throw ValidationError(msg);
            }

        private:
            std::vector<std::string> errors_;
        };

        const std::map<std::string, std::set<std::string>> &schema()
        {
            static const std::map<std::string, std::set<std::string>> s{
                {"", {"schema_version"}},
                {"tx_array", {"origin_m", "yaw_deg", "tilt_deg", "roll_deg", "pattern", "peak_gain_dbi", "az_beamwidth_deg",
                              "el_beamwidth_deg", "backlobe_db", "element_offsets_m", "polarizations"}},
                {"rx_array", {"origin_m", "yaw_deg", "tilt_deg", "roll_deg", "pattern", "peak_gain_dbi", "az_beamwidth_deg",
                              "el_beamwidth_deg", "backlobe_db", "element_offsets_m", "polarizations"}},
                {"ris", {"origin_m", "yaw_deg", "tilt_deg", "roll_deg", "rows", "cols", "element_spacing_m", "element_exponent",
                         "loss_db", "reflection_pol0", "reflection_pol1", "band_lo_hz", "band_hi_hz", "strict_band", "design_freq_hz"}},
                {"propagation", {"direct_enabled", "blockage_db", "cluster_count", "cluster_power_db", "cluster_delay_ns",
                                 "cluster_delay_spread_ns", "rays_per_cluster", "scatter_seed"}},
                {"band", {"freq_lo_hz", "freq_hi_hz", "points"}},
                {"noise", {"noise_psd_dbm_hz", "noise_figure_db"}},
                {"pso", {"swarm_size", "iterations", "inertia", "cognitive", "social", "r_min_m", "r_max_m", "theta_min_deg",
                         "theta_max_deg", "phi_min_deg", "phi_max_deg", "seed", "stall_limit", "fitness_points"}},
            };
            return s;
        }

        const std::vector<std::string> section_order{"tx_array", "rx_array", "ris", "propagation", "band", "noise", "pso"};
        const std::set<std::string> required_sections{"tx_array", "rx_array", "ris", "band"};

        Document tokenize(std::string_view text, Diagnostics &diag)
        {
            Document doc;
            doc.sections[""];
            std::string current;
            std::size_t line_no = 0, pos = 0;
            while (pos <= text.size())
            {
                auto end = text.find('\n', pos);
                if (end == std::string_view::npos)
                    end = text.size();
                std::string line(text.substr(pos, end - pos));
                pos = end + 1;
                ++line_no;

                if (const auto hash = line.find('#'); hash != std::string::npos)
                    line.erase(hash);
                line = trim(line);
                if (line.empty())
                    continue;

                const std::string where = "line " + std::to_string(line_no) + ": ";
                if (line.front() == '[')
                {
                    if (line.back() != ']')
                    {
                        diag.add(where + "malformed section header '" + line + "'");
                        continue;
                    }
                    current = trim(std::string_view(line).substr(1, line.size() - 2));
                    if (!schema().contains(current) || current.empty())
                        diag.add(where + "unknown section [" + current + "]");
                    else if (doc.section_lines.contains(current))
                        diag.add(where + "duplicate section [" + current + "]");
                    doc.section_lines[current] = line_no;
                    doc.sections[current];
                    continue;
                }

                const auto eq = line.find('=');
                if (eq == std::string::npos)
                {
                    diag.add(where + "expected 'key = value'");
                    continue;
                }
                const std::string key = trim(std::string_view(line).substr(0, eq));
                const std::string value = trim(std::string_view(line).substr(eq + 1));
                const auto sec = schema().find(current);
                if (sec == schema().end())
                    continue; // Reported with the section header
                if (!sec->second.contains(key))
                {
                    diag.add(where + "unknown key '" + key + "' in " + (current.empty() ? std::string("top level") : "[" + current + "]"));
                    continue;
                }
                auto &slot = doc.sections[current];
                if (slot.contains(key))
                {
                    diag.add(where + "duplicate key '" + key + "'");
                    continue;
                }
                slot[key] = {value, line_no, false};
            }
            return doc;
        }

        // Typed access to one section; records errors and applied defaults
        class SectionReader
        {
        public:
            SectionReader(Document &doc, std::string name, Diagnostics &diag, std::ostream *log)
                : entries_(doc.sections[name]), name_(std::move(name)), diag_(diag), log_(log) {}

            bool has(const std::string &key) const { return entries_.contains(key); }

            // Raw value or the default (echoed), or an error when required
            std::optional<std::string> raw(const std::string &key, const std::optional<std::string> &def)
            {
                if (auto it = entries_.find(key); it != entries_.end())
                {
                    it->second.used = true;
                    return it->second.value;
                }
                if (def)
                {
                    if (log_)
                        *log_ << "default: [" << name_ << "] " << key << " = " << *def << '\n';
                    return def;
                }
                diag_.add(qualified(key) + ": missing required key");
                return std::nullopt;
            }

            double number(const std::string &key, std::optional<double> def, const std::function<bool(double)> &valid = {}, const char *rule = "")
            {
                const auto v = raw(key, def ? std::optional<std::string>(format_double(*def)) : std::nullopt);
                if (!v)
                    return def.value_or(0.0);
                double x = 0.0;
                try
                {
                    x = parse_double(*v);
                }
                catch (const std::exception &)
                {
                    diag_.add(where(key) + "expected a number, got '" + *v + "'");
                    return def.value_or(0.0);
                }
                if (valid && !valid(x))
                    diag_.add(where(key) + "value " + *v + " violates " + rule);
                return x;
            }

            std::size_t count(const std::string &key, std::optional<std::size_t> def, std::size_t min_value = 0)
            {
                const double x = number(key, def ? std::optional<double>(static_cast<double>(*def)) : std::nullopt);
                if (x < static_cast<double>(min_value) || x != std::floor(x) || x > 1e15)
                {
                    diag_.add(where(key) + "expected an integer >= " + std::to_string(min_value));
                    return def.value_or(min_value);
                }
                return static_cast<std::size_t>(x);
            }

            std::uint64_t seed(const std::string &key, std::uint64_t def)
            {
                const auto v = raw(key, std::to_string(def));
                std::uint64_t out = def;
                const auto *b = v->data();
                const auto [p, ec] = std::from_chars(b, b + v->size(), out);
                if (ec != std::errc() || p != b + v->size())
                    diag_.add(where(key) + "expected an unsigned integer seed");
                return out;
            }

            bool boolean(const std::string &key, bool def)
            {
                const auto v = raw(key, def ? "true" : "false");
                if (*v == "true")
                    return true;
                if (*v == "false")
                    return false;
                diag_.add(where(key) + "expected true or false");
                return def;
            }

            std::vector<double> numbers(const std::string &key, std::optional<std::string> def, char sep = ',')
            {
                const auto v = raw(key, def);
                std::vector<double> out;
                if (!v || trim(*v).empty())
                    return out;
                for (const auto &tok : split(*v, sep))
                {
                    try
                    {
                        out.push_back(parse_double(tok));
                    }
                    catch (const std::exception &)
                    {
                        diag_.add(where(key) + "expected a list of numbers, got '" + *v + "'");
                        return {};
                    }
                }
                return out;
            }

            Vec3 vec3(const std::string &key, std::optional<std::string> def)
            {
                const auto xs = numbers(key, def);
                if (xs.size() != 3)
                {
                    if (has(key) || def)
                        diag_.add(where(key) + "expected three comma-separated numbers");
                    return {};
                }
                return {xs[0], xs[1], xs[2]};
            }

            std::vector<Vec3> vec3_list(const std::string &key, std::optional<std::string> def)
            {
                const auto v = raw(key, def);
                std::vector<Vec3> out;
                if (!v)
                    return out;
                for (const auto &item : split(*v, ';'))
                {
                    std::vector<double> xs;
                    bool ok = true;
                    for (const auto &tok : split(item, ','))
                    {
                        try
                        {
                            xs.push_back(parse_double(tok));
                        }
                        catch (const std::exception &)
                        {
                            ok = false;
                        }
                    }
                    if (!ok || xs.size() != 3)
                    {
                        diag_.add(where(key) + "expected 'x, y, z; x, y, z; ...'");
                        return {};
                    }
                    out.push_back({xs[0], xs[1], xs[2]});
                }
                return out;
            }

            std::string word(const std::string &key, std::optional<std::string> def, const std::set<std::string> &allowed)
            {
                const auto v = raw(key, def);
                if (!v)
                    return {};
                if (!allowed.contains(*v))
                {
                    std::string opts;
                    for (const auto &a : allowed)
                        opts += (opts.empty() ? "" : "|") + a;
                    diag_.add(where(key) + "expected one of " + opts + ", got '" + *v + "'");
                }
                return *v;
            }

            void reject(const std::string &key, const std::string &why)
            {
                if (auto it = entries_.find(key); it != entries_.end())
                    diag_.add("line " + std::to_string(it->second.line) + ": " + qualified(key) + " " + why);
            }

            std::string qualified(const std::string &key) const { return name_.empty() ? key : name_ + "." + key; }

        private:
            std::string where(const std::string &key) const
            {
                if (auto it = entries_.find(key); it != entries_.end())
                    return "line " + std::to_string(it->second.line) + ": " + qualified(key) + ": ";
                return qualified(key) + ": ";
            }

            std::map<std::string, Entry> &entries_;
            std::string name_;
            Diagnostics &diag_;
            std::ostream *log_;
        };

        struct Orientation
        {
            double yaw_deg = 0.0, tilt_deg = 0.0, roll_deg = 0.0;
        };

        Pose read_pose(SectionReader &sec)
        {
            const Vec3 origin = sec.vec3("origin_m", std::nullopt);
            const double yaw = sec.number("yaw_deg", 0.0);
            const double tilt = sec.number("tilt_deg", 0.0);
            const double roll = sec.number("roll_deg", 0.0);
            return Pose::from_angles(origin, deg2rad(yaw), deg2rad(tilt), deg2rad(roll));
        }

        AntennaArray read_array(SectionReader &sec)
        {
            AntennaArray a;
            a.pose = read_pose(sec);
            const auto kind = sec.word("pattern", std::nullopt, {"sector", "dipole", "isotropic"});
            if (kind == "sector")
            {
                SectorPattern s;
                s.peak_gain_dbi = sec.number("peak_gain_dbi", s.peak_gain_dbi);
                s.az_beamwidth_deg = sec.number("az_beamwidth_deg", s.az_beamwidth_deg, [](double x)
                                                { return x > 0.0 && x <= 360.0; }, "0 < x <= 360");
                s.el_beamwidth_deg = sec.number("el_beamwidth_deg", s.el_beamwidth_deg, [](double x)
                                                { return x > 0.0 && x <= 180.0; }, "0 < x <= 180");
                s.backlobe_db = sec.number("backlobe_db", s.backlobe_db, [](double x)
                                           { return x <= 0.0; }, "x <= 0");
                a.pattern = s;
            }
            else
            {
                for (const auto *k : {"az_beamwidth_deg", "el_beamwidth_deg", "backlobe_db"})
                    sec.reject(k, "is only used by the sector pattern");
                if (kind == "dipole")
                    a.pattern = DipolePattern{sec.number("peak_gain_dbi", DipolePattern{}.peak_gain_dbi)};
                else
                {
                    sec.reject("peak_gain_dbi", "is not used by the isotropic pattern");
                    a.pattern = IsotropicPattern{};
                }
            }
            a.elements = sec.vec3_list("element_offsets_m", std::string("0, 0, 0"));
            std::string zeros;
            for (std::size_t i = 0; i < a.elements.size(); ++i)
                zeros += (i ? ", 0" : "0");
            const auto pols = sec.numbers("polarizations", zeros.empty() ? std::string("0") : zeros);
            a.polarizations.clear();
            for (double p : pols)
                a.polarizations.push_back(static_cast<int>(p));
            if (a.polarizations.size() != a.elements.size())
                sec.reject("polarizations", "needs one tag per element offset");
            for (double p : pols)
                if (p != 0.0 && p != 1.0)
                {
                    sec.reject("polarizations", "tags must be 0 or 1");
                    break;
                }
            return a;
        }

        UnitCell read_cell(SectionReader &sec, const std::string &key)
        {
            const auto xs = sec.numbers(key, std::string("1, 0, -1, 0"));
            if (xs.size() != 4)
            {
                sec.reject(key, "expects 're0, im0, re1, im1'");
                return {};
            }
            UnitCell c{{xs[0], xs[1]}, {xs[2], xs[3]}};
            if (std::abs(c.gamma0) > 1.0 + 1e-12 || std::abs(c.gamma1) > 1.0 + 1e-12)
                sec.reject(key, "must satisfy |gamma| <= 1");
            return c;
        }

        // Shortest decimal whose conversion reproduces "stored" exactly
        std::string format_converted(double stored, const std::function<double(double)> &to_internal, double approx)
        {
            for (int prec = 1; prec <= 17; ++prec)
            {
                std::ostringstream os;
                os.precision(prec);
                os << approx;
                const std::string s = os.str();
                if (to_internal(parse_double(s)) == stored)
                    return format_double(parse_double(s));
            }
            return format_double(approx);
        }

        std::string deg_text(double rad)
        {
            return format_converted(rad, [](double d)
                                    { return deg2rad(d); }, rad2deg(rad));
        }

        std::string ns_text(double seconds)
        {
            return format_converted(seconds, [](double ns)
                                    { return ns * 1e-9; }, seconds * 1e9);
        }

        // Orientation angles of a pose built by Pose::from_angles
        Orientation orientation_of(const Pose &p)
        {
            Orientation o;
            const double tilt = std::asin(std::clamp(-p.x_axis.z, -1.0, 1.0));
            const double yaw = std::atan2(p.x_axis.y, p.x_axis.x);
            const double roll = std::atan2(p.y_axis.z, p.z_axis.z);
            o.yaw_deg = rad2deg(yaw);
            o.tilt_deg = rad2deg(tilt);
            o.roll_deg = rad2deg(roll);
            return o;
        }
    }

    std::string format_double(double v)
    {
        char buf[64];
        const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        if (ec != std::errc())
            throw std::runtime_error("format_double failed");
        return std::string(buf, p);
    }

    double parse_double(std::string_view s)
    {
        std::string t = trim(s);
        if (!t.empty() && t.front() == '+')
            t.erase(0, 1);
        double v = 0.0;
        const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || p != t.data() + t.size() || t.empty())
            throw ValidationError("not a number: '" + std::string(s) + "'");
        return v;
    }

    ScenarioFile parse_scenario(std::string_view text, std::ostream *log)
    {
        Diagnostics diag;
        Document doc = tokenize(text, diag);

        for (const auto &s : required_sections)
            if (!doc.section_lines.contains(s))
                diag.add("missing required section [" + s + "]");

        ScenarioFile out;
        auto &scn = out.scenario;

        SectionReader top(doc, "", diag, log);
        if (top.has("schema_version"))
        {
            const auto v = top.count("schema_version", std::nullopt);
            if (v != static_cast<std::size_t>(scenario_schema_version))
                diag.add("schema_version: unsupported version " + std::to_string(v) + " (expected " +
                         std::to_string(scenario_schema_version) + ")");
        }
        else
            diag.add("schema_version: missing required key");

        if (doc.section_lines.contains("tx_array"))
        {
            SectionReader sec(doc, "tx_array", diag, log);
            scn.tx_array = read_array(sec);
        }
        if (doc.section_lines.contains("rx_array"))
        {
            SectionReader sec(doc, "rx_array", diag, log);
            scn.rx_array = read_array(sec);
        }
        if (doc.section_lines.contains("ris"))
        {
            SectionReader sec(doc, "ris", diag, log);
            auto &r = scn.ris;
            r.pose = read_pose(sec);
            r.rows = sec.count("rows", 32, 1);
            r.cols = sec.count("cols", 32, 1);
            r.pitch = sec.number("element_spacing_m", 0.03, [](double x)
                                 { return x > 0.0; }, "x > 0");
            r.element_exponent = sec.number("element_exponent", 1.0, [](double x)
                                            { return x >= 0.0; }, "x >= 0");
            r.loss_db = sec.number("loss_db", 0.0, [](double x)
                                   { return x >= 0.0; }, "x >= 0");
            r.unit_cell[0] = read_cell(sec, "reflection_pol0");
            r.unit_cell[1] = read_cell(sec, "reflection_pol1");
            r.band_lo_hz = sec.number("band_lo_hz", 3.2e9, [](double x)
                                      { return x > 0.0; }, "x > 0");
            r.band_hi_hz = sec.number("band_hi_hz", 3.8e9, [](double x)
                                      { return x > 0.0; }, "x > 0");
            if (!(r.band_lo_hz < r.band_hi_hz))
                sec.reject("band_hi_hz", "must exceed band_lo_hz");
            r.strict_band = sec.boolean("strict_band", false);
            scn.design_frequency = sec.number("design_freq_hz", 0.0, [](double x)
                                              { return x >= 0.0; }, "x >= 0");
        }
        {
            SectionReader sec(doc, "propagation", diag, log);
            auto &p = scn.propagation;
            p.direct_enabled = sec.boolean("direct_enabled", true);
            p.blockage_db = sec.number("blockage_db", 0.0, [](double x)
                                       { return std::isfinite(x); }, "finite");
            auto &s = p.scatter;
            s.cluster_count = sec.count("cluster_count", 0);
            s.power_db = sec.numbers("cluster_power_db", std::string(""));
            const auto delays_ns = sec.numbers("cluster_delay_ns", std::string(""));
            if (s.power_db.size() == 1 && s.cluster_count > 1)
                s.power_db.assign(s.cluster_count, s.power_db.front());
            if (s.power_db.size() != s.cluster_count)
                diag.add("propagation.cluster_power_db: needs one value (or a single shared value) per cluster");
            s.delay_s.clear();
            for (double ns : delays_ns)
                s.delay_s.push_back(ns * 1e-9);
            if (s.delay_s.size() != s.cluster_count)
                diag.add("propagation.cluster_delay_ns: needs one value per cluster");
            for (double d : s.delay_s)
                if (!(d >= 0.0))
                    diag.add("propagation.cluster_delay_ns: delays must be >= 0");
            s.delay_spread_s = sec.number("cluster_delay_spread_ns", 20.0, [](double x)
                                          { return x >= 0.0; }, "x >= 0") *
                               1e-9;
            s.rays_per_cluster = sec.count("rays_per_cluster", 8, 1);
            s.seed = sec.seed("scatter_seed", 1);
        }
        if (doc.section_lines.contains("band"))
        {
            SectionReader sec(doc, "band", diag, log);
            scn.band.lo_hz = sec.number("freq_lo_hz", std::nullopt, [](double x)
                                        { return x > 0.0; }, "x > 0");
            scn.band.hi_hz = sec.number("freq_hi_hz", std::nullopt, [](double x)
                                        { return x > 0.0; }, "x > 0");
            if (sec.has("freq_lo_hz") && sec.has("freq_hi_hz") && !(scn.band.lo_hz < scn.band.hi_hz))
                sec.reject("freq_hi_hz", "must exceed freq_lo_hz");
            scn.band.points = sec.count("points", 11, 1);
        }
        {
            SectionReader sec(doc, "noise", diag, log);
            scn.noise.psd_dbm_hz = sec.number("noise_psd_dbm_hz", -174.0, [](double x)
                                              { return std::isfinite(x); }, "finite");
            scn.noise.noise_figure_db = sec.number("noise_figure_db", 5.0, [](double x)
                                                   { return x >= 0.0; }, "x >= 0");
        }
        {
            SectionReader sec(doc, "pso", diag, log);
            auto &c = out.swarm;
            const SwarmConfig d{};
            c.swarm_size = sec.count("swarm_size", d.swarm_size, 1);
            c.iterations = sec.count("iterations", d.iterations);
            c.inertia = sec.number("inertia", d.inertia, [](double x)
                                   { return x >= 0.0 && x <= 1.0; }, "0 <= x <= 1");
            c.cognitive = sec.number("cognitive", d.cognitive, [](double x)
                                     { return x >= 0.0; }, "x >= 0");
            c.social = sec.number("social", d.social, [](double x)
                                  { return x >= 0.0; }, "x >= 0");
            c.bounds.r_min = sec.number("r_min_m", d.bounds.r_min, [](double x)
                                        { return x > 0.0; }, "x > 0");
            c.bounds.r_max = sec.number("r_max_m", d.bounds.r_max, [](double x)
                                        { return x > 0.0; }, "x > 0");
            c.bounds.theta_min = deg2rad(sec.number("theta_min_deg", 60.0, [](double x)
                                                    { return x >= 0.0 && x <= 180.0; }, "0 <= x <= 180"));
            c.bounds.theta_max = deg2rad(sec.number("theta_max_deg", 120.0, [](double x)
                                                    { return x >= 0.0 && x <= 180.0; }, "0 <= x <= 180"));
            c.bounds.phi_min = deg2rad(sec.number("phi_min_deg", 0.0));
            c.bounds.phi_max = deg2rad(sec.number("phi_max_deg", 180.0));
            c.seed = sec.seed("seed", d.seed);
            c.stall_limit = sec.count("stall_limit", d.stall_limit);
            c.fitness_points = sec.count("fitness_points", d.fitness_points);
            if (c.bounds.r_min > c.bounds.r_max)
                sec.reject("r_max_m", "must be >= r_min_m");
            if (c.bounds.theta_min > c.bounds.theta_max)
                sec.reject("theta_max_deg", "must be >= theta_min_deg");
            if (c.bounds.phi_min > c.bounds.phi_max)
                sec.reject("phi_max_deg", "must be >= phi_min_deg");
        }

        if (!diag.empty())
            diag.raise();

        try
        {
            scn.validate();
            out.swarm.validate();
        }
        catch (const ValidationError &e)
        {
            diag.add(e.what());
            diag.raise();
        }
        return out;
    }

    ScenarioFile load_scenario_file(const std::filesystem::path &path, std::ostream *log)
    {
        return parse_scenario(read_text_file(path), log);
    }

    Scenario load_scenario(const std::filesystem::path &path, std::ostream *log)
    {
        return load_scenario_file(path, log).scenario;
    }

    namespace
    {
        std::string vec_text(const Vec3 &v)
        {
            return format_double(v.x) + ", " + format_double(v.y) + ", " + format_double(v.z);
        }

        void write_pose(std::ostream &os, const Pose &p)
        {
            const auto o = orientation_of(p);
            os << "origin_m = " << vec_text(p.origin) << '\n';
            // Angles are printed with the fewest digits that rebuild the same axes
            auto angle = [&](double deg)
            {
                return format_converted(deg2rad(deg), [](double d)
                                        { return deg2rad(d); }, deg);
            };
            const Orientation rounded{parse_double(angle(o.yaw_deg)), parse_double(angle(o.tilt_deg)), parse_double(angle(o.roll_deg))};
            const Pose again = Pose::from_angles(p.origin, deg2rad(rounded.yaw_deg), deg2rad(rounded.tilt_deg), deg2rad(rounded.roll_deg));
            const bool exact = again.x_axis == p.x_axis && again.y_axis == p.y_axis && again.z_axis == p.z_axis;
            const Orientation &use = exact ? rounded : o;
            os << "yaw_deg = " << format_double(use.yaw_deg) << '\n';
            os << "tilt_deg = " << format_double(use.tilt_deg) << '\n';
            os << "roll_deg = " << format_double(use.roll_deg) << '\n';
        }

        void write_array(std::ostream &os, const AntennaArray &a)
        {
            write_pose(os, a.pose);
            if (const auto *s = std::get_if<SectorPattern>(&a.pattern))
            {
                os << "pattern = sector\n";
                os << "peak_gain_dbi = " << format_double(s->peak_gain_dbi) << '\n';
                os << "az_beamwidth_deg = " << format_double(s->az_beamwidth_deg) << '\n';
                os << "el_beamwidth_deg = " << format_double(s->el_beamwidth_deg) << '\n';
                os << "backlobe_db = " << format_double(s->backlobe_db) << '\n';
            }
            else if (const auto *d = std::get_if<DipolePattern>(&a.pattern))
            {
                os << "pattern = dipole\n";
                os << "peak_gain_dbi = " << format_double(d->peak_gain_dbi) << '\n';
            }
            else
                os << "pattern = isotropic\n";
            os << "element_offsets_m = ";
            for (std::size_t i = 0; i < a.elements.size(); ++i)
                os << (i ? "; " : "") << vec_text(a.elements[i]);
            os << "\npolarizations = ";
            for (std::size_t i = 0; i < a.polarizations.size(); ++i)
                os << (i ? ", " : "") << a.polarizations[i];
            os << '\n';
        }

        std::string cell_text(const UnitCell &c)
        {
            return format_double(c.gamma0.real()) + ", " + format_double(c.gamma0.imag()) + ", " +
                   format_double(c.gamma1.real()) + ", " + format_double(c.gamma1.imag());
        }
    }

    std::string format_scenario(const ScenarioFile &file)
    {
        const auto &scn = file.scenario;
        std::ostringstream os;
        os << "schema_version = " << scenario_schema_version << "\n\n[tx_array]\n";
        write_array(os, scn.tx_array);
        os << "\n[rx_array]\n";
        write_array(os, scn.rx_array);

        const auto &r = scn.ris;
        os << "\n[ris]\n";
        write_pose(os, r.pose);
        os << "rows = " << r.rows << "\ncols = " << r.cols << '\n';
        os << "element_spacing_m = " << format_double(r.pitch) << '\n';
        os << "element_exponent = " << format_double(r.element_exponent) << '\n';
        os << "loss_db = " << format_double(r.loss_db) << '\n';
        os << "reflection_pol0 = " << cell_text(r.unit_cell[0]) << '\n';
        os << "reflection_pol1 = " << cell_text(r.unit_cell[1]) << '\n';
        os << "band_lo_hz = " << format_double(r.band_lo_hz) << '\n';
        os << "band_hi_hz = " << format_double(r.band_hi_hz) << '\n';
        os << "strict_band = " << (r.strict_band ? "true" : "false") << '\n';
        os << "design_freq_hz = " << format_double(scn.design_frequency) << '\n';

        const auto &p = scn.propagation;
        os << "\n[propagation]\n";
        os << "direct_enabled = " << (p.direct_enabled ? "true" : "false") << '\n';
        os << "blockage_db = " << format_double(p.blockage_db) << '\n';
        os << "cluster_count = " << p.scatter.cluster_count << '\n';
        os << "cluster_power_db = ";
        for (std::size_t i = 0; i < p.scatter.power_db.size(); ++i)
            os << (i ? ", " : "") << format_double(p.scatter.power_db[i]);
        os << "\ncluster_delay_ns = ";
        for (std::size_t i = 0; i < p.scatter.delay_s.size(); ++i)
            os << (i ? ", " : "") << ns_text(p.scatter.delay_s[i]);
        os << "\ncluster_delay_spread_ns = " << ns_text(p.scatter.delay_spread_s) << '\n';
        os << "rays_per_cluster = " << p.scatter.rays_per_cluster << '\n';
        os << "scatter_seed = " << p.scatter.seed << '\n';

        os << "\n[band]\n";
        os << "freq_lo_hz = " << format_double(scn.band.lo_hz) << '\n';
        os << "freq_hi_hz = " << format_double(scn.band.hi_hz) << '\n';
        os << "points = " << scn.band.points << '\n';

        os << "\n[noise]\n";
        os << "noise_psd_dbm_hz = " << format_double(scn.noise.psd_dbm_hz) << '\n';
        os << "noise_figure_db = " << format_double(scn.noise.noise_figure_db) << '\n';

        const auto &c = file.swarm;
        os << "\n[pso]\n";
        os << "swarm_size = " << c.swarm_size << '\n';
        os << "iterations = " << c.iterations << '\n';
        os << "inertia = " << format_double(c.inertia) << '\n';
        os << "cognitive = " << format_double(c.cognitive) << '\n';
        os << "social = " << format_double(c.social) << '\n';
        os << "r_min_m = " << format_double(c.bounds.r_min) << '\n';
        os << "r_max_m = " << format_double(c.bounds.r_max) << '\n';
        os << "theta_min_deg = " << deg_text(c.bounds.theta_min) << '\n';
        os << "theta_max_deg = " << deg_text(c.bounds.theta_max) << '\n';
        os << "phi_min_deg = " << deg_text(c.bounds.phi_min) << '\n';
        os << "phi_max_deg = " << deg_text(c.bounds.phi_max) << '\n';
        os << "seed = " << c.seed << '\n';
        os << "stall_limit = " << c.stall_limit << '\n';
        os << "fitness_points = " << c.fitness_points << '\n';
        return os.str();
    }

    void save_scenario(const ScenarioFile &file, const std::filesystem::path &path)
    {
        write_text_atomic(path, format_scenario(file));
    }
}
