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

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace risim
{
    namespace
    {
        const std::string sweep_header = "freq_hz,rx,tx,re,im";
        const std::string reference_header = "freq_hz,re,im";

        // Lines of a CSV body after checking the header; blank lines are skipped
        std::vector<std::pair<std::size_t, std::vector<std::string>>> csv_rows(std::string_view text, const std::string &header,
                                                                               std::size_t fields)
        {
            std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
            std::size_t pos = 0, line_no = 0;
            bool seen_header = false;
            while (pos < text.size())
            {
                auto end = text.find('\n', pos);
                if (end == std::string_view::npos)
                    end = text.size();
                std::string_view line = text.substr(pos, end - pos);
                pos = end + 1;
                ++line_no;
                if (!line.empty() && line.back() == '\r')
                    line.remove_suffix(1);
                if (line.empty())
                    continue;
                if (!seen_header)
                {
                    if (line != header)
                        throw ValidationError("line " + std::to_string(line_no) + ": expected header '" + header + "'");
                    seen_header = true;
                    continue;
                }
                std::vector<std::string> cells;
                std::size_t p = 0;
                while (true)
                {
                    const auto comma = line.find(',', p);
                    cells.emplace_back(line.substr(p, comma == std::string_view::npos ? std::string_view::npos : comma - p));
                    if (comma == std::string_view::npos)
                        break;
                    p = comma + 1;
                }
                if (cells.size() != fields)
                    throw ValidationError("line " + std::to_string(line_no) + ": expected " + std::to_string(fields) + " fields");
                rows.emplace_back(line_no, std::move(cells));
            }
            if (!seen_header)
                throw ValidationError("missing header '" + header + "'");
            return rows;
        }

        double field_double(const std::string &s, std::size_t line_no)
        {
            try
            {
                return parse_double(s);
            }
            catch (const ValidationError &)
            {
                throw ValidationError("line " + std::to_string(line_no) + ": not a number '" + s + "'");
            }
        }

        Eigen::Index field_index(const std::string &s, std::size_t line_no)
        {
            long long v = -1;
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || p != s.data() + s.size() || v < 0)
                throw ValidationError("line " + std::to_string(line_no) + ": bad index '" + s + "'");
            return static_cast<Eigen::Index>(v);
        }
    }

    std::string format_sweep_csv(const FrequencySweep &sweep)
    {
        sweep.validate();
        std::string out = sweep_header + '\n';
        for (std::size_t k = 0; k < sweep.size(); ++k)
        {
            const auto &h = sweep.matrices[k].entries;
            const std::string f = format_double(sweep.frequencies[k]);
            for (Eigen::Index r = 0; r < h.rows(); ++r)
                for (Eigen::Index t = 0; t < h.cols(); ++t)
                    out += f + ',' + std::to_string(r) + ',' + std::to_string(t) + ',' + format_double(h(r, t).real()) + ',' +
                           format_double(h(r, t).imag()) + '\n';
        }
        return out;
    }

    FrequencySweep parse_sweep_csv(std::string_view text)
    {
        // Keyed assembly so row order does not matter
        std::map<double, std::map<std::pair<Eigen::Index, Eigen::Index>, std::complex<double>>> cells;
        Eigen::Index n_rx = 0, n_tx = 0;
        for (const auto &[line_no, row] : csv_rows(text, sweep_header, 5))
        {
            const double f = field_double(row[0], line_no);
            if (!std::isfinite(f) || !(f > 0.0))
                throw ValidationError("line " + std::to_string(line_no) + ": frequency must be positive and finite");
            const Eigen::Index r = field_index(row[1], line_no), t = field_index(row[2], line_no);
            const std::complex<double> v{field_double(row[3], line_no), field_double(row[4], line_no)};
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw ValidationError("line " + std::to_string(line_no) + ": non-finite channel value");
            if (!cells[f].emplace(std::pair{r, t}, v).second)
                throw ValidationError("line " + std::to_string(line_no) + ": duplicate cell (freq_hz=" + row[0] + ", rx=" +
                                      row[1] + ", tx=" + row[2] + ")");
            n_rx = std::max(n_rx, r + 1);
            n_tx = std::max(n_tx, t + 1);
        }
        if (cells.empty())
            throw ValidationError("sweep file has no data rows");

        FrequencySweep sweep;
        sweep.band_label = "measured";
        for (const auto &[f, grid] : cells)
        {
            ChannelMatrix m;
            m.frequency = f;
            m.entries.resize(n_rx, n_tx);
            for (Eigen::Index r = 0; r < n_rx; ++r)
                for (Eigen::Index t = 0; t < n_tx; ++t)
                {
                    const auto it = grid.find({r, t});
                    if (it == grid.end())
                        throw ValidationError("grid gap: missing cell (freq_hz=" + format_double(f) + ", rx=" + std::to_string(r) +
                                              ", tx=" + std::to_string(t) + ")");
                    m.entries(r, t) = it->second;
                }
            sweep.frequencies.push_back(f);
            sweep.matrices.push_back(std::move(m));
        }
        sweep.validate();
        return sweep;
    }

    void export_sweep(const FrequencySweep &sweep, const std::filesystem::path &path)
    {
        write_text_atomic(path, format_sweep_csv(sweep));
    }

    std::string format_reference_csv(const ReferenceTrace &trace)
    {
        if (trace.frequencies.size() != trace.values.size())
            throw ValidationError("reference trace has mismatched lengths");
        std::string out = reference_header + '\n';
        for (std::size_t k = 0; k < trace.frequencies.size(); ++k)
            out += format_double(trace.frequencies[k]) + ',' + format_double(trace.values[k].real()) + ',' +
                   format_double(trace.values[k].imag()) + '\n';
        return out;
    }

    ReferenceTrace parse_reference_csv(std::string_view text)
    {
        ReferenceTrace trace;
        for (const auto &[line_no, row] : csv_rows(text, reference_header, 3))
        {
            const double f = field_double(row[0], line_no);
            if (!trace.frequencies.empty() && !(f > trace.frequencies.back()))
                throw ValidationError("line " + std::to_string(line_no) + ": reference frequencies must be strictly ascending");
            trace.frequencies.push_back(f);
            trace.values.emplace_back(field_double(row[1], line_no), field_double(row[2], line_no));
        }
        if (trace.frequencies.empty())
            throw ValidationError("reference trace has no data rows");
        return trace;
    }

    FrequencySweep deembed(const FrequencySweep &raw, const ReferenceTrace &reference)
    {
        raw.validate();
        if (reference.frequencies.size() != reference.values.size())
            throw ValidationError("reference trace has mismatched lengths");

        std::map<double, std::complex<double>> by_freq;
        for (std::size_t k = 0; k < reference.frequencies.size(); ++k)
            by_freq[reference.frequencies[k]] = reference.values[k];

        FrequencySweep out = raw;
        for (std::size_t k = 0; k < out.size(); ++k)
        {
            const auto it = by_freq.find(out.frequencies[k]);
            if (it == by_freq.end())
                throw ValidationError("reference trace has no value at " + format_double(out.frequencies[k]) + " Hz");
            const auto r = it->second;
            if (!(std::abs(r) >= 1e-12))
                throw NumericError("reference magnitude below 1e-12 at " + format_double(out.frequencies[k]) + " Hz");
            out.matrices[k].entries /= r;
        }
        return out;
    }

    FrequencySweep ingest_sweep(const std::filesystem::path &path, const std::optional<std::filesystem::path> &reference)
    {
        FrequencySweep sweep = parse_sweep_csv(read_text_file(path));
        if (reference)
            sweep = deembed(sweep, parse_reference_csv(read_text_file(*reference)));
        return sweep;
    }

    std::string read_text_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ValidationError("cannot open '" + path.string() + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void write_text_atomic(const std::filesystem::path &path, std::string_view content)
    {
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw ValidationError("cannot write '" + tmp.string() + "'");
            out.write(content.data(), static_cast<std::streamsize>(content.size()));
            out.flush();
            if (!out)
                throw ValidationError("write failed for '" + tmp.string() + "'");
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec)
        {
            std::filesystem::remove(tmp, ec);
            throw ValidationError("cannot rename onto '" + path.string() + "'");
        }
    }
}
