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

#ifndef risim_tests_support_H
#define risim_tests_support_H

#include "risim/channel.hpp"

#include <Eigen/Dense>

#include <complex>
#include <filesystem>
#include <random>

namespace risim::test
{
    inline std::filesystem::path data_dir() { return RISIM_TEST_DATA_DIR; }

    inline Eigen::MatrixXcd random_matrix(std::mt19937_64 &rng, Eigen::Index rows, Eigen::Index cols)
    {
        std::normal_distribution<double> n(0.0, 1.0);
        Eigen::MatrixXcd m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j)
                m(i, j) = {n(rng), n(rng)};
        return m;
    }

    // Haar-ish unitary from the QR factor of a Gaussian matrix
    inline Eigen::MatrixXcd random_unitary(std::mt19937_64 &rng, Eigen::Index n)
    {
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_matrix(rng, n, n));
        return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    }

    // Small, fast scenario: isotropic 2x2 link past an 8x8 panel
    inline Scenario small_scenario()
    {
        Scenario s;
        s.tx_array.pose = Pose::from_angles({20.0, 30.0, 6.0}, 0.0, 0.0);
        s.tx_array.elements = {{0, 0, 0}, {0, 0.05, 0}};
        s.tx_array.polarizations = {0, 1};
        s.tx_array.pattern = IsotropicPattern{};
        s.rx_array.pose = Pose::from_angles({-4.0, 8.0, 1.0}, 0.0, 0.0);
        s.rx_array.elements = {{0, 0, 0}, {0.3, 0, 0}};
        s.rx_array.polarizations = {0, 1};
        s.rx_array.pattern = IsotropicPattern{};
        s.ris.rows = s.ris.cols = 8;
        s.ris.pose = Pose::from_angles({0.0, 0.0, 4.0}, 0.0, 0.0);
        s.band = {3.59e9, 3.64e9, 5};
        return s;
    }
}

#endif
