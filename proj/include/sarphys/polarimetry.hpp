// SPDX-License-Identifier: Apache-2.0
//
// sarphys - explainable physical layers for synthetic aperture radar
// Copyright (C) 2026 The sarphys authors
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

#ifndef SARPHYS_POLARIMETRY_HPP
#define SARPHYS_POLARIMETRY_HPP

#include "sarphys/core.hpp"

#include <Eigen/Dense>

#include <vector>

namespace sarphys::polar
{
    using Matrix3c = Eigen::Matrix3cd;
    using Vector3c = Eigen::Vector3cd;

    // Pauli scattering vector (1/sqrt2) [HH + VV, HH - VV, 2 HV].
    Vector3c scattering_vector(cdouble hh, cdouble hv, cdouble vv);

    // Real planes of identical size, row-major.
    struct PlaneStack
    {
        std::size_t rows = 0, cols = 0;
        std::vector<std::vector<double>> planes;
    };

    struct PauliComposite
    {
        PlaneStack powers; // |HH-VV|^2, 2|HV|^2, |HH+VV|^2
        RgbImage display;  // per-channel 1-99 percentile stretch
    };

    PauliComposite pauli_rgb(const QuadPolImage &qp);

    struct CoherencyImage
    {
        std::size_t rows = 0, cols = 0;
        std::size_t window_azimuth = 1, window_range = 1;
        std::vector<Matrix3c> t;

        const Matrix3c &at(std::size_t r, std::size_t c) const { return t[r * cols + c]; }
    };

    // Boxcar <k k^H> over an odd window, truncated at the borders. Cross-pol
    // is taken as (HV + VH) / 2.
    CoherencyImage coherency(const QuadPolImage &qp, std::size_t window_azimuth, std::size_t window_range);

    // Eigenvalues descending; eigenvector columns with their first nonzero
    // component made real-positive.
    struct HermitianEigen
    {
        Eigen::Vector3d values;
        Matrix3c vectors;
    };

    HermitianEigen hermitian_eigen(const Matrix3c &t);

    struct HAlpha
    {
        double entropy = 0.0;
        double anisotropy = 0.0;
        double alpha_deg = 0.0;
        int zone = 9;
    };

    // Zero-trace matrices map to all-zero outputs with zone 9 (no return).
    HAlpha h_alpha(const Matrix3c &t);

    struct HAlphaImage
    {
        std::size_t rows = 0, cols = 0;
        std::vector<double> entropy, anisotropy, alpha_deg;
        std::vector<int> zone;
    };

    HAlphaImage h_alpha(const CoherencyImage &cov);

    // Cloude-Pottier zones 1..9. H splits at 0.5 / 0.9; alpha splits at
    // 42.5 / 47.5 (low H), 40 / 50 (medium H), 40 / 55 (high H). A value on a
    // boundary, or within 1e-12 of it, belongs to the lower zone index.
    int classify_zone(double entropy, double alpha_deg);

    // Polarization orientation angle in (-45, 45] degrees.
    double orientation_angle(const Matrix3c &t);
    std::vector<double> orientation_angle(const CoherencyImage &cov);

    // Frobenius-nearest PSD matrix: negative eigenvalues clipped to zero.
    // PSD inputs, allowing eigenvalues down to -1e-12 of the largest, are
    // returned unchanged.
    Matrix3c psd_project(const Matrix3c &t);
    CoherencyImage psd_project(const CoherencyImage &cov);

    bool is_hermitian(const Matrix3c &t, double tol = 1e-9);
}

#endif
