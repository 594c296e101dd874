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

#include "sarphys/polarimetry.hpp"
#include "sarphys/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace sarphys::polar
{
    namespace
    {
        constexpr double kRadToDeg = 180.0 / kPi;
        constexpr double kTie = 1e-12;
        constexpr double kRankFloor = 1e-12;

        Vector3c pixel_vector(const QuadPolImage &qp, std::size_t i)
        {
            const cdouble hh(qp.hh.image.samples()[i]);
            const cdouble hv(qp.hv.image.samples()[i]);
            const cdouble vh(qp.vh.image.samples()[i]);
            const cdouble vv(qp.vv.image.samples()[i]);
            return scattering_vector(hh, 0.5 * (hv + vh), vv);
        }

        void stretch(const std::vector<double> &plane, std::vector<float> &out)
        {
            const double lo = percentile(plane, 1.0);
            const double hi = percentile(plane, 99.0);
            out.assign(plane.size(), 0.0f);
            if (!(hi > lo))
                return;
            for (std::size_t i = 0; i < plane.size(); ++i)
                out[i] = static_cast<float>(std::clamp((plane[i] - lo) / (hi - lo), 0.0, 1.0));
        }

        void check_window(std::size_t w, std::size_t n, const char *axis)
        {
            if (w == 0 || w % 2 == 0)
                fail(std::string("coherency window must be odd and >= 1 along ") + axis);
            if (w > n)
                fail("coherency window larger than image");
        }
    }

    Vector3c scattering_vector(cdouble hh, cdouble hv, cdouble vv)
    {
        const double s = 1.0 / std::sqrt(2.0);
        return Vector3c(s * (hh + vv), s * (hh - vv), s * 2.0 * hv);
    }

    PauliComposite pauli_rgb(const QuadPolImage &qp)
    {
        qp.validate();
        PauliComposite out;
        const std::size_t rows = qp.hh.n_azimuth(), cols = qp.hh.n_range();
        out.powers.rows = rows;
        out.powers.cols = cols;
        out.powers.planes.assign(3, std::vector<double>(rows * cols));
        for (std::size_t i = 0; i < rows * cols; ++i)
        {
            const cdouble hh(qp.hh.image.samples()[i]);
            const cdouble hv(qp.hv.image.samples()[i]);
            const cdouble vv(qp.vv.image.samples()[i]);
            out.powers.planes[0][i] = std::norm(hh - vv);
            out.powers.planes[1][i] = 2.0 * std::norm(hv);
            out.powers.planes[2][i] = std::norm(hh + vv);
        }
        out.display = RgbImage(rows, cols);
        for (int c = 0; c < 3; ++c)
            stretch(out.powers.planes[static_cast<std::size_t>(c)], out.display.channel[c]);
        return out;
    }

    CoherencyImage coherency(const QuadPolImage &qp, std::size_t window_azimuth, std::size_t window_range)
    {
        qp.validate();
        const std::size_t rows = qp.hh.n_azimuth(), cols = qp.hh.n_range();
        check_window(window_azimuth, rows, "azimuth");
        check_window(window_range, cols, "range");

        std::vector<Matrix3c> outer(rows * cols);
        for (std::size_t i = 0; i < rows * cols; ++i)
        {
            const Vector3c k = pixel_vector(qp, i);
            outer[i] = k * k.adjoint();
        }

        // Separable boxcar sums: along range, then along azimuth.
        const std::size_t hr = window_range / 2, ha = window_azimuth / 2;
        std::vector<Matrix3c> horiz(rows * cols);
        parallel_for(rows, [&](std::size_t b, std::size_t e)
                     {
            for (std::size_t r = b; r < e; ++r)
                for (std::size_t c = 0; c < cols; ++c)
                {
                    Matrix3c acc = Matrix3c::Zero();
                    for (std::size_t cc = (c > hr ? c - hr : 0); cc <= std::min(cols - 1, c + hr); ++cc)
                        acc += outer[r * cols + cc];
                    horiz[r * cols + c] = acc;
                } });

        CoherencyImage out;
        out.rows = rows;
        out.cols = cols;
        out.window_azimuth = window_azimuth;
        out.window_range = window_range;
        out.t.resize(rows * cols);
        parallel_for(rows, [&](std::size_t b, std::size_t e)
                     {
            for (std::size_t r = b; r < e; ++r)
            {
                const std::size_t r0 = r > ha ? r - ha : 0, r1 = std::min(rows - 1, r + ha);
                for (std::size_t c = 0; c < cols; ++c)
                {
                    const std::size_t c0 = c > hr ? c - hr : 0, c1 = std::min(cols - 1, c + hr);
                    Matrix3c acc = Matrix3c::Zero();
                    for (std::size_t rr = r0; rr <= r1; ++rr)
                        acc += horiz[rr * cols + c];
                    const double count = static_cast<double>((r1 - r0 + 1) * (c1 - c0 + 1));
                    Matrix3c t = acc / count;
                    out.t[r * cols + c] = 0.5 * (t + t.adjoint());
                }
            } });
        return out;
    }

    HermitianEigen hermitian_eigen(const Matrix3c &t)
    {
        Eigen::SelfAdjointEigenSolver<Matrix3c> solver(t);
        if (solver.info() != Eigen::Success)
            fail("hermitian eigen-decomposition failed");
        HermitianEigen out;
        for (int i = 0; i < 3; ++i)
        {
            out.values(i) = solver.eigenvalues()(2 - i);
            Vector3c v = solver.eigenvectors().col(2 - i);
            for (int c = 0; c < 3; ++c)
                if (std::abs(v(c)) > 1e-12)
                {
                    v *= std::conj(v(c)) / std::abs(v(c));
                    break;
                }
            out.vectors.col(i) = v;
        }
        return out;
    }

    int classify_zone(double entropy, double alpha_deg)
    {
        auto at_or_above = [](double v, double boundary)
        { return v >= boundary - kTie; };

        // Lower zone indices hold higher entropy and higher alpha, so a value
        // on a boundary resolves upwards in H and alpha.
        if (at_or_above(entropy, 0.9))
        {
            if (at_or_above(alpha_deg, 55.0))
                return 1;
            if (at_or_above(alpha_deg, 40.0))
                return 2;
            return 3;
        }
        if (at_or_above(entropy, 0.5))
        {
            if (at_or_above(alpha_deg, 50.0))
                return 4;
            if (at_or_above(alpha_deg, 40.0))
                return 5;
            return 6;
        }
        if (at_or_above(alpha_deg, 47.5))
            return 7;
        if (at_or_above(alpha_deg, 42.5))
            return 8;
        return 9;
    }

    HAlpha h_alpha(const Matrix3c &t)
    {
        const HermitianEigen eig = hermitian_eigen(t);
        Eigen::Vector3d lambda = eig.values.cwiseMax(0.0);
        // Rounding-level eigenvalues of rank-deficient matrices carry no
        // information and would make the anisotropy arbitrary.
        for (int i = 1; i < 3; ++i)
            if (lambda(i) <= kRankFloor * lambda(0))
                lambda(i) = 0.0;
        const double sum = lambda.sum();
        HAlpha out;
        if (!(sum > 0.0))
            return out; // no return: zeros, zone 9

        double entropy = 0.0, alpha = 0.0;
        for (int i = 0; i < 3; ++i)
        {
            const double p = lambda(i) / sum;
            if (p > 0.0)
                entropy -= p * std::log(p) / std::log(3.0);
            alpha += p * std::acos(std::min(1.0, std::abs(eig.vectors(0, i)))) * kRadToDeg;
        }
        out.entropy = std::clamp(entropy, 0.0, 1.0);
        out.alpha_deg = std::clamp(alpha, 0.0, 90.0);
        const double minor = lambda(1) + lambda(2);
        out.anisotropy = minor > 0.0 ? std::clamp((lambda(1) - lambda(2)) / minor, 0.0, 1.0) : 0.0;
        out.zone = classify_zone(out.entropy, out.alpha_deg);
        return out;
    }

    HAlphaImage h_alpha(const CoherencyImage &cov)
    {
        HAlphaImage img;
        img.rows = cov.rows;
        img.cols = cov.cols;
        const std::size_t n = cov.rows * cov.cols;
        img.entropy.resize(n);
        img.anisotropy.resize(n);
        img.alpha_deg.resize(n);
        img.zone.resize(n);
        parallel_for(n, [&](std::size_t b, std::size_t e)
                     {
            for (std::size_t i = b; i < e; ++i)
            {
                const HAlpha h = h_alpha(cov.t[i]);
                img.entropy[i] = h.entropy;
                img.anisotropy[i] = h.anisotropy;
                img.alpha_deg[i] = h.alpha_deg;
                img.zone[i] = h.zone;
            } });
        return img;
    }

    double orientation_angle(const Matrix3c &t)
    {
        const double num = -2.0 * t(1, 2).real();
        const double den = t(2, 2).real() - t(1, 1).real();
        if (num == 0.0 && den == 0.0)
            return 0.0;
        double theta = 0.25 * (std::atan2(num, den) + kPi) * kRadToDeg; // (0, 90]
        if (theta > 45.0)
            theta -= 90.0;
        return theta;
    }

    std::vector<double> orientation_angle(const CoherencyImage &cov)
    {
        std::vector<double> out(cov.t.size());
        for (std::size_t i = 0; i < cov.t.size(); ++i)
            out[i] = orientation_angle(cov.t[i]);
        return out;
    }

    bool is_hermitian(const Matrix3c &t, double tol)
    {
        const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
        return (t - t.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
    }

    Matrix3c psd_project(const Matrix3c &t)
    {
        if (!is_hermitian(t))
            fail("psd_project requires a Hermitian matrix");
        const HermitianEigen eig = hermitian_eigen(t);
        // Rounding-level negatives of a rank-deficient PSD matrix do not count.
        if (eig.values.minCoeff() >= -kRankFloor * std::max(0.0, eig.values.maxCoeff()))
            return t;
        const Eigen::Vector3d clipped = eig.values.cwiseMax(0.0);
        Matrix3c out = eig.vectors * clipped.cast<cdouble>().asDiagonal() * eig.vectors.adjoint();
        return 0.5 * (out + out.adjoint());
    }

    CoherencyImage psd_project(const CoherencyImage &cov)
    {
        CoherencyImage out = cov;
        parallel_for(cov.t.size(), [&](std::size_t b, std::size_t e)
                     {
            for (std::size_t i = b; i < e; ++i)
                out.t[i] = psd_project(cov.t[i]); });
        return out;
    }
}
