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

#ifndef SARPHYS_IO_HPP
#define SARPHYS_IO_HPP

#include "sarphys/core.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace sarphys
{
    using json = nlohmann::json;

    // SLC1 container: "SLC1" + u32le n_azimuth + u32le n_range + interleaved
    // f32le (re, im) payload, with a JSON sidecar at <path>.meta.
    void write_complex_product(const ComplexImage &img, const json &meta, const std::filesystem::path &path);
    ComplexImage read_complex_product(const std::filesystem::path &path, json &meta);

    // meta is merged into the sidecar (e.g. provenance).
    void write_slc(const SlcImage &img, const std::filesystem::path &path, const json &extra = json::object());
    SlcImage read_slc(const std::filesystem::path &path);

    json sensor_to_json(const SensorParams &p);
    SensorParams sensor_from_json(const json &j);

    // Flat little-endian f32 tensor; shape and everything else lives in the
    // sidecar <path>.meta.
    struct Tensor
    {
        std::vector<std::size_t> shape;
        std::vector<float> data;
        json meta = json::object();

        Tensor() = default;
        Tensor(std::vector<std::size_t> s) : shape(std::move(s)), data(element_count(shape)) {}

        static std::size_t element_count(const std::vector<std::size_t> &shape);
    };

    void write_tensor(const Tensor &t, const std::filesystem::path &path);
    Tensor read_tensor(const std::filesystem::path &path);

    // 8-bit RGB, no alpha. rgb holds width*height*3 bytes, row-major.
    void write_png_rgb(const std::filesystem::path &path, std::size_t width, std::size_t height,
                       const std::vector<std::uint8_t> &rgb);

    std::string sha256_hex(const std::vector<std::uint8_t> &bytes);
    std::string sha256_file(const std::filesystem::path &path);
    std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path &path);
    std::filesystem::path sidecar_path(const std::filesystem::path &path);
}

#endif
