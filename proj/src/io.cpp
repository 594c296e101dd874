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

#include "sarphys/io.hpp"

#include <openssl/evp.h>
#include <png.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace sarphys
{
    namespace
    {
        [[noreturn]] void io_fail(const std::string &what) { throw Error(ErrorKind::io, what); }

        void put_u32(std::vector<std::uint8_t> &out, std::uint32_t v)
        {
            for (int i = 0; i < 4; ++i)
                out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xffu));
        }

        std::uint32_t get_u32(const std::uint8_t *p)
        {
            return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
                   (std::uint32_t(p[3]) << 24);
        }

        void put_f32(std::vector<std::uint8_t> &out, float f)
        {
            put_u32(out, std::bit_cast<std::uint32_t>(f));
        }

        float get_f32(const std::uint8_t *p) { return std::bit_cast<float>(get_u32(p)); }

        void write_bytes(const std::filesystem::path &path, const std::vector<std::uint8_t> &bytes)
        {
            std::ofstream os(path, std::ios::binary | std::ios::trunc);
            if (!os)
                io_fail("cannot open '" + path.string() + "' for writing");
            os.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
            if (!os)
                io_fail("write failed for '" + path.string() + "'");
        }

        void write_text(const std::filesystem::path &path, const std::string &text)
        {
            write_bytes(path, std::vector<std::uint8_t>(text.begin(), text.end()));
        }

        json read_json(const std::filesystem::path &path)
        {
            std::ifstream is(path);
            if (!is)
                io_fail("missing metadata sidecar '" + path.string() + "'");
            try
            {
                return json::parse(is);
            }
            catch (const json::exception &e)
            {
                fail("malformed metadata in '" + path.string() + "': " + e.what());
            }
        }

        double get_number(const json &j, const char *key)
        {
            if (!j.contains(key) || !j[key].is_number())
                fail(std::string("metadata missing numeric key '") + key + "'");
            return j[key].get<double>();
        }
    }

    std::filesystem::path sidecar_path(const std::filesystem::path &path)
    {
        return std::filesystem::path(path.string() + ".meta");
    }

    std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path &path)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is)
            io_fail("missing file '" + path.string() + "'");
        return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(is), {});
    }

    json sensor_to_json(const SensorParams &p)
    {
        return json{{"carrier_freq_hz", p.carrier_freq_hz},
                    {"chirp_bandwidth_hz", p.chirp_bandwidth_hz},
                    {"pulse_duration_s", p.pulse_duration_s},
                    {"range_sample_rate_hz", p.range_sample_rate_hz},
                    {"prf_hz", p.prf_hz},
                    {"platform_velocity_mps", p.platform_velocity_mps},
                    {"antenna_length_m", p.antenna_length_m},
                    {"center_slant_range_m", p.center_slant_range_m},
                    {"incidence_angle_deg", p.incidence_angle_deg}};
    }

    SensorParams sensor_from_json(const json &j)
    {
        SensorParams p;
        p.carrier_freq_hz = get_number(j, "carrier_freq_hz");
        p.chirp_bandwidth_hz = get_number(j, "chirp_bandwidth_hz");
        p.pulse_duration_s = get_number(j, "pulse_duration_s");
        p.range_sample_rate_hz = get_number(j, "range_sample_rate_hz");
        p.prf_hz = get_number(j, "prf_hz");
        p.platform_velocity_mps = get_number(j, "platform_velocity_mps");
        p.antenna_length_m = get_number(j, "antenna_length_m");
        p.center_slant_range_m = get_number(j, "center_slant_range_m");
        p.incidence_angle_deg = get_number(j, "incidence_angle_deg");
        return p;
    }

    void write_complex_product(const ComplexImage &img, const json &meta, const std::filesystem::path &path)
    {
        if (auto bad = img.first_non_finite(); bad != img.size())
            fail("non-finite sample at index " + std::to_string(bad));
        if (img.n_azimuth() > 0xffffffffu || img.n_range() > 0xffffffffu)
            fail("image dimensions exceed the SLC1 header range");

        std::vector<std::uint8_t> bytes;
        bytes.reserve(12 + img.size() * 8);
        for (char c : {'S', 'L', 'C', '1'})
            bytes.push_back(static_cast<std::uint8_t>(c));
        put_u32(bytes, static_cast<std::uint32_t>(img.n_azimuth()));
        put_u32(bytes, static_cast<std::uint32_t>(img.n_range()));
        for (const auto &s : img.samples())
        {
            put_f32(bytes, s.real());
            put_f32(bytes, s.imag());
        }
        json m = meta;
        m["n_azimuth"] = img.n_azimuth();
        m["n_range"] = img.n_range();
        write_bytes(path, bytes);
        write_text(sidecar_path(path), m.dump(2) + "\n");
    }

    ComplexImage read_complex_product(const std::filesystem::path &path, json &meta)
    {
        const auto bytes = read_file_bytes(path);
        meta = read_json(sidecar_path(path));
        if (bytes.size() < 12 || std::memcmp(bytes.data(), "SLC1", 4) != 0)
            fail("malformed header in '" + path.string() + "' (expected SLC1 magic)");
        const std::size_t n_az = get_u32(bytes.data() + 4);
        const std::size_t n_rg = get_u32(bytes.data() + 8);
        if (bytes.size() - 12 != n_az * n_rg * 8)
            fail("payload size mismatch in '" + path.string() + "'");
        if (!meta.contains("n_azimuth") || !meta.contains("n_range") ||
            meta["n_azimuth"].get<std::size_t>() != n_az || meta["n_range"].get<std::size_t>() != n_rg)
            fail("metadata/dimension mismatch in '" + path.string() + "'");

        std::vector<cfloat> samples(n_az * n_rg);
        const std::uint8_t *p = bytes.data() + 12;
        for (std::size_t i = 0; i < samples.size(); ++i, p += 8)
        {
            samples[i] = cfloat(get_f32(p), get_f32(p + 4));
            if (!std::isfinite(samples[i].real()) || !std::isfinite(samples[i].imag()))
                fail("non-finite sample at index " + std::to_string(i));
        }
        return ComplexImage(n_az, n_rg, std::move(samples));
    }

    void write_slc(const SlcImage &img, const std::filesystem::path &path, const json &extra)
    {
        img.validate();
        json meta = sensor_to_json(img.params);
        meta["azimuth_spacing_m"] = img.azimuth_spacing_m;
        meta["range_spacing_m"] = img.range_spacing_m;
        meta["first_azimuth_m"] = img.first_azimuth_m;
        meta["first_range_m"] = img.first_range_m;
        meta["product"] = "slc";
        meta.update(extra);
        write_complex_product(img.image, meta, path);
    }

    SlcImage read_slc(const std::filesystem::path &path)
    {
        json meta;
        SlcImage img;
        img.image = read_complex_product(path, meta);
        img.params = sensor_from_json(meta);
        img.azimuth_spacing_m = get_number(meta, "azimuth_spacing_m");
        img.range_spacing_m = get_number(meta, "range_spacing_m");
        img.first_azimuth_m = meta.value("first_azimuth_m", 0.0);
        img.first_range_m = meta.value("first_range_m", 0.0);
        img.validate();
        return img;
    }

    std::size_t Tensor::element_count(const std::vector<std::size_t> &shape)
    {
        std::size_t n = 1;
        for (auto s : shape)
            n *= s;
        return shape.empty() ? 0 : n;
    }

    void write_tensor(const Tensor &t, const std::filesystem::path &path)
    {
        if (t.data.size() != Tensor::element_count(t.shape))
            fail("tensor data does not match its shape");
        std::vector<std::uint8_t> bytes;
        bytes.reserve(t.data.size() * 4);
        for (float f : t.data)
        {
            if (!std::isfinite(f))
                fail("non-finite tensor value");
            put_f32(bytes, f);
        }
        json m = t.meta;
        m["shape"] = t.shape;
        m["dtype"] = "float32";
        m["byte_order"] = "little";
        write_bytes(path, bytes);
        write_text(sidecar_path(path), m.dump(2) + "\n");
    }

    Tensor read_tensor(const std::filesystem::path &path)
    {
        const auto bytes = read_file_bytes(path);
        Tensor t;
        t.meta = read_json(sidecar_path(path));
        if (!t.meta.contains("shape") || !t.meta["shape"].is_array())
            fail("tensor metadata missing 'shape'");
        t.shape = t.meta["shape"].get<std::vector<std::size_t>>();
        if (t.meta.value("dtype", "") != "float32")
            fail("unsupported tensor dtype");
        const std::size_t n = Tensor::element_count(t.shape);
        if (bytes.size() != n * 4)
            fail("payload size mismatch in '" + path.string() + "'");
        t.data.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            t.data[i] = get_f32(bytes.data() + 4 * i);
        return t;
    }

    void write_png_rgb(const std::filesystem::path &path, std::size_t width, std::size_t height,
                       const std::vector<std::uint8_t> &rgb)
    {
        if (rgb.size() != width * height * 3)
            fail("RGB buffer does not match width x height");
        png_image image;
        std::memset(&image, 0, sizeof(image));
        image.version = PNG_IMAGE_VERSION;
        image.width = static_cast<png_uint_32>(width);
        image.height = static_cast<png_uint_32>(height);
        image.format = PNG_FORMAT_RGB;
        if (!png_image_write_to_file(&image, path.c_str(), 0, rgb.data(), 0, nullptr))
            io_fail("PNG write failed for '" + path.string() + "': " + image.message);
    }

    std::string sha256_hex(const std::vector<std::uint8_t> &bytes)
    {
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr))
            throw Error(ErrorKind::io, "SHA-256 failed");
        std::ostringstream os;
        for (unsigned i = 0; i < len; ++i)
            os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
        return os.str();
    }

    std::string sha256_file(const std::filesystem::path &path) { return sha256_hex(read_file_bytes(path)); }
}
