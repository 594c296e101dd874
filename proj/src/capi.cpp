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

#include "sarphys/sarphys.h"

#include "sarphys/echo_sim.hpp"
#include "sarphys/focus.hpp"
#include "sarphys/io.hpp"
#include "sarphys/parallel.hpp"
#include "sarphys/physclust.hpp"
#include "sarphys/polarimetry.hpp"
#include "sarphys/scene.hpp"
#include "sarphys/sublook.hpp"
#include "sarphys/timefreq.hpp"

#include <cmath>
#include <cstring>
#include <new>
#include <optional>
#include <string>

using namespace sarphys;

struct sar_scene
{
    scene::SceneSpec spec;
};

struct sar_raw
{
    echo::RawData raw;
};

struct sar_slc
{
    SlcImage slc;
};

struct sar_sublooks
{
    sublook::SubLookStack stack;
};

struct sar_tensor
{
    Tensor t;
    mutable std::string meta_text;
};

struct sar_cluster
{
    clust::ClusterModel model;
};

namespace
{
    thread_local std::string last_error;

    sar_status record(sar_status s, const char *what)
    {
        last_error = what;
        return s;
    }

    template <class F>
    sar_status guarded(F &&body) noexcept
    {
        try
        {
            body();
            return SAR_OK;
        }
        catch (const Error &e)
        {
            switch (e.kind())
            {
            case ErrorKind::physics_bound:
                return record(SAR_E_PHYSICS, e.what());
            case ErrorKind::io:
                return record(SAR_E_IO, e.what());
            default:
                return record(SAR_E_INVALID, e.what());
            }
        }
        catch (const json::exception &e)
        {
            return record(SAR_E_INVALID, e.what());
        }
        catch (const std::bad_alloc &)
        {
            return record(SAR_E_INTERNAL, "out of memory");
        }
        catch (const std::exception &e)
        {
            return record(SAR_E_INTERNAL, e.what());
        }
        catch (...)
        {
            return record(SAR_E_INTERNAL, "unknown error");
        }
    }

    template <class T>
    const T &need(const T *p, const char *what)
    {
        if (!p)
            fail(std::string("null ") + what);
        return *p;
    }

    std::string text(const char *p, const char *what)
    {
        if (!p)
            fail(std::string("null ") + what);
        return p;
    }

    template <class T>
    T &deref(T *p)
    {
        if (!p)
            fail("null output pointer");
        return *p;
    }

    template <class T>
    T *&need_out(T **p)
    {
        if (!p)
            fail("null output pointer");
        return *p;
    }

    json parse_extra(const char *extra)
    {
        if (!extra || !*extra)
            return json::object();
        json j = json::parse(extra);
        if (!j.is_object())
            fail("extra metadata must be a JSON object");
        return j;
    }

    WindowKind to_window(sar_window w)
    {
        switch (w)
        {
        case SAR_WINDOW_RECT:
            return WindowKind::rect;
        case SAR_WINDOW_HANN:
            return WindowKind::hann;
        case SAR_WINDOW_HAMMING:
            return WindowKind::hamming;
        }
        fail("unknown window");
    }

    sar_geometry geometry_of(const ComplexImage &img, double first_az, double first_rg, double daz, double drg)
    {
        return {img.n_azimuth(), img.n_range(), first_az, first_rg, daz, drg};
    }

    QuadPolImage quad(const sar_slc *hh, const sar_slc *hv, const sar_slc *vh, const sar_slc *vv)
    {
        QuadPolImage qp;
        qp.hh = need(hh, "HH image").slc;
        qp.hv = need(hv, "HV image").slc;
        qp.vh = need(vh, "VH image").slc;
        qp.vv = need(vv, "VV image").slc;
        return qp;
    }

    sar_tensor *make_tensor(Tensor t)
    {
        auto *out = new sar_tensor;
        out->t = std::move(t);
        return out;
    }

    polar::CoherencyImage coherency_from(const Tensor &t)
    {
        if (t.shape.size() != 5 || t.shape[2] != 3 || t.shape[3] != 3 || t.shape[4] != 2)
            fail("coherency tensor must have shape [rows, cols, 3, 3, 2]");
        polar::CoherencyImage c;
        c.rows = t.shape[0];
        c.cols = t.shape[1];
        c.window_azimuth = t.meta.value("window_azimuth", std::size_t{1});
        c.window_range = t.meta.value("window_range", std::size_t{1});
        c.t.resize(c.rows * c.cols);
        for (std::size_t p = 0; p < c.t.size(); ++p)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                {
                    const std::size_t o = ((p * 3 + i) * 3 + j) * 2;
                    if (!std::isfinite(t.data[o]) || !std::isfinite(t.data[o + 1]))
                        fail("non-finite coherency value at pixel " + std::to_string(p));
                    c.t[p](i, j) = cdouble(t.data[o], t.data[o + 1]);
                }
        for (std::size_t p = 0; p < c.t.size(); ++p)
            if (!polar::is_hermitian(c.t[p], 1e-6))
                fail("coherency matrix at pixel " + std::to_string(p) + " is not Hermitian");
        return c;
    }

    Tensor coherency_to(const polar::CoherencyImage &c)
    {
        Tensor t({c.rows, c.cols, 3, 3, 2});
        for (std::size_t p = 0; p < c.t.size(); ++p)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                {
                    const std::size_t o = ((p * 3 + i) * 3 + j) * 2;
                    t.data[o] = static_cast<float>(c.t[p](i, j).real());
                    t.data[o + 1] = static_cast<float>(c.t[p](i, j).imag());
                }
        t.meta["product"] = "coherency";
        t.meta["window_azimuth"] = c.window_azimuth;
        t.meta["window_range"] = c.window_range;
        return t;
    }

    Tensor planes_to(const polar::PlaneStack &s, const char *product)
    {
        Tensor t({s.planes.size(), s.rows, s.cols});
        std::size_t o = 0;
        for (const auto &plane : s.planes)
            for (double v : plane)
                t.data[o++] = static_cast<float>(v);
        t.meta["product"] = product;
        return t;
    }

    Tensor rgb_to(const RgbImage &img)
    {
        Tensor t({3, img.rows, img.cols});
        for (std::size_t c = 0; c < 3; ++c)
            std::copy(img.channel[c].begin(), img.channel[c].end(), t.data.begin() + c * img.rows * img.cols);
        t.meta["product"] = "rgb";
        return t;
    }
}

extern "C" {

const char *sar_last_error(void) { return last_error.c_str(); }

const char *sar_version(void) { return "0.1.0"; }

sar_status sar_set_threads(unsigned n)
{
    return guarded([&] { set_thread_count(n); });
}

sar_status sar_scene_load(const char *path, sar_scene **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        auto s = scene::load_scene(text(path, "path"));
        o = new sar_scene{std::move(s)};
    });
}

sar_status sar_scene_parse(const char *json_text, sar_scene **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        auto s = scene::parse_scene(json::parse(text(json_text, "scene text")));
        o = new sar_scene{std::move(s)};
    });
}

void sar_scene_free(sar_scene *scene) { delete scene; }

sar_status sar_scene_set_seed(sar_scene *scene, uint64_t seed)
{
    return guarded([&] {
        if (!scene)
            fail("null scene");
        scene->spec.seed = seed;
    });
}

sar_status sar_scene_migration(const sar_scene *scene, double *cells)
{
    return guarded([&] {
        const auto &s = need(scene, "scene").spec;
        const auto targets = s.targets_for();
        deref(cells) = echo::migration_check(targets, s.sensor, s.extent);
    });
}

sar_status sar_simulate(const sar_scene *scene, sar_channel channel, sar_raw **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        const auto &s = need(scene, "scene").spec;
        std::optional<scene::Channel> ch;
        if (channel != SAR_CHANNEL_NONE)
        {
            if (channel < SAR_CHANNEL_HH || channel > SAR_CHANNEL_VV)
                fail("unknown polarimetric channel");
            ch = static_cast<scene::Channel>(channel);
        }
        const auto targets = s.targets_for(ch);
        auto raw = echo::simulate_raw(targets, s.sensor, s.extent);
        if (s.noise_sigma > 0.0)
        {
            // Independent noise per channel, reproducible from the scene seed.
            const std::uint64_t salt = 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(channel + 1);
            echo::add_noise(raw, s.noise_sigma, s.seed + salt);
        }
        o = new sar_raw{std::move(raw)};
    });
}

sar_status sar_raw_read(const char *path, sar_raw **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        auto raw = echo::read_raw(text(path, "path"));
        o = new sar_raw{std::move(raw)};
    });
}

sar_status sar_raw_write(const sar_raw *raw, const char *path, const char *extra_json)
{
    return guarded([&] { echo::write_raw(need(raw, "raw").raw, text(path, "path"), parse_extra(extra_json)); });
}

void sar_raw_free(sar_raw *raw) { delete raw; }

sar_status sar_raw_geometry(const sar_raw *raw, sar_geometry *out)
{
    return guarded([&] {
        const auto &r = need(raw, "raw").raw;
        deref(out) = geometry_of(r.data, r.first_azimuth_m, r.first_range_m, r.params.azimuth_spacing(),
                                       r.params.range_spacing());
    });
}

sar_status sar_focus(const sar_raw *raw, sar_window window, sar_slc **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        auto slc = focus::focus(need(raw, "raw").raw, to_window(window));
        o = new sar_slc{std::move(slc)};
    });
}

sar_status sar_slc_read(const char *path, sar_slc **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        auto slc = read_slc(text(path, "path"));
        o = new sar_slc{std::move(slc)};
    });
}

sar_status sar_slc_write(const sar_slc *slc, const char *path, const char *extra_json)
{
    return guarded([&] { write_slc(need(slc, "image").slc, text(path, "path"), parse_extra(extra_json)); });
}

void sar_slc_free(sar_slc *slc) { delete slc; }

sar_status sar_slc_geometry(const sar_slc *slc, sar_geometry *out)
{
    return guarded([&] {
        const auto &s = need(slc, "image").slc;
        deref(out) =
            geometry_of(s.image, s.first_azimuth_m, s.first_range_m, s.azimuth_spacing_m, s.range_spacing_m);
    });
}

sar_status sar_slc_samples(const sar_slc *slc, float *out, size_t capacity_floats)
{
    return guarded([&] {
        const auto samples = need(slc, "image").slc.image.samples();
        if (!out || capacity_floats < 2 * samples.size())
            fail("sample buffer too small");
        std::memcpy(out, samples.data(), samples.size() * sizeof(cfloat));
    });
}

sar_status sar_slc_peak(const sar_slc *slc, size_t *azimuth, size_t *range)
{
    return guarded([&] {
        const auto [a, r] = focus::global_peak(need(slc, "image").slc.image);
        deref(azimuth) = a;
        deref(range) = r;
    });
}

sar_status sar_slc_measure(const sar_slc *slc, size_t azimuth, size_t range, sar_focus_report *out)
{
    return guarded([&] {
        const auto r = focus::measure_response(need(slc, "image").slc, azimuth, range);
        deref(out) = {r.peak_azimuth,  r.peak_range, r.peak_magnitude,   r.range_irw_m,
                            r.azimuth_irw_m, r.pslr_db,    r.range_pslr_db, r.azimuth_pslr_db};
    });
}

sar_status sar_doppler_centroid(const sar_slc *slc, double *hz)
{
    return guarded([&] { deref(hz) = sublook::estimate_doppler_centroid(need(slc, "image").slc); });
}

sar_status sar_sublook(const sar_slc *slc, size_t n_looks, double centroid_hz, sar_sublooks **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        const auto &s = need(slc, "image").slc;
        const double fc = std::isnan(centroid_hz) ? sublook::estimate_doppler_centroid(s) : centroid_hz;
        auto stack = sublook::sublook_decompose(s, n_looks, fc);
        o = new sar_sublooks{std::move(stack)};
    });
}

void sar_sublooks_free(sar_sublooks *stack) { delete stack; }

size_t sar_sublooks_count(const sar_sublooks *stack) { return stack ? stack->stack.size() : 0; }

double sar_sublooks_centroid(const sar_sublooks *stack) { return stack ? stack->stack.centroid_hz : NAN; }

sar_status sar_sublooks_edges(const sar_sublooks *stack, double *edges, size_t capacity)
{
    return guarded([&] {
        const auto &e = need(stack, "look stack").stack.band_edges_hz;
        if (!edges || capacity < e.size())
            fail("edge buffer too small");
        std::copy(e.begin(), e.end(), edges);
    });
}

sar_status sar_sublooks_look(const sar_sublooks *stack, size_t index, sar_slc **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        const auto &s = need(stack, "look stack").stack;
        if (index >= s.size())
            fail("look index out of range");
        o = new sar_slc{s.look_slc(index)};
    });
}

sar_status sar_sublooks_rgb(const sar_sublooks *stack, sar_tensor **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        o = make_tensor(rgb_to(sublook::sublook_rgb(need(stack, "look stack").stack)));
    });
}

sar_status sar_spectrogram(const sar_slc *slc, const size_t *centers, size_t n_patches, size_t patch_size,
                           size_t n_rbands, size_t n_abands, sar_tiling tiling, sar_tensor **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        const auto &s = need(slc, "image").slc;
        if (n_patches == 0 || !centers)
            fail("at least one patch center is required");
        if (tiling != SAR_TILING_PARTITION && tiling != SAR_TILING_OVERLAP_HANN)
            fail("unknown band tiling");
        const auto mode = tiling == SAR_TILING_PARTITION ? timefreq::BandTiling::partition
                                                         : timefreq::BandTiling::overlap_hann;
        Tensor t({n_patches, n_rbands, n_abands});
        json origins = json::array(), descriptors = json::array();
        json rcenters, acenters;
        for (std::size_t p = 0; p < n_patches; ++p)
        {
            if (centers[2 * p] >= s.n_azimuth() || centers[2 * p + 1] >= s.n_range())
                fail("patch center " + std::to_string(p) + " outside the image");
            const auto origin = timefreq::centered_patch_origin(s, centers[2 * p], centers[2 * p + 1], patch_size);
            const auto spec = timefreq::spectrogram(s, origin, {patch_size, patch_size}, n_rbands, n_abands, mode);
            for (std::size_t i = 0; i < spec.energies.size(); ++i)
                t.data[p * n_rbands * n_abands + i] = static_cast<float>(spec.energies[i]);
            origins.push_back({origin.first, origin.second});
            const double total = spec.total();
            if (total > 0.0)
            {
                const auto d = timefreq::behavior_descriptor(spec);
                descriptors.push_back({d.range_flatness, d.azimuth_flatness});
            }
            else
                descriptors.push_back(nullptr);
            rcenters = spec.range_band_centers_hz;
            acenters = spec.azimuth_band_centers_hz;
        }
        t.meta["product"] = "spectrogram";
        t.meta["tiling"] = tiling == SAR_TILING_PARTITION ? "partition" : "overlap_hann";
        t.meta["patch_size"] = patch_size;
        t.meta["patch_origins"] = origins;
        t.meta["range_band_centers_hz"] = rcenters;
        t.meta["azimuth_band_centers_hz"] = acenters;
        t.meta["descriptors"] = descriptors;
        o = make_tensor(std::move(t));
    });
}

sar_status sar_pauli(const sar_slc *hh, const sar_slc *hv, const sar_slc *vh, const sar_slc *vv,
                     sar_tensor **powers, sar_tensor **rgb)
{
    return guarded([&] {
        auto &p = need_out(powers);
        const auto composite = polar::pauli_rgb(quad(hh, hv, vh, vv));
        auto pt = std::make_unique<sar_tensor>();
        pt->t = planes_to(composite.powers, "pauli");
        if (rgb)
            *rgb = make_tensor(rgb_to(composite.display));
        p = pt.release();
    });
}

sar_status sar_coherency(const sar_slc *hh, const sar_slc *hv, const sar_slc *vh, const sar_slc *vv,
                         size_t window_azimuth, size_t window_range, sar_tensor **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        o = make_tensor(coherency_to(polar::coherency(quad(hh, hv, vh, vv), window_azimuth, window_range)));
    });
}

sar_status sar_halpha(const sar_tensor *coherency, sar_tensor **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        const auto c = coherency_from(need(coherency, "coherency").t);
        const auto ha = polar::h_alpha(c);
        polar::PlaneStack s{ha.rows, ha.cols, {ha.entropy, ha.anisotropy, ha.alpha_deg, {}}};
        s.planes[3].assign(ha.zone.begin(), ha.zone.end());
        Tensor t = planes_to(s, "h_a_alpha");
        t.meta["planes"] = {"entropy", "anisotropy", "alpha_deg", "zone"};
        o = make_tensor(std::move(t));
    });
}

sar_status sar_orientation(const sar_tensor *coherency, sar_tensor **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        const auto c = coherency_from(need(coherency, "coherency").t);
        const auto poa = polar::orientation_angle(c);
        Tensor t({c.rows, c.cols});
        std::transform(poa.begin(), poa.end(), t.data.begin(), [](double v) { return static_cast<float>(v); });
        t.meta["product"] = "orientation_angle_deg";
        o = make_tensor(std::move(t));
    });
}

sar_status sar_psdfix(const sar_tensor *coherency, sar_tensor **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        const auto &in = need(coherency, "coherency").t;
        Tensor t = coherency_to(polar::psd_project(coherency_from(in)));
        // Matrices already PSD pass through; keep their stored bits too.
        for (std::size_t p = 0; p < in.shape[0] * in.shape[1]; ++p)
        {
            const std::size_t o18 = p * 18;
            polar::Matrix3c m;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    m(i, j) = cdouble(in.data[o18 + (i * 3 + j) * 2], in.data[o18 + (i * 3 + j) * 2 + 1]);
            if (polar::psd_project(m) == m)
                std::copy(in.data.begin() + o18, in.data.begin() + o18 + 18, t.data.begin() + o18);
        }
        o = make_tensor(std::move(t));
    });
}

sar_status sar_cluster_spectrograms(const sar_tensor *spectrograms, size_t k, uint64_t seed, size_t max_iter,
                                    sar_cluster **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        const auto &t = need(spectrograms, "spectrogram tensor").t;
        if (t.shape.size() != 3)
            fail("spectrogram tensor must have shape [n, n_rbands, n_abands]");
        std::vector<timefreq::Spectrogram> specs(t.shape[0]);
        const std::size_t cells = t.shape[1] * t.shape[2];
        for (std::size_t p = 0; p < specs.size(); ++p)
        {
            specs[p].n_rbands = t.shape[1];
            specs[p].n_abands = t.shape[2];
            specs[p].energies.assign(t.data.begin() + p * cells, t.data.begin() + (p + 1) * cells);
        }
        auto model = clust::kmeans(clust::build_features(specs), k, seed, max_iter);
        o = new sar_cluster{std::move(model)};
    });
}

void sar_cluster_free(sar_cluster *model) { delete model; }

size_t sar_cluster_size(const sar_cluster *model) { return model ? model->model.assignments.size() : 0; }

sar_status sar_cluster_assignments(const sar_cluster *model, size_t *out, size_t capacity)
{
    return guarded([&] {
        const auto &a = need(model, "cluster model").model.assignments;
        if (!out || capacity < a.size())
            fail("assignment buffer too small");
        std::copy(a.begin(), a.end(), out);
    });
}

sar_status sar_cluster_centroids(const sar_cluster *model, sar_tensor **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        const auto &m = need(model, "cluster model").model;
        Tensor t({m.k, m.dim});
        std::transform(m.centroids.begin(), m.centroids.end(), t.data.begin(),
                       [](double v) { return static_cast<float>(v); });
        t.meta["product"] = "centroids";
        t.meta["seed"] = m.seed;
        t.meta["iterations"] = m.iterations;
        t.meta["inertia"] = m.inertia;
        o = make_tensor(std::move(t));
    });
}

double sar_cluster_inertia(const sar_cluster *model) { return model ? model->model.inertia : NAN; }

size_t sar_cluster_iterations(const sar_cluster *model) { return model ? model->model.iterations : 0; }

sar_status sar_adjusted_rand_index(const size_t *a, const size_t *b, size_t n, double *out)
{
    return guarded([&] {
        if (!a || !b)
            fail("null label array");
        deref(out) = clust::adjusted_rand_index({a, n}, {b, n});
    });
}

sar_status sar_tensor_create(const size_t *shape, size_t rank, const float *data, sar_tensor **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        if (rank == 0 || !shape)
            fail("tensor rank must be >= 1");
        Tensor t(std::vector<std::size_t>(shape, shape + rank));
        if (data)
            std::copy(data, data + t.data.size(), t.data.begin());
        o = make_tensor(std::move(t));
    });
}

sar_status sar_tensor_read(const char *path, sar_tensor **out)
{
    return guarded([&] {
        auto &o = need_out(out);
        o = make_tensor(read_tensor(text(path, "path")));
    });
}

sar_status sar_tensor_write(const sar_tensor *t, const char *path, const char *extra_json)
{
    return guarded([&] {
        Tensor copy = need(t, "tensor").t;
        copy.meta.update(parse_extra(extra_json));
        write_tensor(copy, text(path, "path"));
    });
}

void sar_tensor_free(sar_tensor *t) { delete t; }

size_t sar_tensor_rank(const sar_tensor *t) { return t ? t->t.shape.size() : 0; }

size_t sar_tensor_dim(const sar_tensor *t, size_t axis)
{
    return t && axis < t->t.shape.size() ? t->t.shape[axis] : 0;
}

size_t sar_tensor_size(const sar_tensor *t) { return t ? t->t.data.size() : 0; }

const float *sar_tensor_data(const sar_tensor *t) { return t ? t->t.data.data() : nullptr; }

const char *sar_tensor_meta(const sar_tensor *t)
{
    if (!t)
        return nullptr;
    t->meta_text = t->t.meta.dump();
    return t->meta_text.c_str();
}

sar_status sar_png_write(const sar_tensor *rgb, const char *path)
{
    return guarded([&] {
        const auto &t = need(rgb, "rgb tensor").t;
        if (t.shape.size() != 3 || t.shape[0] != 3)
            fail("rgb tensor must have shape [3, rows, cols]");
        RgbImage img(t.shape[1], t.shape[2]);
        const std::size_t n = img.rows * img.cols;
        for (std::size_t c = 0; c < 3; ++c)
            std::copy(t.data.begin() + c * n, t.data.begin() + (c + 1) * n, img.channel[c].begin());
        const auto bytes = img.to_rgb8();
        write_png_rgb(text(path, "path"), img.cols, img.rows, {bytes.begin(), bytes.end()});
    });
}

sar_status sar_sha256_file(const char *path, char *out)
{
    return guarded([&] {
        const std::string h = sha256_file(text(path, "path"));
        if (!out)
            fail("null digest buffer");
        std::memcpy(out, h.c_str(), h.size() + 1);
    });
}

} // extern "C"
