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

/*
 * C interface to the sarphys library.
 *
 * Every object is an opaque handle released by its *_free function. Calls
 * return a sar_status; on failure sar_last_error() holds a message for the
 * calling thread until its next failing call. Output handles are written
 * only on success.
 *
 * Tensors are row-major float32 arrays. Shapes used by this interface:
 *   spectrograms   [n_patches, n_rbands, n_abands]
 *   pauli powers   [3, n_azimuth, n_range]   (|HH-VV|^2, 2|HV|^2, |HH+VV|^2)
 *   rgb composite  [3, n_azimuth, n_range]   values in [0, 1]
 *   coherency      [n_azimuth, n_range, 3, 3, 2]  (re, im)
 *   h/a/alpha      [4, n_azimuth, n_range]   (H, A, alpha deg, zone)
 *   orientation    [n_azimuth, n_range]      degrees
 *   centroids      [k, dim]
 */

#ifndef SARPHYS_H
#define SARPHYS_H

#include <stddef.h>
#include <stdint.h>

#if defined(SARPHYS_BUILDING_LIBRARY)
#define SARPHYS_API __attribute__((visibility("default")))
#else
#define SARPHYS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sar_status
{
    SAR_OK = 0,
    SAR_E_INVALID = 2,  /* malformed input or violated invariant */
    SAR_E_PHYSICS = 3,  /* physical bound violated (range migration) */
    SAR_E_IO = 4,       /* file missing or unreadable/unwritable */
    SAR_E_INTERNAL = 5
} sar_status;

typedef enum sar_window
{
    SAR_WINDOW_RECT = 0,
    SAR_WINDOW_HANN = 1,
    SAR_WINDOW_HAMMING = 2
} sar_window;

typedef enum sar_channel
{
    SAR_CHANNEL_NONE = -1, /* scalar reflectivity, no scattering matrix */
    SAR_CHANNEL_HH = 0,
    SAR_CHANNEL_HV = 1,
    SAR_CHANNEL_VH = 2,
    SAR_CHANNEL_VV = 3
} sar_channel;

typedef enum sar_tiling
{
    SAR_TILING_PARTITION = 0,
    SAR_TILING_OVERLAP_HANN = 1
} sar_tiling;

typedef struct sar_scene sar_scene;
typedef struct sar_raw sar_raw;
typedef struct sar_slc sar_slc;
typedef struct sar_sublooks sar_sublooks;
typedef struct sar_tensor sar_tensor;
typedef struct sar_cluster sar_cluster;

typedef struct sar_focus_report
{
    size_t peak_azimuth, peak_range;
    double peak_magnitude;
    double range_irw_m, azimuth_irw_m;
    double pslr_db, range_pslr_db, azimuth_pslr_db;
} sar_focus_report;

typedef struct sar_geometry
{
    size_t n_azimuth, n_range;
    double first_azimuth_m, first_range_m;
    double azimuth_spacing_m, range_spacing_m;
} sar_geometry;

SARPHYS_API const char *sar_last_error(void);
SARPHYS_API const char *sar_version(void);

/* 0 selects the hardware concurrency. Results never depend on it. */
SARPHYS_API sar_status sar_set_threads(unsigned n);

/* Scenes (JSON text or file). */
SARPHYS_API sar_status sar_scene_load(const char *path, sar_scene **out);
SARPHYS_API sar_status sar_scene_parse(const char *json_text, sar_scene **out);
SARPHYS_API void sar_scene_free(sar_scene *scene);
SARPHYS_API sar_status sar_scene_set_seed(sar_scene *scene, uint64_t seed);
/* Largest range migration over all targets, in range cells. */
SARPHYS_API sar_status sar_scene_migration(const sar_scene *scene, double *cells);

/* Raw echoes of one channel, plus the scene noise (seeded from the scene
 * seed and the channel). */
SARPHYS_API sar_status sar_simulate(const sar_scene *scene, sar_channel channel, sar_raw **out);
SARPHYS_API sar_status sar_raw_read(const char *path, sar_raw **out);
/* extra_json (may be NULL) is merged into the sidecar. */
SARPHYS_API sar_status sar_raw_write(const sar_raw *raw, const char *path, const char *extra_json);
SARPHYS_API void sar_raw_free(sar_raw *raw);
SARPHYS_API sar_status sar_raw_geometry(const sar_raw *raw, sar_geometry *out);

SARPHYS_API sar_status sar_focus(const sar_raw *raw, sar_window window, sar_slc **out);

SARPHYS_API sar_status sar_slc_read(const char *path, sar_slc **out);
SARPHYS_API sar_status sar_slc_write(const sar_slc *slc, const char *path, const char *extra_json);
SARPHYS_API void sar_slc_free(sar_slc *slc);
SARPHYS_API sar_status sar_slc_geometry(const sar_slc *slc, sar_geometry *out);
/* Copies n_azimuth * n_range interleaved (re, im) pairs into out. */
SARPHYS_API sar_status sar_slc_samples(const sar_slc *slc, float *out, size_t capacity_floats);
SARPHYS_API sar_status sar_slc_peak(const sar_slc *slc, size_t *azimuth, size_t *range);
/* Measures the response nearest (azimuth, range). */
SARPHYS_API sar_status sar_slc_measure(const sar_slc *slc, size_t azimuth, size_t range, sar_focus_report *out);

/* Sub-aperture looks. Pass centroid_hz = NAN to estimate it. */
SARPHYS_API sar_status sar_doppler_centroid(const sar_slc *slc, double *hz);
SARPHYS_API sar_status sar_sublook(const sar_slc *slc, size_t n_looks, double centroid_hz, sar_sublooks **out);
SARPHYS_API void sar_sublooks_free(sar_sublooks *stack);
SARPHYS_API size_t sar_sublooks_count(const sar_sublooks *stack);
SARPHYS_API double sar_sublooks_centroid(const sar_sublooks *stack);
/* Writes count + 1 ascending band edges. */
SARPHYS_API sar_status sar_sublooks_edges(const sar_sublooks *stack, double *edges, size_t capacity);
SARPHYS_API sar_status sar_sublooks_look(const sar_sublooks *stack, size_t index, sar_slc **out);
/* Requires exactly three looks. */
SARPHYS_API sar_status sar_sublooks_rgb(const sar_sublooks *stack, sar_tensor **out);

/* Spectrograms of patches centered on (azimuth, range) pairs in centers. */
SARPHYS_API sar_status sar_spectrogram(const sar_slc *slc, const size_t *centers, size_t n_patches,
                                       size_t patch_size, size_t n_rbands, size_t n_abands, sar_tiling tiling,
                                       sar_tensor **out);

/* Polarimetry on co-registered channels. */
SARPHYS_API sar_status sar_pauli(const sar_slc *hh, const sar_slc *hv, const sar_slc *vh, const sar_slc *vv,
                                 sar_tensor **powers, sar_tensor **rgb);
SARPHYS_API sar_status sar_coherency(const sar_slc *hh, const sar_slc *hv, const sar_slc *vh, const sar_slc *vv,
                                     size_t window_azimuth, size_t window_range, sar_tensor **out);
SARPHYS_API sar_status sar_halpha(const sar_tensor *coherency, sar_tensor **out);
SARPHYS_API sar_status sar_orientation(const sar_tensor *coherency, sar_tensor **out);
SARPHYS_API sar_status sar_psdfix(const sar_tensor *coherency, sar_tensor **out);

/* k-means over spectrogram descriptors. */
SARPHYS_API sar_status sar_cluster_spectrograms(const sar_tensor *spectrograms, size_t k, uint64_t seed,
                                                size_t max_iter, sar_cluster **out);
SARPHYS_API void sar_cluster_free(sar_cluster *model);
SARPHYS_API size_t sar_cluster_size(const sar_cluster *model);
SARPHYS_API sar_status sar_cluster_assignments(const sar_cluster *model, size_t *out, size_t capacity);
SARPHYS_API sar_status sar_cluster_centroids(const sar_cluster *model, sar_tensor **out);
SARPHYS_API double sar_cluster_inertia(const sar_cluster *model);
SARPHYS_API size_t sar_cluster_iterations(const sar_cluster *model);
SARPHYS_API sar_status sar_adjusted_rand_index(const size_t *a, const size_t *b, size_t n, double *out);

/* Tensors. */
SARPHYS_API sar_status sar_tensor_create(const size_t *shape, size_t rank, const float *data, sar_tensor **out);
SARPHYS_API sar_status sar_tensor_read(const char *path, sar_tensor **out);
SARPHYS_API sar_status sar_tensor_write(const sar_tensor *t, const char *path, const char *extra_json);
SARPHYS_API void sar_tensor_free(sar_tensor *t);
SARPHYS_API size_t sar_tensor_rank(const sar_tensor *t);
SARPHYS_API size_t sar_tensor_dim(const sar_tensor *t, size_t axis);
SARPHYS_API size_t sar_tensor_size(const sar_tensor *t);
SARPHYS_API const float *sar_tensor_data(const sar_tensor *t);
/* Sidecar metadata as JSON text; valid until the tensor is freed. */
SARPHYS_API const char *sar_tensor_meta(const sar_tensor *t);

/* Writes a [3, h, w] tensor in [0, 1] as an 8-bit RGB PNG. */
SARPHYS_API sar_status sar_png_write(const sar_tensor *rgb, const char *path);

/* Lowercase hex digest; out needs 65 bytes. */
SARPHYS_API sar_status sar_sha256_file(const char *path, char *out);

#ifdef __cplusplus
}
#endif

#endif
