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

// Command-line front end. Talks to the library only through sarphys.h.

#include "sarphys/sarphys.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace
{
    using json = nlohmann::json;

    enum Exit : int
    {
        exit_ok = 0,
        exit_internal = 1,
        exit_input = 2,
        exit_physics = 3,
        exit_usage = 64
    };

    struct Failure
    {
        int code;
        std::string message;
    };

    void check(sar_status s)
    {
        switch (s)
        {
        case SAR_OK:
            return;
        case SAR_E_PHYSICS:
            throw Failure{exit_physics, sar_last_error()};
        case SAR_E_INVALID:
        case SAR_E_IO:
            throw Failure{exit_input, sar_last_error()};
        default:
            throw Failure{exit_internal, sar_last_error()};
        }
    }

    template <class T, void (*Free)(T *)>
    struct Deleter
    {
        void operator()(T *p) const { Free(p); }
    };

    using Scene = std::unique_ptr<sar_scene, Deleter<sar_scene, sar_scene_free>>;
    using Raw = std::unique_ptr<sar_raw, Deleter<sar_raw, sar_raw_free>>;
    using Slc = std::unique_ptr<sar_slc, Deleter<sar_slc, sar_slc_free>>;
    using Looks = std::unique_ptr<sar_sublooks, Deleter<sar_sublooks, sar_sublooks_free>>;
    using Tensor = std::unique_ptr<sar_tensor, Deleter<sar_tensor, sar_tensor_free>>;
    using Model = std::unique_ptr<sar_cluster, Deleter<sar_cluster, sar_cluster_free>>;

    template <class H, class F, class... A>
    H make(F f, A... args)
    {
        typename H::pointer p = nullptr;
        check(f(args..., &p));
        return H(p);
    }

    // Shared by every subcommand: command line, input digests and logging.
    struct Run
    {
        std::vector<std::string> argv;
        json inputs = json::object();
        bool verbose = false;

        void input(const std::string &path)
        {
            char digest[65];
            check(sar_sha256_file(path.c_str(), digest));
            inputs[path] = digest;
        }

        std::string sidecar() const
        {
            std::string line;
            for (const auto &a : argv)
                line += (line.empty() ? "" : " ") + a;
            json p;
            p["tool"] = std::string("sarphys ") + sar_version();
            p["command_line"] = line;
            p["argv"] = argv;
            p["input_sha256"] = inputs;
            return json{{"provenance", p}}.dump();
        }

        void log(const std::string &msg) const
        {
            if (verbose)
                std::cerr << "sarphys: " << msg << "\n";
        }

        // Sidecar for artifacts that carry no metadata of their own.
        void annotate(const std::string &path, const std::string &format) const
        {
            char digest[65];
            check(sar_sha256_file(path.c_str(), digest));
            json j = json::parse(sidecar());
            j["format"] = format;
            j["sha256"] = digest;
            std::ofstream out(path + ".meta");
            out << j.dump(2) << "\n";
            if (!out)
                throw Failure{exit_input, "cannot write '" + path + ".meta'"};
        }
    };

    sar_window parse_window(const std::string &w)
    {
        if (w == "rect")
            return SAR_WINDOW_RECT;
        if (w == "hann")
            return SAR_WINDOW_HANN;
        return SAR_WINDOW_HAMMING;
    }

    sar_channel parse_channel(const std::string &c)
    {
        if (c == "hh")
            return SAR_CHANNEL_HH;
        if (c == "hv")
            return SAR_CHANNEL_HV;
        if (c == "vh")
            return SAR_CHANNEL_VH;
        if (c == "vv")
            return SAR_CHANNEL_VV;
        return SAR_CHANNEL_NONE;
    }

    // "A,B" with two non-negative integers.
    std::optional<std::pair<std::size_t, std::size_t>> parse_pair(const std::string &s)
    {
        const auto comma = s.find(',');
        if (comma == std::string::npos)
            return std::nullopt;
        try
        {
            std::size_t used_a = 0, used_b = 0;
            const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
            if (a.empty() || b.empty() || a[0] == '-' || b[0] == '-')
                return std::nullopt;
            const auto x = std::stoull(a, &used_a), y = std::stoull(b, &used_b);
            if (used_a != a.size() || used_b != b.size())
                return std::nullopt;
            return std::pair<std::size_t, std::size_t>{x, y};
        }
        catch (const std::exception &)
        {
            return std::nullopt;
        }
    }

    CLI::Validator pair_validator()
    {
        return CLI::Validator(
            [](std::string &s) { return parse_pair(s) ? std::string() : "expected two integers as A,B, got '" + s + "'"; },
            "A,B");
    }

    struct QuadInputs
    {
        std::string hh, hv, vh, vv, coherency;
        std::size_t window = 5;

        void add(CLI::App *cmd, bool allow_coherency)
        {
            auto *g = cmd->add_option_group("input");
            g->add_option("--hh", hh, "HH SLC");
            g->add_option("--hv", hv, "HV SLC");
            g->add_option("--vh", vh, "VH SLC");
            g->add_option("--vv", vv, "VV SLC");
            if (allow_coherency)
            {
                g->add_option("--coherency", coherency, "coherency tensor instead of SLC channels");
                cmd->add_option("--window", window, "odd boxcar size for the coherency estimate")
                    ->check(CLI::PositiveNumber);
            }
        }

        void require() const
        {
            const bool slcs = !hh.empty() && !hv.empty() && !vh.empty() && !vv.empty();
            const bool any_slc = !hh.empty() || !hv.empty() || !vh.empty() || !vv.empty();
            if (!coherency.empty() ? any_slc : !slcs)
                throw Failure{exit_usage, "give either all of --hh --hv --vh --vv, or --coherency"};
        }

        std::array<Slc, 4> load(Run &run) const
        {
            std::array<Slc, 4> out;
            const std::string *paths[] = {&hh, &hv, &vh, &vv};
            for (int i = 0; i < 4; ++i)
            {
                run.input(*paths[i]);
                out[i] = make<Slc>(sar_slc_read, paths[i]->c_str());
            }
            return out;
        }

        Tensor coherency_tensor(Run &run) const
        {
            if (!coherency.empty())
            {
                run.input(coherency);
                return make<Tensor>(sar_tensor_read, coherency.c_str());
            }
            const auto ch = load(run);
            return make<Tensor>(sar_coherency, ch[0].get(), ch[1].get(), ch[2].get(), ch[3].get(), window, window);
        }
    };

    void print_json(const json &j) { std::cout << j.dump(2) << std::endl; }
}

int main(int argc, char **argv)
{
    CLI::App app{"sarphys - explainable physical layers for SAR"};
    app.require_subcommand(1);
    app.fallthrough();

    Run run;
    run.argv.assign(argv, argv + argc);
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = all cores); never changes results");
    app.add_flag("--verbose", run.verbose, "log progress to stderr");

    // simulate
    std::string scene_path, out_path, pol = "none";
    std::optional<std::uint64_t> seed_override;
    auto *sim = app.add_subcommand("simulate", "simulate raw echoes of a scene file");
    sim->add_option("scene", scene_path, "scene description (JSON)")->required();
    sim->add_option("out", out_path, "raw echo output (SLC1 container)")->required();
    sim->add_option("--pol", pol, "polarimetric channel")->check(CLI::IsMember({"none", "hh", "hv", "vh", "vv"}));
    sim->add_option("--seed", seed_override, "override the scene noise seed");

    // focus
    std::string in_path, window = "rect", peak;
    bool report = false;
    auto *foc = app.add_subcommand("focus", "range and azimuth compression");
    foc->add_option("raw", in_path, "raw echo input")->required();
    foc->add_option("out", out_path, "SLC output")->required();
    foc->add_option("--window", window, "matched filter weighting")
        ->check(CLI::IsMember({"rect", "hann", "hamming"}));
    foc->add_flag("--report", report, "print impulse response metrics as JSON");
    foc->add_option("--peak", peak, "measure near AZ,RG instead of the brightest pixel")->check(pair_validator());

    // sublook
    std::size_t looks = 3;
    std::string centroid = "auto", rgb_path, prefix;
    auto *sub = app.add_subcommand("sublook", "sub-aperture decomposition of an SLC");
    sub->add_option("slc", in_path, "SLC input")->required();
    sub->add_option("--looks", looks, "number of looks")->check(CLI::Range(std::size_t{2}, std::size_t{1024}));
    sub->add_option("--centroid", centroid, "Doppler centroid in Hz, or auto");
    sub->add_option("--rgb", rgb_path, "write a 3-look colour composite (PNG)");
    sub->add_option("--out", prefix, "output prefix (default: input path)");

    // spectrogram
    std::vector<std::string> centers;
    std::size_t patch = 64;
    std::string bands = "3,3", tiling = "partition";
    auto *spec = app.add_subcommand("spectrogram", "range x Doppler sub-band energies of target patches");
    spec->add_option("slc", in_path, "SLC input")->required();
    spec->add_option("out", out_path, "tensor output [n, rbands, abands]")->required();
    spec->add_option("--at", centers, "patch center AZ,RG (repeatable; default brightest pixel)")
        ->check(pair_validator());
    spec->add_option("--size", patch, "patch size in pixels")->check(CLI::PositiveNumber);
    spec->add_option("--bands", bands, "range,azimuth band counts")->check(pair_validator());
    spec->add_option("--tiling", tiling, "band tiling")->check(CLI::IsMember({"partition", "overlap"}));

    // polarimetry
    QuadInputs quad;
    std::string png_path, coherency_out;
    auto *pau = app.add_subcommand("pauli", "Pauli channel powers and composite");
    quad.add(pau, false);
    pau->add_option("out", out_path, "tensor output [3, az, rg]")->required();
    pau->add_option("--png", png_path, "write the composite (PNG)");

    auto *hal = app.add_subcommand("halpha", "entropy, anisotropy, alpha and zone planes");
    quad.add(hal, true);
    hal->add_option("out", out_path, "tensor output [4, az, rg]")->required();
    hal->add_option("--coherency-out", coherency_out, "also write the coherency tensor");

    auto *poa = app.add_subcommand("poa", "polarization orientation angle");
    quad.add(poa, true);
    poa->add_option("out", out_path, "tensor output [az, rg], degrees")->required();

    auto *psd = app.add_subcommand("psdfix", "project coherency matrices onto the PSD cone");
    psd->add_option("coherency", in_path, "coherency tensor input")->required();
    psd->add_option("out", out_path, "coherency tensor output")->required();

    // cluster
    std::size_t k = 2, max_iter = 100;
    std::uint64_t seed = 0;
    std::string assign_path, centroid_path;
    auto *clu = app.add_subcommand("cluster", "k-means over spectrogram descriptors");
    clu->add_option("spectrograms", in_path, "spectrogram tensor input")->required();
    clu->add_option("--k", k, "number of clusters")->check(CLI::PositiveNumber);
    clu->add_option("--seed", seed, "seed for k-means++");
    clu->add_option("--max-iter", max_iter, "assignment steps")->check(CLI::PositiveNumber);
    clu->add_option("--assignments", assign_path, "cluster id per line (text)")->required();
    clu->add_option("--centroids", centroid_path, "centroid tensor [k, dim]")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        std::cerr << app.help();
        return exit_usage;
    }

    try
    {
        check(sar_set_threads(threads));

        if (*sim)
        {
            run.input(scene_path);
            auto scene = make<Scene>(sar_scene_load, scene_path.c_str());
            if (seed_override)
                check(sar_scene_set_seed(scene.get(), *seed_override));
            double migration = 0.0;
            check(sar_scene_migration(scene.get(), &migration));
            print_json({{"migration_cells", migration}});
            run.log("simulating " + pol);
            auto raw = make<Raw>(sar_simulate, scene.get(), parse_channel(pol));
            check(sar_raw_write(raw.get(), out_path.c_str(), run.sidecar().c_str()));
        }
        else if (*foc)
        {
            run.input(in_path);
            auto raw = make<Raw>(sar_raw_read, in_path.c_str());
            run.log("focusing with " + window + " weighting");
            auto slc = make<Slc>(sar_focus, raw.get(), parse_window(window));
            check(sar_slc_write(slc.get(), out_path.c_str(), run.sidecar().c_str()));
            if (report)
            {
                std::size_t az = 0, rg = 0;
                if (!peak.empty())
                    std::tie(az, rg) = *parse_pair(peak);
                else
                    check(sar_slc_peak(slc.get(), &az, &rg));
                sar_focus_report r{};
                check(sar_slc_measure(slc.get(), az, rg, &r));
                print_json({{"peak_azimuth", r.peak_azimuth},
                            {"peak_range", r.peak_range},
                            {"peak_magnitude", r.peak_magnitude},
                            {"range_irw_m", r.range_irw_m},
                            {"azimuth_irw_m", r.azimuth_irw_m},
                            {"pslr_db", r.pslr_db},
                            {"range_pslr_db", r.range_pslr_db},
                            {"azimuth_pslr_db", r.azimuth_pslr_db},
                            {"window", window}});
            }
        }
        else if (*sub)
        {
            double fc = NAN;
            if (centroid != "auto")
            {
                std::size_t used = 0;
                try
                {
                    fc = std::stod(centroid, &used);
                }
                catch (const std::exception &)
                {
                    used = 0;
                }
                if (used == 0 || used != centroid.size())
                    throw Failure{exit_usage, "--centroid expects 'auto' or a frequency in Hz"};
            }
            run.input(in_path);
            auto slc = make<Slc>(sar_slc_read, in_path.c_str());
            auto stack = make<Looks>(sar_sublook, slc.get(), looks, fc);
            if (prefix.empty())
                prefix = in_path;
            const std::string side = run.sidecar();
            json summary{{"centroid_hz", sar_sublooks_centroid(stack.get())}, {"looks", json::array()}};
            std::vector<double> edges(looks + 1);
            check(sar_sublooks_edges(stack.get(), edges.data(), edges.size()));
            for (std::size_t i = 0; i < looks; ++i)
            {
                auto look = make<Slc>(sar_sublooks_look, stack.get(), i);
                const std::string path = prefix + ".look" + std::to_string(i + 1);
                json extra = json::parse(side);
                extra["look_index"] = i + 1; // matches the file suffix
                extra["band_hz"] = {edges[i], edges[i + 1]};
                check(sar_slc_write(look.get(), path.c_str(), extra.dump().c_str()));
                summary["looks"].push_back(path);
            }
            if (!rgb_path.empty())
            {
                auto rgb = make<Tensor>(sar_sublooks_rgb, stack.get());
                check(sar_png_write(rgb.get(), rgb_path.c_str()));
                run.annotate(rgb_path, "png");
                summary["rgb"] = rgb_path;
            }
            print_json(summary);
        }
        else if (*spec)
        {
            run.input(in_path);
            auto slc = make<Slc>(sar_slc_read, in_path.c_str());
            std::vector<std::size_t> flat;
            if (centers.empty())
            {
                flat.resize(2);
                check(sar_slc_peak(slc.get(), &flat[0], &flat[1]));
            }
            for (const auto &c : centers)
            {
                const auto p = *parse_pair(c);
                flat.push_back(p.first);
                flat.push_back(p.second);
            }
            const auto nb = *parse_pair(bands);
            auto t = make<Tensor>(sar_spectrogram, slc.get(), static_cast<const std::size_t *>(flat.data()),
                                  flat.size() / 2, patch, nb.first, nb.second,
                                  tiling == "partition" ? SAR_TILING_PARTITION : SAR_TILING_OVERLAP_HANN);
            check(sar_tensor_write(t.get(), out_path.c_str(), run.sidecar().c_str()));
        }
        else if (*pau)
        {
            quad.require();
            const auto ch = quad.load(run);
            sar_tensor *powers = nullptr, *rgb = nullptr;
            check(sar_pauli(ch[0].get(), ch[1].get(), ch[2].get(), ch[3].get(), &powers,
                            png_path.empty() ? nullptr : &rgb));
            Tensor p(powers), r(rgb);
            check(sar_tensor_write(p.get(), out_path.c_str(), run.sidecar().c_str()));
            if (r)
            {
                check(sar_png_write(r.get(), png_path.c_str()));
                run.annotate(png_path, "png");
            }
        }
        else if (*hal || *poa)
        {
            quad.require();
            auto t = quad.coherency_tensor(run);
            if (!coherency_out.empty())
                check(sar_tensor_write(t.get(), coherency_out.c_str(), run.sidecar().c_str()));
            auto out = *hal ? make<Tensor>(sar_halpha, static_cast<const sar_tensor *>(t.get()))
                            : make<Tensor>(sar_orientation, static_cast<const sar_tensor *>(t.get()));
            check(sar_tensor_write(out.get(), out_path.c_str(), run.sidecar().c_str()));
        }
        else if (*psd)
        {
            run.input(in_path);
            auto t = make<Tensor>(sar_tensor_read, in_path.c_str());
            auto fixed = make<Tensor>(sar_psdfix, static_cast<const sar_tensor *>(t.get()));
            check(sar_tensor_write(fixed.get(), out_path.c_str(), run.sidecar().c_str()));
        }
        else if (*clu)
        {
            run.input(in_path);
            auto t = make<Tensor>(sar_tensor_read, in_path.c_str());
            auto model = make<Model>(sar_cluster_spectrograms, static_cast<const sar_tensor *>(t.get()), k, seed,
                                     max_iter);
            std::vector<std::size_t> ids(sar_cluster_size(model.get()));
            check(sar_cluster_assignments(model.get(), ids.data(), ids.size()));
            {
                std::ofstream out(assign_path);
                for (auto id : ids)
                    out << id << "\n";
                if (!out)
                    throw Failure{exit_input, "cannot write '" + assign_path + "'"};
            }
            run.annotate(assign_path, "text");
            auto c = make<Tensor>(sar_cluster_centroids, static_cast<const sar_cluster *>(model.get()));
            check(sar_tensor_write(c.get(), centroid_path.c_str(), run.sidecar().c_str()));
            print_json({{"inertia", sar_cluster_inertia(model.get())},
                        {"iterations", sar_cluster_iterations(model.get())}});
        }
    }
    catch (const Failure &f)
    {
        std::cerr << "sarphys: error: " << f.message << "\n";
        if (f.code == exit_usage)
            std::cerr << app.help();
        return f.code;
    }
    return exit_ok;
}
