// SPDX-License-Identifier: Apache-2.0
//
// arcmimo: near-field circular-arc MIMO imaging library
// Copyright (C) 2026 The arcmimo contributors
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

#include <arcmimo/bp.hpp>
#include <arcmimo/config.hpp>
#include <arcmimo/design.hpp>
#include <arcmimo/io.hpp>
#include <arcmimo/pgm.hpp>
#include <arcmimo/rma.hpp>
#include <arcmimo/scenario.hpp>
#include <arcmimo/spectral.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

using namespace arcmimo;

namespace
{
    enum ExitCode
    {
        exit_ok = 0,
        exit_strict = 1,
        exit_usage = 2,
        exit_runtime = 3
    };

    struct StrictViolation : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    class Stopwatch
    {
    public:
        double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

    private:
        std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
    };

    void runtime_line(const std::string &stage, const Stopwatch &w)
    {
        std::cout << "runtime." << stage << "_seconds = " << w.seconds() << '\n';
    }

    void print_design(const DesignReport &r, bool strict)
    {
        std::cerr << r.to_text();
        if (strict && !r.ok())
            throw StrictViolation(std::to_string(r.violations.size()) + " design rule violation(s) under --strict");
    }

    // ----- subcommands -------------------------------------------------------

    void cmd_simulate(const std::string &cfg_path, const std::string &out, bool strict)
    {
        const auto cfg = load_config(cfg_path);
        print_design(validate_config(cfg), strict);
        Stopwatch w;
        const auto echo = simulate_echo(build_geometry(cfg), frequency_grid(cfg), cfg.targets, simulation_options(cfg));
        const std::string path = out.empty() ? cfg.output.echo : out;
        save_echo(path, echo);
        std::cout << "echo = " << path << '\n'
                  << "echo.shape = " << echo.freqs.count() << ' ' << echo.tx.count << ' ' << echo.rx.count << ' ' << echo.z.count
                  << '\n';
        runtime_line("simulate", w);
    }

    void cmd_reconstruct(const std::string &echo_path, const std::string &cfg_path, const std::string &algo,
                         const std::string &out, const std::string &report, bool verbose, const std::string &dump_dir)
    {
        const auto cfg = load_config(cfg_path);
        const auto echo = load_external_echo(echo_path);
        check_echo_matches(echo, cfg);

        Stopwatch w;
        ImageVolume img;
        if (algo == "rma")
        {
            auto opt = rma_options(cfg);
            opt.verbose = verbose;
            opt.log = &std::cerr;
            opt.dump_dir = dump_dir;
            img = reconstruct(echo, cfg.array.radius, cfg.scene, opt);
        }
        else
            img = bp_reconstruct(echo, cfg.array.radius, cfg.scene, BpOptions{cfg.options.range_decay});
        const double seconds = w.seconds();

        const std::string path = out.empty() ? cfg.output.image : out;
        save_image(path, img);
        const std::string text = format_target_reports(algo, target_reports(img, cfg.targets));
        std::cout << "image = " << path << '\n' << text << "runtime." << algo << "_seconds = " << seconds << '\n';
        const std::string rpath = report.empty() ? cfg.output.report : report;
        if (!rpath.empty())
            detail::write_file(rpath, text);
    }

    void cmd_design_check(const std::string &cfg_path, bool strict, const std::string &format)
    {
        const auto r = validate_config(load_config(cfg_path));
        std::cout << (format == "kv" ? r.to_kv() : r.to_text());
        if (strict && !r.ok())
            throw StrictViolation(std::to_string(r.violations.size()) + " design rule violation(s) under --strict");
    }

    void cmd_slices(const std::string &image_path, const std::string &plane, double coord, double range_db, const std::string &out)
    {
        const auto img = load_image(image_path);
        const auto g = slice_image(img, parse_plane(plane), coord, range_db);
        write_pgm(out, g);
        std::cout << "slice = " << out << '\n' << "slice.size = " << g.width << ' ' << g.height << '\n';
    }

    void cmd_conv_study(const std::string &cfg_path)
    {
        const auto cfg = load_config(cfg_path);
        auto setup = cfg.convolution.value_or(ConvolutionStudySetup{});
        setup.radius = cfg.array.radius;
        Stopwatch w;
        const auto r = run_convolution_study(setup);
        std::cout.precision(10);
        std::cout << "conv.k = " << r.k << '\n'
                  << "conv.rho_t_m = " << r.rho_t << '\n'
                  << "conv.rho_r_m = " << r.rho_r << '\n'
                  << "conv.band_limit = " << r.band_limit << '\n'
                  << "conv.discrepancy = " << r.discrepancy << '\n';
        runtime_line("conv_study", w);
    }

    void cmd_nt_study(const std::string &cfg_path)
    {
        const auto cfg = load_config(cfg_path);
        Stopwatch w;
        const auto rows = run_nt_study(cfg.nt_study.value_or(NtStudySetup{}), frequency_grid(cfg), cfg.array.radius);
        std::cout << format_nt_study(rows);
        runtime_line("nt_study", w);
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"arcmimo: circular-arc MIMO echo simulation and 3-D reconstruction"};
    app.require_subcommand(1);

    std::string cfg, out, echo, image, algo = "rma", report, dump_dir, plane = "xz", format = "text";
    bool strict = false, verbose = false;
    double coord = 0.0, range_db = 20.0;

    auto *sim = app.add_subcommand("simulate", "simulate an echo cube from a scenario config");
    sim->add_option("config", cfg, "scenario config")->required()->check(CLI::ExistingFile);
    sim->add_option("-o,--output", out, "echo file (defaults to [output] echo)");
    sim->add_flag("--strict", strict, "treat design violations as errors");

    auto *rec = app.add_subcommand("reconstruct", "reconstruct an image volume");
    rec->add_option("echo", echo, "echo file")->required()->check(CLI::ExistingFile);
    rec->add_option("config", cfg, "scenario config")->required()->check(CLI::ExistingFile);
    rec->add_option("--algo", algo, "rma or bp")->check(CLI::IsMember({"rma", "bp"}));
    rec->add_option("-o,--output", out, "image file (defaults to [output] image)");
    rec->add_option("--report", report, "write the metrics report here");
    rec->add_flag("-v,--verbose", verbose, "log per-stage timing and energy");
    rec->add_option("--dump-dir", dump_dir, "write intermediate spectra here");

    auto *des = app.add_subcommand("design-check", "check sampling rules and print resolutions");
    des->add_option("config", cfg, "scenario config")->required()->check(CLI::ExistingFile);
    des->add_flag("--strict", strict, "exit 1 on any violation");
    des->add_option("--format", format, "text or kv")->check(CLI::IsMember({"text", "kv"}));

    auto *sl = app.add_subcommand("slices", "write a dB slice as a 16-bit PGM");
    sl->add_option("image", image, "image file")->required()->check(CLI::ExistingFile);
    sl->add_option("--plane", plane, "xy, xz or yz")->check(CLI::IsMember({"xy", "xz", "yz"}));
    sl->add_option("--coord", coord, "coordinate of the slice along the fixed axis (m)");
    sl->add_option("--range-db", range_db, "dynamic range in dB")->check(CLI::PositiveNumber);
    sl->add_option("-o,--output", out, "PGM file")->required();

    auto *conv = app.add_subcommand("conv-study", "stationary-phase convolution accuracy at one pixel");
    conv->add_option("config", cfg, "scenario config")->required()->check(CLI::ExistingFile);

    auto *nt = app.add_subcommand("nt-study", "transmit-count study on a 1-D cut");
    nt->add_option("config", cfg, "scenario config")->required()->check(CLI::ExistingFile);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_usage;
    }

    try
    {
        if (*sim)
            cmd_simulate(cfg, out, strict);
        else if (*rec)
            cmd_reconstruct(echo, cfg, algo, out, report, verbose, dump_dir);
        else if (*des)
            cmd_design_check(cfg, strict, format);
        else if (*sl)
            cmd_slices(image, plane, coord, range_db, out);
        else if (*conv)
            cmd_conv_study(cfg);
        else if (*nt)
            cmd_nt_study(cfg);
    }
    catch (const StrictViolation &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_strict;
    }
    catch (const ConfigError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_ok;
}
