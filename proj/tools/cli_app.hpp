#pragma once

// Command-line front end. Subcommands:
//   decompose  <in.pgm> <out-prefix>   cartoon/texture split of a PGM image
//   bench      [<in.pgm>]              both pipelines on one input, CSV report
//   synth      <out-prefix>            write the synthetic disk + stripes image
//
// Exit codes: 0 ok, 1 I/O error, 2 invalid flags, 3 solver did not converge.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "texdecomp/texdecomp.hpp"

namespace texdecomp::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kBadFlags = 2, kNotConverged = 3 };

struct SolverFlags {
    std::string method = "bregman";
    double lambda = 1000.0;
    double mu = 1000.0;
    std::optional<double> eta;
    double tau = 0.124;
    double tol = 1e-3;
    int max_outer = 50;
    std::string u_update = "fourier";
    int threads = 0;

    void attach(CLI::App& cmd, bool with_method) {
        if (with_method) {
            cmd.add_option("--method", method, "chambolle | bregman")
                ->check(CLI::IsMember({"chambolle", "bregman"}))
                ->capture_default_str();
        }
        cmd.add_option("--lambda", lambda, "fidelity weight")->check(CLI::PositiveNumber)->capture_default_str();
        cmd.add_option("--mu", mu, "G-ball radius")->check(CLI::PositiveNumber)->capture_default_str();
        cmd.add_option("--eta", eta, "split Bregman weight (bregman only; default 2*lambda)")
            ->check(CLI::PositiveNumber);
        cmd.add_option("--tau", tau, "projector step, < 1/8 (chambolle only)")
            ->check(CLI::Range(0.0, 0.125))
            ->capture_default_str();
        cmd.add_option("--tol", tol, "outer relative-change tolerance")->check(CLI::PositiveNumber)->capture_default_str();
        cmd.add_option("--max-outer", max_outer, "outer iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
        cmd.add_option("--u-update", u_update, "fourier | gauss-seidel (bregman only)")
            ->check(CLI::IsMember({"fourier", "gauss-seidel"}))
            ->capture_default_str();
        cmd.add_option("--threads", threads, "worker threads, 0 = auto (solvers currently run on one)")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
    }

    DecompParams params() const {
        DecompParams p = DecompParams::with_defaults(method == "chambolle" ? Method::chambolle : Method::bregman,
                                                     lambda, mu, tol);
        p.max_outer = max_outer;
        p.projector.tau = tau;
        p.bregman.eta = eta;
        p.bregman.u_update = u_update == "gauss-seidel" ? UUpdate::gauss_seidel : UUpdate::fourier;
        return p;
    }
};

inline void write_outputs(const std::string& prefix, const DecompositionResult& r) {
    write_file(prefix + "_cartoon.pgm", write_pgm(r.cartoon));
    write_file(prefix + "_texture.pgm", write_pgm(visualize_texture(r.texture)));
    write_file(prefix + "_texture.f64", write_f64(r.texture));
    write_file(prefix + "_residual.f64", write_f64(r.residual));
}

inline std::string stats_line(Method m, const RunStats& s) {
    return std::string("method=") + to_string(m) + " outer=" + std::to_string(s.outer_iters) +
           " inner=" + std::to_string(s.inner_iters_total) + " time_s=" + std::to_string(s.wall_time) +
           " converged=" + (s.converged ? "true" : "false");
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cartoon + texture image decomposition (TV + G-norm)", "texdecomp"};
    app.require_subcommand(1);

    SolverFlags dflags;
    std::string d_input, d_prefix;
    auto* dcmd = app.add_subcommand("decompose", "split a PGM image into cartoon and texture layers");
    dflags.attach(*dcmd, true);
    dcmd->add_option("input", d_input, "input PGM (P2 or P5)")->required();
    dcmd->add_option("output", d_prefix, "output prefix")->required();

    SolverFlags bflags;
    std::string b_input, b_csv;
    std::size_t b_size = 256;
    std::uint64_t b_seed = 0;
    auto* bcmd = app.add_subcommand("bench", "time both pipelines on the same input");
    bflags.attach(*bcmd, false);
    bcmd->add_option("input", b_input, "input PGM; omit to use the synthetic image");
    bcmd->add_option("--synthetic", b_size, "side length of the synthetic input")->capture_default_str();
    bcmd->add_option("--seed", b_seed, "synthetic noise seed")->capture_default_str();
    bcmd->add_option("--csv", b_csv, "write the CSV here instead of standard output");

    SyntheticSpec sspec;
    std::size_t s_size = 64;
    std::string s_prefix;
    auto* scmd = app.add_subcommand("synth", "write the synthetic disk + stripes test image");
    scmd->add_option("output", s_prefix, "output prefix")->required();
    scmd->add_option("--size", s_size, "side length")->check(CLI::PositiveNumber)->capture_default_str();
    scmd->add_option("--radius", sspec.disk_radius_frac, "disk radius / side")->capture_default_str();
    scmd->add_option("--freq", sspec.texture_freq, "stripe cycles per width")->capture_default_str();
    scmd->add_option("--amp", sspec.texture_amp, "stripe amplitude")->capture_default_str();
    scmd->add_option("--noise", sspec.noise_sigma, "uniform noise half-width")->capture_default_str();
    scmd->add_option("--seed", sspec.seed, "noise seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kBadFlags;
    }

    try {
        if (dcmd->parsed()) {
            const DecompParams params = dflags.params();
            const ScalarField f = read_pgm(read_file(d_input));
            const DecompositionResult r = decompose(f, params);
            write_outputs(d_prefix, r);
            out << stats_line(params.method, r.stats) << '\n';
            return r.stats.converged ? kOk : kNotConverged;
        }
        if (bcmd->parsed()) {
            const DecompParams params = bflags.params();
            ScalarField f;
            if (!b_input.empty()) {
                f = read_pgm(read_file(b_input));
            } else {
                SyntheticSpec spec;
                spec.height = spec.width = b_size;
                spec.seed = b_seed;
                f = generate_synthetic(spec).f;
            }
            const BenchReport report = run_benchmark(f, params);
            if (b_csv.empty()) {
                out << report.csv();
            } else {
                const std::string csv = report.csv();
                write_file(b_csv, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
            }
            out << report.summary() << '\n';
            return report.all_converged() ? kOk : kNotConverged;
        }
        if (scmd->parsed()) {
            sspec.height = sspec.width = s_size;
            const SyntheticImage img = generate_synthetic(sspec);
            write_file(s_prefix + ".pgm", write_pgm(img.f));
            write_file(s_prefix + "_cartoon.f64", write_f64(img.cartoon));
            write_file(s_prefix + "_texture.f64", write_f64(img.texture));
            return kOk;
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const PgmError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kBadFlags;
    }
    return kBadFlags;
}

}  // namespace texdecomp::cli
