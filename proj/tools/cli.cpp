// Copyright 2026 The sfcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "sfcorr/echo.hpp"
#include "sfcorr/io.hpp"
#include "sfcorr/moments.hpp"
#include "sfcorr/qubit.hpp"
#include "sfcorr/sampler.hpp"

namespace sfcorr::cli {

namespace {

constexpr int kSchemaVersion = 1;
constexpr double kProbeOverlapTol = 1e-9;
constexpr double kProbeViolationTol = 1e-3;
constexpr double kProbePccTol = 1e-9;
constexpr double kQubitAgreeTol = 1e-10;

struct Common {
    std::string out_path;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

struct PairArgs {
    std::string u1;
    std::string u2;
};

struct SampleArgs {
    std::int64_t n = 100000;
    std::uint64_t seed = 1;
    std::string ensemble;
};

struct QubitArgs {
    double theta1 = std::numbers::pi;
    double theta2 = std::numbers::pi;
    double delta = std::numbers::pi / 2;
};

struct FringeArgs {
    double theta = 0.0;
    std::vector<double> axis{0.0, 0.0, 1.0};
    std::string grid = "181x361";
};

struct EchoArgs {
    std::string h1;
    std::string h2;
    std::vector<double> times;
};

io::Json header(const char *command) {
    return io::Json{{"schema_version", kSchemaVersion}, {"command", command}};
}

UnitaryMatrix load_unitary(const std::string &path) {
    return UnitaryMatrix::from(io::matrix_from_json(io::read_json_file(path)));
}

HermitianMatrix load_hermitian(const std::string &path) {
    return HermitianMatrix::from(io::matrix_from_json(io::read_json_file(path)));
}

MonteCarloOptions mc_options(const Common &common) {
    MonteCarloOptions opts;
    opts.threads = common.threads;
    return opts;
}

EnsembleSpec resolve_ensemble(const SampleArgs &args) {
    if (args.ensemble.empty()) {
        return EnsembleSpec::haar(args.n);
    }
    return io::ensemble_from_json(io::read_json_file(args.ensemble));
}

io::Json ensemble_summary(const EnsembleSpec &ens) {
    const bool haar = ens.kind == EnsembleSpec::Kind::HaarState;
    return io::Json{{"kind", haar ? "haar" : "user"}, {"n", ens.n_samples}};
}

std::pair<int, int> parse_grid(const std::string &text) {
    const auto x = text.find('x');
    if (x == std::string::npos) {
        throw CLI::ValidationError("--grid", "expected POLARxAZIMUTH, got '" + text + "'");
    }
    try {
        size_t used_p = 0;
        size_t used_a = 0;
        const int p = std::stoi(text.substr(0, x), &used_p);
        const int a = std::stoi(text.substr(x + 1), &used_a);
        if (used_p != x || used_a != text.size() - x - 1) {
            throw std::invalid_argument(text);
        }
        return {p, a};
    } catch (const std::logic_error &) {
        throw CLI::ValidationError("--grid", "expected POLARxAZIMUTH, got '" + text + "'");
    }
}

qubit::Vec3 normalized_axis(const std::vector<double> &axis) {
    qubit::Vec3 v(axis[0], axis[1], axis[2]);
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        fail(ErrorCode::InvalidAxis, "--axis must be a nonzero finite vector");
    }
    return v / norm;
}

void add_pair_options(CLI::App &cmd, PairArgs &pair) {
    cmd.add_option("--u1", pair.u1, "First unitary (JSON matrix file)")->required()->check(CLI::ExistingFile);
    cmd.add_option("--u2", pair.u2, "Second unitary (JSON matrix file)")->required()->check(CLI::ExistingFile);
}

void add_sampling_options(CLI::App &cmd, SampleArgs &sample, bool with_ensemble) {
    auto *n = cmd.add_option("-n,--samples", sample.n, "Number of Haar samples (>= 100)")
                  ->check(CLI::Range(kMinHaarSamples, std::numeric_limits<std::int64_t>::max()))
                  ->capture_default_str();
    cmd.add_option("--seed", sample.seed, "RNG seed")->capture_default_str();
    if (with_ensemble) {
        cmd.add_option("--ensemble", sample.ensemble, "Ensemble JSON file; replaces -n")
            ->check(CLI::ExistingFile)
            ->excludes(n);
    }
}

void add_common_options(CLI::App &cmd, Common &common) {
    cmd.add_option("--out", common.out_path, "Write the report here instead of stdout");
    cmd.add_option("--threads", common.threads, "Worker thread cap; results do not depend on it")
        ->check(CLI::Range(1u, 1024u));
}

void emit(const Common &common, std::ostream &out, const std::string &text) {
    if (common.out_path.empty()) {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(common.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot open " + common.out_path + " for writing");
    }
    file << text;
    if (!file.flush()) {
        throw std::runtime_error("failed writing " + common.out_path);
    }
}

std::string json_text(const io::Json &j) {
    return j.dump(2) + "\n";
}

std::string cmd_exact(const PairArgs &pair) {
    auto u1 = load_unitary(pair.u1);
    auto u2 = load_unitary(pair.u2);
    auto j = header("exact");
    j["dim"] = u1.dim();
    j["closed_form"] = io::to_json(exact_stats(u1, u2));
    j["perm_sum"] = io::to_json(exact_stats_permsum(u1, u2));
    return json_text(j);
}

std::string cmd_sample(const PairArgs &pair, const SampleArgs &args, const Common &common) {
    auto u1 = load_unitary(pair.u1);
    auto u2 = load_unitary(pair.u2);
    auto ens = resolve_ensemble(args);
    auto report = mc_stats(u1, u2, ens, RngStream{args.seed, 0}, mc_options(common));
    auto j = header("sample");
    j["seed"] = args.seed;
    j["dim"] = u1.dim();
    j["ensemble"] = ensemble_summary(ens);
    j["report"] = io::to_json(report);
    j["stderr_mean1"] = *report.stderr_mean1;
    j["stderr_mean2"] = *report.stderr_mean2;
    return json_text(j);
}

std::string cmd_qubit(const QubitArgs &args) {
    if (!(args.delta >= 0.0 && args.delta <= std::numbers::pi)) {
        fail(ErrorCode::OutOfRange, "--delta must lie in [0, pi]");
    }
    auto u1 = qubit::rotation(qubit::RamseyControl(args.theta1, qubit::axis_at(0.0)));
    auto u2 = qubit::rotation(qubit::RamseyControl(args.theta2, qubit::axis_at(args.delta)));
    const double closed = qubit::closed_form_pcc(args.delta);
    auto report = exact_stats(u1, u2);
    auto j = header("qubit");
    j["theta1"] = args.theta1;
    j["theta2"] = args.theta2;
    j["delta"] = args.delta;
    j["closed_form_pcc"] = closed;
    j["exact"] = io::to_json(report);
    j["agree"] = std::abs(report.pcc - closed) <= kQubitAgreeTol;
    return json_text(j);
}

std::string cmd_fringe(const FringeArgs &args) {
    const auto [n_polar, n_azimuth] = parse_grid(args.grid);
    qubit::RamseyControl control(args.theta, normalized_axis(args.axis));
    std::ostringstream csv;
    io::write_fringe_csv(csv, qubit::fringe_grid(control, n_polar, n_azimuth));
    return csv.str();
}

std::string cmd_sweep(int points) {
    std::ostringstream csv;
    io::write_sweep_csv(csv, qubit::pcc_sweep(points));
    return csv.str();
}

std::string cmd_echo(const EchoArgs &args, const SampleArgs &sample, const Common &common) {
    echo::EchoConfig cfg{load_hermitian(args.h1), load_hermitian(args.h2), args.times};
    cfg.validate();
    auto ens = EnsembleSpec::haar(sample.n);
    const RngStream stream{sample.seed, 0};
    auto opts = mc_options(common);
    auto j = header("echo");
    j["seed"] = sample.seed;
    j["dims"] = cfg.h1.dim();
    j["n_samples"] = sample.n;
    j["exact"] = io::to_json(echo::short_time_pcc_gap(cfg));
    j["monte_carlo"] = io::to_json(echo::short_time_pcc_gap(cfg, ens, stream, opts));
    j["affine_fit"] = io::to_json(echo::affine_rigidity_fit(cfg.h1, cfg.h2, ens, stream.substream(1), opts));
    return json_text(j);
}

std::string cmd_contrast(const PairArgs &pair, int grid) {
    auto u1 = load_unitary(pair.u1);
    auto u2 = load_unitary(pair.u2);
    auto report = exact_stats(u1, u2);
    auto j = header("contrast");
    j["pcc"] = report.pcc;
    auto contrast = io::to_json(optimal_contrast(report, grid));
    for (auto &[key, value] : contrast.items()) {
        j[key] = value;
    }
    return json_text(j);
}

std::string cmd_probe(const PairArgs &pair, const SampleArgs &args) {
    auto u1 = load_unitary(pair.u1);
    auto u2 = load_unitary(pair.u2);
    auto report = exact_stats(u1, u2);
    const RngStream stream{args.seed, 0};
    auto overlap = min_overlap_probe(u1, u2, args.n, stream);
    const double violation = complement_violation(u1, u2, args.n, stream.substream(1));
    auto j = header("probe");
    j["seed"] = args.seed;
    j["n"] = args.n;
    j["max_overlap"] = overlap.max_overlap;
    j["min_overlap"] = overlap.min_overlap;
    j["complement_violation"] = violation;
    j["pcc"] = report.pcc;
    const bool overlap_ok = overlap.max_overlap >= 1.0 - kProbeOverlapTol;
    const bool violation_ok = violation > kProbeViolationTol;
    const bool pcc_ok = report.pcc > -1.0 + kProbePccTol;
    j["pcc_min_bound_check"] = pcc_ok;
    j["checks"] = io::Json{{"max_overlap", overlap_ok}, {"complement_violation", violation_ok},
                           {"pcc_min_bound", pcc_ok}};
    j["all_pass"] = overlap_ok && violation_ok && pcc_ok;
    return json_text(j);
}

}  // namespace

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegenerateReadout:
            return kDegenerate;
        case ErrorCode::Parse:
            return kParse;
        case ErrorCode::NotHermitian:
            return kNotHermitian;
        case ErrorCode::ConvergenceFailure:
            return kInternal;
        case ErrorCode::DimensionMismatch:
        case ErrorCode::OutOfRange:
        case ErrorCode::InvalidAxis:
        case ErrorCode::GridTooSmall:
        case ErrorCode::NotUnitary:
        case ErrorCode::NotNormalized:
        case ErrorCode::NonFinite:
        case ErrorCode::InvalidEnsemble:
            return kRange;
    }
    return kInternal;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Self-fidelity correlation toolkit", "sfcorr"};
    app.require_subcommand(1);

    Common common;
    PairArgs pair;
    SampleArgs sample;
    QubitArgs qubit_args;
    FringeArgs fringe_args;
    EchoArgs echo_args;
    int sweep_points = 10001;
    int contrast_grid = 201;

    auto *exact = app.add_subcommand("exact", "Exact statistics by closed form and by permutation sums");
    add_pair_options(*exact, pair);

    auto *sample_cmd = app.add_subcommand("sample", "Monte Carlo statistics over a state ensemble");
    add_pair_options(*sample_cmd, pair);
    add_sampling_options(*sample_cmd, sample, true);

    auto *qubit_cmd = app.add_subcommand("qubit", "Qubit rotation pair: closed-form PCC against exact statistics");
    qubit_cmd->add_option("--theta1", qubit_args.theta1, "First rotation angle in (0, 2 pi)")->capture_default_str();
    qubit_cmd->add_option("--theta2", qubit_args.theta2, "Second rotation angle in (0, 2 pi)")->capture_default_str();
    qubit_cmd->add_option("--delta", qubit_args.delta, "Angle between the axes in [0, pi]")->capture_default_str();

    auto *fringe_cmd = app.add_subcommand("fringe", "Bloch-sphere fringe grid as CSV");
    fringe_cmd->add_option("--theta", fringe_args.theta, "Rotation angle in (0, 2 pi)")->required();
    fringe_cmd->add_option("--axis", fringe_args.axis, "Rotation axis x,y,z (normalized on input)")
        ->delimiter(',')
        ->expected(3)
        ->capture_default_str();
    fringe_cmd->add_option("--grid", fringe_args.grid, "Grid size POLARxAZIMUTH")->capture_default_str();

    auto *sweep_cmd = app.add_subcommand("sweep", "PCC against axis angle as CSV");
    sweep_cmd->add_option("--points", sweep_points, "Number of angles spanning [0, pi]")->capture_default_str();

    auto *echo_cmd = app.add_subcommand("echo", "Short-time PCC gap and affine rigidity for two Hamiltonians");
    echo_cmd->add_option("--h1", echo_args.h1, "First Hamiltonian (JSON matrix file)")
        ->required()
        ->check(CLI::ExistingFile);
    echo_cmd->add_option("--h2", echo_args.h2, "Second Hamiltonian (JSON matrix file)")
        ->required()
        ->check(CLI::ExistingFile);
    echo_cmd->add_option("--times", echo_args.times, "Comma-separated interrogation times")
        ->required()
        ->delimiter(',');
    add_sampling_options(*echo_cmd, sample, false);

    auto *contrast_cmd = app.add_subcommand("contrast", "Optimal linear contrast and its variance curve");
    add_pair_options(*contrast_cmd, pair);
    contrast_cmd->add_option("--grid", contrast_grid, "Number of tabulated weights")->capture_default_str();

    auto *probe_cmd = app.add_subcommand("probe", "Overlap, complement and PCC lower-bound witnesses");
    add_pair_options(*probe_cmd, pair);
    add_sampling_options(*probe_cmd, sample, false);

    for (auto *cmd : {exact, sample_cmd, qubit_cmd, fringe_cmd, sweep_cmd, echo_cmd, contrast_cmd, probe_cmd}) {
        add_common_options(*cmd, common);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        std::string text;
        if (*exact) {
            text = cmd_exact(pair);
        } else if (*sample_cmd) {
            text = cmd_sample(pair, sample, common);
        } else if (*qubit_cmd) {
            text = cmd_qubit(qubit_args);
        } else if (*fringe_cmd) {
            text = cmd_fringe(fringe_args);
        } else if (*sweep_cmd) {
            text = cmd_sweep(sweep_points);
        } else if (*echo_cmd) {
            text = cmd_echo(echo_args, sample, common);
        } else if (*contrast_cmd) {
            text = cmd_contrast(pair, contrast_grid);
        } else {
            text = cmd_probe(pair, sample);
        }
        emit(common, out, text);
        return kOk;
    } catch (const CLI::ValidationError &e) {
        err << "sfcorr: " << e.what() << "\n";
        return kUsage;
    } catch (const Error &e) {
        err << "sfcorr: " << to_string(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception &e) {
        err << "sfcorr: " << e.what() << "\n";
        return kInternal;
    }
}

}  // namespace sfcorr::cli
