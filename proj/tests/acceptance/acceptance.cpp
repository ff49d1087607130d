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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "sfcorr/echo.hpp"
#include "sfcorr/io.hpp"
#include "sfcorr/moments.hpp"
#include "sfcorr/qubit.hpp"
#include "sfcorr/sampler.hpp"
#include "sfcorr/stats.hpp"

using namespace sfcorr;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char *title;
    double budget_seconds;
    std::function<Outcome()> body;
};

std::filesystem::path g_report_dir;

unsigned worker_threads() {
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string fmt(double x) {
    return io::format_double(x);
}

qubit::Vec3 random_unit(SampleRng &rng) {
    qubit::Vec3 v(rng.normal(), rng.normal(), rng.normal());
    return v.normalized();
}

// Unit vector at angle delta from n.
qubit::Vec3 tilted(const qubit::Vec3 &n, double delta, SampleRng &rng) {
    qubit::Vec3 perp = random_unit(rng);
    perp -= n.dot(perp) * n;
    perp.normalize();
    return std::cos(delta) * n + std::sin(delta) * perp;
}

double random_angle(SampleRng &rng) {
    return 0.05 + (2 * kPi - 0.1) * rng.uniform();
}

// ---------------------------------------------------------------------------

Outcome qubit_closed_form() {
    SampleRng rng(RngStream{101, 0}, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; trial++) {
        const double t1 = random_angle(rng);
        const double t2 = random_angle(rng);
        const double delta = kPi * rng.uniform();
        const qubit::Vec3 n1 = random_unit(rng);
        const qubit::Vec3 n2 = tilted(n1, delta, rng);
        auto r = exact_stats(qubit::su2_rotation(t1, n1), qubit::su2_rotation(t2, n2));
        worst = std::max(worst, std::abs(r.pcc - (3 * std::pow(std::cos(delta), 2) - 1) / 2));
    }
    return {worst <= 1e-10, "max |P - (3cos^2(delta)-1)/2| = " + fmt(worst) + " over 200 triples"};
}

Outcome qubit_moments() {
    double worst_mean = 0.0;
    double worst_var = 0.0;
    const auto partner = qubit::su2_rotation(1.0, qubit::Vec3(1, 0, 0));
    for (int k = 0; k < 50; k++) {
        const double theta = 2 * kPi * (k + 0.5) / 50;
        auto r = exact_stats(qubit::su2_rotation(theta, qubit::Vec3(0, 0, 1)), partner);
        worst_mean = std::max(worst_mean, std::abs(r.mean1 - (2 + std::cos(theta)) / 3));
        worst_var = std::max(worst_var, std::abs(r.var1 - 4.0 / 45 * std::pow(std::sin(theta / 2), 4)));
    }
    return {worst_mean <= 1e-12 && worst_var <= 1e-12,
            "max mean error " + fmt(worst_mean) + ", max variance error " + fmt(worst_var)};
}

Outcome qubit_bounds() {
    // 10^4 intervals so that delta = pi/2 is a grid point.
    const int points = 10001;
    auto rows = qubit::pcc_sweep(points);
    {
        std::ofstream csv(g_report_dir / "pcc_sweep.csv", std::ios::binary);
        io::write_sweep_csv(csv, rows);
    }
    // Re-read the emitted CSV and check it pointwise against the closed form.
    std::ifstream in(g_report_dir / "pcc_sweep.csv", std::ios::binary);
    std::string line;
    std::getline(in, line);
    bool header_ok = line == "delta,pcc";
    double worst_point = 0.0;
    double min_pcc = std::numeric_limits<double>::infinity();
    double min_delta = 0.0;
    double first = 0.0;
    double last = 0.0;
    int count = 0;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        const double delta = std::stod(line.substr(0, comma));
        const double pcc = std::stod(line.substr(comma + 1));
        worst_point = std::max(worst_point, std::abs(pcc - (3 * std::pow(std::cos(delta), 2) - 1) / 2));
        if (pcc < min_pcc) {
            min_pcc = pcc;
            min_delta = delta;
        }
        if (count == 0) {
            first = pcc;
        }
        last = pcc;
        count++;
    }
    const bool pass = header_ok && count == points && std::abs(min_pcc + 0.5) <= 1e-9 &&
                      std::abs(min_delta - kPi / 2) <= 1e-9 && std::abs(first - 1) <= 1e-9 &&
                      std::abs(last - 1) <= 1e-9 && worst_point <= 1e-12;
    return {pass, "min P = " + fmt(min_pcc) + " at delta = " + fmt(min_delta) + ", endpoints " + fmt(first) + ", " +
                      fmt(last) + ", " + std::to_string(count) + " CSV rows"};
}

Outcome dual_route() {
    double worst = 0.0;
    std::uint64_t idx = 0;
    for (int d = 2; d <= 6; d++) {
        for (int trial = 0; trial < 100; trial++, idx++) {
            auto u1 = haar_unitary(d, RngStream{104, 1}, idx);
            auto u2 = haar_unitary(d, RngStream{104, 2}, idx);
            auto a = exact_stats(u1, u2);
            auto b = exact_stats_permsum(u1, u2);
            for (double diff : {a.mean1 - b.mean1, a.mean2 - b.mean2, a.var1 - b.var1, a.var2 - b.var2,
                                a.cov - b.cov, a.pcc - b.pcc}) {
                worst = std::max(worst, std::abs(diff));
            }
        }
    }
    return {worst <= 1e-10, "max field-wise difference " + fmt(worst) + " over 500 pairs"};
}

Outcome mc_consistency() {
    MonteCarloOptions opts;
    opts.threads = worker_threads();
    int inside = 0;
    int total = 0;
    double worst_z = 0.0;
    std::uint64_t idx = 0;
    for (int d : {2, 3, 4, 6}) {
        for (int trial = 0; trial < 50; trial++, idx++) {
            auto u1 = haar_unitary(d, RngStream{105, 1}, idx);
            auto u2 = haar_unitary(d, RngStream{105, 2}, idx);
            auto exact = exact_stats(u1, u2);
            auto mc = mc_stats(u1, u2, EnsembleSpec::haar(1000000), RngStream{105, 100 + idx}, opts);
            const double z = std::abs(mc.pcc - exact.pcc) / *mc.stderr_pcc;
            worst_z = std::max(worst_z, z);
            inside += z <= 4.0;
            total++;
        }
    }
    return {inside >= 0.95 * total, std::to_string(inside) + "/" + std::to_string(total) +
                                        " within 4 standard errors, largest |z| = " + fmt(worst_z)};
}

Outcome sphere_moments() {
    const qubit::Vec3 n = qubit::Vec3(2, -1, 2) / 3.0;
    PairStatistic powers = [&n](const Vector &psi, Vector &) {
        const double z = std::norm(psi(0)) - std::norm(psi(1));
        const Complex coherence = std::conj(psi(0)) * psi(1);
        const double c = n.x() * 2 * coherence.real() + n.y() * 2 * coherence.imag() + n.z() * z;
        return std::pair{c * c, c * c * c * c};
    };
    MonteCarloOptions opts;
    opts.threads = worker_threads();
    auto m = accumulate(2, EnsembleSpec::haar(1000000), RngStream{106, 0}, powers, opts);
    const double z2 = std::abs(m.mean_x() - 1.0 / 3) / m.mean_x_stderr();
    const double z4 = std::abs(m.mean_y() - 1.0 / 5) / m.mean_y_stderr();
    return {z2 <= 4 && z4 <= 4, "E[(n.r)^2] = " + fmt(m.mean_x()) + " (z " + fmt(z2) + "), E[(n.r)^4] = " +
                                    fmt(m.mean_y()) + " (z " + fmt(z4) + ")"};
}

Outcome pcc_lower_bound() {
    io::Json minima = io::Json::object();
    bool pass = true;
    double global = 1.0;
    std::uint64_t idx = 0;
    for (int d = 2; d <= 8; d++) {
        double lowest = 1.0;
        for (int trial = 0; trial < 1000; trial++, idx++) {
            auto r = exact_stats(haar_unitary(d, RngStream{107, 1}, idx), haar_unitary(d, RngStream{107, 2}, idx));
            lowest = std::min(lowest, r.pcc);
            pass &= r.pcc > -1 + 1e-9;
        }
        minima[std::to_string(d)] = lowest;
        global = std::min(global, lowest);
    }
    io::Json artifact{{"schema_version", 1}, {"pairs_per_dimension", 1000}, {"min_pcc_by_dimension", minima}};
    std::ofstream(g_report_dir / "pcc_minima.json", std::ios::binary) << artifact.dump(2) << "\n";
    return {pass, "global min P = " + fmt(global) + "; per-d minima in pcc_minima.json"};
}

Outcome overlap_and_complement() {
    double lowest_overlap = 1.0;
    double lowest_violation = 1.0;
    std::uint64_t idx = 0;
    for (int trial = 0; trial < 200; trial++, idx++) {
        const int d = 2 + trial % 5;
        auto u1 = haar_unitary(d, RngStream{108, 1}, idx);
        auto u2 = haar_unitary(d, RngStream{108, 2}, idx);
        auto probe = min_overlap_probe(u1, u2, 1000, RngStream{108, 100 + idx});
        lowest_overlap = std::min(lowest_overlap, probe.max_overlap);
        lowest_violation = std::min(lowest_violation, complement_violation(u1, u2, 10000, RngStream{108, 1000 + idx}));
    }
    return {lowest_overlap >= 1 - 1e-9 && lowest_violation > 1e-3,
            "smallest refined max overlap " + fmt(lowest_overlap) + ", smallest complement violation " +
                fmt(lowest_violation)};
}

Outcome short_time_scaling() {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    std::uint64_t idx = 0;
    for (int d : {2, 3, 4}) {
        for (int trial = 0; trial < 20; trial++, idx++) {
            auto h = oracle::random_hamiltonian(d, RngStream{109, 1}, idx);
            auto psi = haar_state(d, RngStream{109, 2}, idx);
            const double t = 0.2 / spectral_norm(h);
            auto rows = echo::short_time_check(h, psi, {t / 2, t});
            const double ratio = rows[1].residual / rows[0].residual;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    }
    Vector plus(2);
    plus << 1, 1;
    const double t = 0.05;
    auto half_z = HermitianMatrix::from(ComplexMatrix(0.5 * pauli::z().mat()));
    auto row = echo::short_time_check(half_z, PureState::normalized(plus), {t}).front();
    const double rel = std::abs(row.residual / (std::pow(t, 4) / 48) - 1);
    return {lo >= 12 && hi <= 20 && rel <= 0.1,
            "halving ratios in [" + fmt(lo) + ", " + fmt(hi) + "], qubit residual off t^4/48 by " + fmt(rel)};
}

Outcome short_time_gap() {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    double worst_d2 = 0.0;
    std::uint64_t idx = 0;
    for (int d : {2, 3}) {
        for (int trial = 0; trial < 20; trial++, idx++) {
            echo::EchoConfig cfg{oracle::random_hamiltonian(d, RngStream{110, 1}, idx),
                                 oracle::random_hamiltonian(d, RngStream{110, 2}, idx),
                                 {0.1, 0.2, 0.4}};
            auto report = echo::short_time_pcc_gap(cfg);
            // Every 2x2 Hermitian pair generates qubit rotations, where the gap vanishes identically.
            if (d == 2) {
                for (const auto &rec : report.records) {
                    worst_d2 = std::max(worst_d2, rec.gap);
                }
                continue;
            }
            for (size_t i = 0; i + 1 < report.records.size(); i++) {
                const double ratio = report.records[i + 1].gap / report.records[i].gap;
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        }
    }
    // Qubit rotations: the gap is zero at every t, checked on both routes.
    auto half_pauli = [](const qubit::Vec3 &n) {
        Matrix m = 0.5 * (n.x() * pauli::x().mat() + n.y() * pauli::y().mat() + n.z() * pauli::z().mat());
        return HermitianMatrix::from(ComplexMatrix(m));
    };
    echo::EchoConfig qcfg{half_pauli(qubit::axis_at(0.0)), half_pauli(qubit::axis_at(1.2)), {0.1, 0.5, 1.0, 2.0, 3.0}};
    double worst_exact = 0.0;
    for (const auto &rec : echo::short_time_pcc_gap(qcfg).records) {
        worst_exact = std::max(worst_exact, rec.gap);
    }
    MonteCarloOptions opts;
    opts.threads = worker_threads();
    double worst_z = 0.0;
    for (const auto &rec : echo::short_time_pcc_gap(qcfg, EnsembleSpec::haar(200000), RngStream{110, 3}, opts).records) {
        worst_z = std::max(worst_z, rec.gap / std::hypot(*rec.stderr_pcc_exact, *rec.stderr_variance_limit));
    }
    return {lo >= 3 && hi <= 5 && worst_d2 <= 1e-9 && worst_exact <= 1e-9 && worst_z <= 4,
            "d=3 gap halving ratios in [" + fmt(lo) + ", " + fmt(hi) + "], d=2 random pairs max gap " + fmt(worst_d2) +
                ", qubit gap exact " + fmt(worst_exact) +
                ", sampled |z| <= " + fmt(worst_z)};
}

Outcome contrast_floor() {
    auto u1 = qubit::su2_rotation(kPi, qubit::axis_at(0.0));
    auto u2 = qubit::su2_rotation(kPi, qubit::axis_at(kPi / 2));
    PairStatistic fidelities = [&u1, &u2](const Vector &psi, Vector &scratch) {
        scratch.noalias() = u1.mat() * psi;
        const double x1 = std::norm(psi.dot(scratch));
        scratch.noalias() = u2.mat() * psi;
        const double x2 = std::norm(psi.dot(scratch));
        return std::pair{x1, x2};
    };
    MonteCarloOptions opts;
    opts.threads = worker_threads();
    auto m = accumulate(2, EnsembleSpec::haar(1000000), RngStream{111, 0}, fidelities, opts);
    const int grid = 10000;
    double best = std::numeric_limits<double>::infinity();
    double best_kappa = 0.0;
    for (int i = 0; i < grid; i++) {
        const double kappa = -2.0 + 3.0 * i / (grid - 1);
        // Sample variance of X1 - kappa X2.
        const double v = m.var_x() - 2 * kappa * m.cov() + kappa * kappa * m.var_y();
        if (v < best) {
            best = v;
            best_kappa = kappa;
        }
    }
    auto exact = exact_stats(u1, u2);
    const double floor = exact.var1 * (1 - exact.pcc * exact.pcc);
    const double rel = std::abs(best / floor - 1);
    return {rel <= 0.005 && std::abs(floor - 1.0 / 15) <= 1e-14,
            "brute-force min " + fmt(best) + " at kappa " + fmt(best_kappa) + " vs floor " + fmt(floor) +
                " (relative gap " + fmt(rel) + ")"};
}

Outcome affine_rigidity() {
    int flagged = 0;
    double worst_control = 0.0;
    double worst_slope = 0.0;
    std::uint64_t idx = 0;
    const auto ens = EnsembleSpec::haar(2000);
    for (int d : {2, 3, 4}) {
        for (int trial = 0; trial < 100; trial++, idx++) {
            auto h1 = oracle::random_hamiltonian(d, RngStream{112, 1}, idx);
            auto h2 = oracle::random_hamiltonian(d, RngStream{112, 2}, idx);
            flagged += echo::affine_rigidity_fit(h1, h2, ens, RngStream{112, 100 + idx}).negative_slope_feasible;
        }
        for (double alpha : {-1.5, 0.5, 2.0}) {
            auto h1 = oracle::random_hamiltonian(d, RngStream{112, 3}, idx++);
            Matrix shifted = alpha * h1.mat() + 0.7 * Matrix::Identity(d, d);
            auto fit = echo::affine_rigidity_fit(h1, HermitianMatrix::from(ComplexMatrix(shifted)), ens,
                                                 RngStream{112, 200 + idx});
            worst_control = std::max(worst_control, fit.residual_rms);
            worst_slope = std::max(worst_slope, std::abs(fit.slope - alpha * alpha));
        }
    }
    return {flagged == 0 && worst_control < 1e-10 && worst_slope < 1e-9,
            std::to_string(flagged) + "/300 random pairs flagged; control residual " + fmt(worst_control) +
                ", slope error " + fmt(worst_slope)};
}

std::string capture(const std::string &command, int &status) {
    std::string output;
    FILE *pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        status = -1;
        return output;
    }
    std::array<char, 4096> buffer;
    size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        output.append(buffer.data(), got);
    }
    status = pclose(pipe);
    return output;
}

Outcome cli_determinism() {
    const std::string cli = SFCORR_CLI_PATH;
    const std::string data = SFCORR_DATA_DIR;
    const std::string pair = " --u1 " + data + "/qubit_pi_z.json --u2 " + data + "/qubit_pi_x.json";
    const std::vector<std::string> commands{
        "exact" + pair,
        "sample" + pair + " -n 200000 --seed 13",
        "sample --u1 " + data + "/ham_qutrit.json --u2 " + data + "/identity3.json -n 100 --seed 1",
        "qubit --theta1 2.1 --theta2 0.7 --delta 1.1",
        "fringe --theta 2.5 --axis 1,2,2 --grid 91x181",
        "sweep --points 10001",
        "echo --h1 " + data + "/ham_qutrit.json --h2 " + data + "/ham_qutrit_b.json --times 0.1,0.2,0.4 -n 50000 --seed 5",
        "contrast" + pair + " --grid 101",
        "probe" + pair + " -n 5000 --seed 3",
    };
    int compared = 0;
    std::string failures;
    for (const auto &args : commands) {
        std::vector<std::string> outputs;
        std::vector<int> statuses;
        for (const char *threads : {"1", "1", "8", "8"}) {
            int status = 0;
            outputs.push_back(capture(cli + " " + args + " --threads " + threads + " 2>/dev/null", status));
            statuses.push_back(status);
        }
        bool same = true;
        for (size_t i = 1; i < outputs.size(); i++) {
            same &= outputs[i] == outputs[0] && statuses[i] == statuses[0];
        }
        if (!same || outputs[0].empty() && statuses[0] == 0) {
            failures += " [" + args.substr(0, args.find(' ')) + "]";
        }
        compared++;
    }
    return {failures.empty(), std::to_string(compared) + " invocations compared across runs and 1 vs 8 threads" +
                                  (failures.empty() ? "" : "; mismatched:" + failures)};
}

}  // namespace

int main(int argc, char **argv) {
    g_report_dir = "acceptance_artifacts";
    for (int i = 1; i + 1 < argc; i++) {
        if (std::string(argv[i]) == "--report") {
            g_report_dir = argv[i + 1];
        }
    }
    std::filesystem::create_directories(g_report_dir);

    const std::vector<Criterion> criteria{
        {1, "qubit PCC closed form", 1, qubit_closed_form},
        {2, "qubit means and variances", 1, qubit_moments},
        {3, "sharp qubit PCC bounds", 1, qubit_bounds},
        {4, "closed form vs permutation sum", 30, dual_route},
        {5, "Monte Carlo consistency", 600, mc_consistency},
        {6, "sphere moments", 30, sphere_moments},
        {7, "PCC stays above -1", 120, pcc_lower_bound},
        {8, "overlap and complement probes", 60, overlap_and_complement},
        {9, "short-time fidelity scaling", 10, short_time_scaling},
        {10, "short-time PCC limit", 300, short_time_gap},
        {11, "contrast variance floor", 60, contrast_floor},
        {12, "affine rigidity", 120, affine_rigidity},
        {13, "CLI determinism", 60, cli_determinism},
    };

    io::Json summary = io::Json::array();
    int failed = 0;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.body();
        } catch (const std::exception &e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = seconds <= c.budget_seconds;
        const bool pass = outcome.pass && in_budget;
        failed += !pass;
        char timing[64];
        std::snprintf(timing, sizeof(timing), "%.2fs/%gs", seconds, c.budget_seconds);
        std::cout << (pass ? "PASS" : "FAIL") << " " << c.id << " " << c.title << " (" << timing << ") "
                  << outcome.detail << (in_budget ? "" : " [over time budget]") << std::endl;
        summary.push_back(io::Json{{"criterion", c.id},
                                   {"title", c.title},
                                   {"pass", pass},
                                   {"seconds", seconds},
                                   {"budget_seconds", c.budget_seconds},
                                   {"detail", outcome.detail}});
    }
    std::ofstream(g_report_dir / "acceptance.json", std::ios::binary) << summary.dump(2) << "\n";
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
