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

#include "sfcorr/echo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "sfcorr/moments.hpp"
#include "sfcorr/permtrace.hpp"

namespace sfcorr::echo {

namespace {

constexpr double kAffineResidualThreshold = 1e-9;

// Var_psi(H) from the scratch product H psi.
double variance_kernel(const Matrix &h, const Vector &psi, Vector &scratch) {
    scratch.noalias() = h * psi;
    const double mean = psi.dot(scratch).real();
    return std::max(0.0, scratch.squaredNorm() - mean * mean);
}

double real_part(Complex z) {
    return z.real();
}

struct VarianceMoments {
    double mean;
    double second;  // E[V^2]
};

// E[V] and E[V^2] with V = <H^2> - <H>^2 over Haar states.
VarianceMoments variance_moments(const ComplexMatrix &h, const ComplexMatrix &hsq) {
    const int d = h.dim();
    std::array<ComplexMatrix, 1> a{hsq};
    std::array<ComplexMatrix, 2> bb{h, h};
    std::array<ComplexMatrix, 2> aa{hsq, hsq};
    std::array<ComplexMatrix, 3> abb{hsq, h, h};
    std::array<ComplexMatrix, 4> bbbb{h, h, h, h};
    VarianceMoments m;
    m.mean = real_part(moment_contraction(a, d)) - real_part(moment_contraction(bb, d));
    m.second = real_part(moment_contraction(aa, d)) - 2.0 * real_part(moment_contraction(abb, d)) +
               real_part(moment_contraction(bbbb, d));
    return m;
}

std::int64_t require_haar_floor(const EnsembleSpec &ens) {
    if (ens.kind == EnsembleSpec::Kind::HaarState && ens.n_samples < kMinHaarSamples) {
        fail(ErrorCode::OutOfRange, "Haar ensembles need at least 100 samples");
    }
    return ens.n_samples;
}

}  // namespace

void EchoConfig::validate() const {
    require_same_dim(h1.dim(), h2.dim(), "EchoConfig");
    if (times.empty()) {
        fail(ErrorCode::OutOfRange, "EchoConfig needs at least one time");
    }
    for (size_t i = 0; i < times.size(); i++) {
        if (!(times[i] > 0.0) || !std::isfinite(times[i])) {
            fail(ErrorCode::OutOfRange, "interrogation times must be positive and finite");
        }
        if (i > 0 && !(times[i] > times[i - 1])) {
            fail(ErrorCode::OutOfRange, "interrogation times must be strictly increasing");
        }
    }
}

double relative_echo(const UnitaryMatrix &u1, const UnitaryMatrix &u2, const PureState &psi) {
    require_same_dim(u1.dim(), u2.dim(), "relative_echo");
    require_same_dim(u1.dim(), psi.dim(), "relative_echo");
    Vector a = u1.mat() * psi.vec();
    Vector b = u2.mat() * psi.vec();
    return clamp_fidelity(std::norm(b.dot(a)));
}

double hamiltonian_variance(const HermitianMatrix &h, const PureState &psi) {
    require_same_dim(h.dim(), psi.dim(), "hamiltonian_variance");
    Vector scratch(h.dim());
    return variance_kernel(h.mat(), psi.vec(), scratch);
}

std::vector<ShortTimeRow> short_time_check(const HermitianMatrix &h, const PureState &psi,
                                           const std::vector<double> &times) {
    require_same_dim(h.dim(), psi.dim(), "short_time_check");
    const double var = hamiltonian_variance(h, psi);
    std::vector<ShortTimeRow> rows;
    rows.reserve(times.size());
    for (double t : times) {
        const double exact = self_fidelity(evolve(h, t), psi);
        const double quadratic = 1.0 - t * t * var;
        rows.push_back({t, exact, quadratic, std::abs(exact - quadratic)});
    }
    return rows;
}

bool in_short_time_regime(const HermitianMatrix &h, double t) {
    return std::abs(t) * spectral_norm(h) <= 0.5;
}

double variance_of_variance(const HermitianMatrix &h) {
    ComplexMatrix hsq = matmul(h.base(), h.base());
    auto m = variance_moments(h.base(), hsq);
    return m.second - m.mean * m.mean;
}

void require_nontrivial_drive(const HermitianMatrix &h) {
    const double scale = std::pow(frobenius_norm(h.base()), 4);
    const double vv = variance_of_variance(h);
    if (!(vv > tol::variance * std::max(scale, 1e-300))) {
        fail(ErrorCode::DegenerateReadout, "Hamiltonian is proportional to the identity (Var(Var_psi(H)) = " +
                                               std::to_string(vv) + ")");
    }
}

double variance_limit_pcc_exact(const HermitianMatrix &h1, const HermitianMatrix &h2) {
    require_same_dim(h1.dim(), h2.dim(), "variance_limit_pcc_exact");
    require_nontrivial_drive(h1);
    require_nontrivial_drive(h2);
    const int d = h1.dim();
    const ComplexMatrix &b1 = h1.base();
    const ComplexMatrix &b2 = h2.base();
    ComplexMatrix a1 = matmul(b1, b1);
    ComplexMatrix a2 = matmul(b2, b2);

    auto m1 = variance_moments(b1, a1);
    auto m2 = variance_moments(b2, a2);

    std::array<ComplexMatrix, 2> a1a2{a1, a2};
    std::array<ComplexMatrix, 3> a1b2b2{a1, b2, b2};
    std::array<ComplexMatrix, 3> b1b1a2{b1, b1, a2};
    std::array<ComplexMatrix, 4> b1b1b2b2{b1, b1, b2, b2};
    const double cross = real_part(moment_contraction(a1a2, d)) - real_part(moment_contraction(a1b2b2, d)) -
                         real_part(moment_contraction(b1b1a2, d)) + real_part(moment_contraction(b1b1b2b2, d));

    const double var1 = m1.second - m1.mean * m1.mean;
    const double var2 = m2.second - m2.mean * m2.mean;
    const double cov = cross - m1.mean * m2.mean;
    return cov / (std::sqrt(var1) * std::sqrt(var2));
}

VarianceCorrelation variance_limit_pcc(const HermitianMatrix &h1, const HermitianMatrix &h2, const EnsembleSpec &ens,
                                       RngStream stream, const MonteCarloOptions &opts) {
    require_same_dim(h1.dim(), h2.dim(), "variance_limit_pcc");
    require_haar_floor(ens);
    require_nontrivial_drive(h1);
    require_nontrivial_drive(h2);
    const Matrix &a = h1.mat();
    const Matrix &b = h2.mat();
    PairStatistic variances = [&a, &b](const Vector &psi, Vector &scratch) {
        return std::pair{variance_kernel(a, psi, scratch), variance_kernel(b, psi, scratch)};
    };
    BivariateMoments m = accumulate(h1.dim(), ens, stream, variances, opts);
    if (!(m.var_x() >= tol::variance) || !(m.var_y() >= tol::variance)) {
        fail(ErrorCode::DegenerateReadout, "Hamiltonian variance does not fluctuate over the ensemble");
    }
    return VarianceCorrelation{m.pcc(), m.pcc_stderr(), m.count()};
}

ShortTimeReport short_time_pcc_gap(const EchoConfig &cfg) {
    cfg.validate();
    const double limit = variance_limit_pcc_exact(cfg.h1, cfg.h2);
    ShortTimeReport report;
    report.dims = cfg.h1.dim();
    for (double t : cfg.times) {
        auto stats = exact_stats(evolve(cfg.h1, t), evolve(cfg.h2, t));
        report.records.push_back({t, stats.pcc, limit, std::abs(stats.pcc - limit), std::nullopt, std::nullopt});
    }
    return report;
}

ShortTimeReport short_time_pcc_gap(const EchoConfig &cfg, const EnsembleSpec &ens, RngStream stream,
                                   const MonteCarloOptions &opts) {
    cfg.validate();
    const auto limit = variance_limit_pcc(cfg.h1, cfg.h2, ens, stream, opts);
    ShortTimeReport report;
    report.dims = cfg.h1.dim();
    for (double t : cfg.times) {
        auto stats = mc_stats(evolve(cfg.h1, t), evolve(cfg.h2, t), ens, stream, opts);
        report.records.push_back(
            {t, stats.pcc, limit.pcc, std::abs(stats.pcc - limit.pcc), stats.stderr_pcc, limit.stderr_pcc});
    }
    return report;
}

AffineFit affine_rigidity_fit(const HermitianMatrix &h1, const HermitianMatrix &h2, const EnsembleSpec &ens,
                              RngStream stream, const MonteCarloOptions &opts) {
    require_same_dim(h1.dim(), h2.dim(), "affine_rigidity_fit");
    require_haar_floor(ens);
    require_nontrivial_drive(h1);
    require_nontrivial_drive(h2);
    const Matrix &a = h1.mat();
    const Matrix &b = h2.mat();
    PairStatistic variances = [&a, &b](const Vector &psi, Vector &scratch) {
        return std::pair{variance_kernel(a, psi, scratch), variance_kernel(b, psi, scratch)};
    };
    BivariateMoments m = accumulate(h1.dim(), ens, stream, variances, opts);
    if (!(m.var_x() >= tol::variance)) {
        fail(ErrorCode::DegenerateReadout, "Var_psi(H1) does not fluctuate over the ensemble");
    }

    AffineFit fit;
    fit.slope = m.central_sum(1, 1) / m.central_sum(2, 0);
    fit.intercept = m.mean_y() - fit.slope * m.mean_x();

    const double slope = fit.slope;
    const double intercept = fit.intercept;
    PairStatistic residual = [&a, &b, slope, intercept](const Vector &psi, Vector &scratch) {
        const double v1 = variance_kernel(a, psi, scratch);
        const double v2 = variance_kernel(b, psi, scratch);
        const double r = v2 - (slope * v1 + intercept);
        return std::pair{r, r};
    };
    BivariateMoments rm = accumulate(h1.dim(), ens, stream, residual, opts);
    const double n = static_cast<double>(rm.count());
    fit.residual_rms = std::sqrt(rm.central_sum(2, 0) / n + rm.mean_x() * rm.mean_x());
    fit.negative_slope_feasible = fit.slope < 0.0 && fit.residual_rms < kAffineResidualThreshold;
    return fit;
}

}  // namespace sfcorr::echo
