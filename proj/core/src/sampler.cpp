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

#include "sfcorr/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace sfcorr {

namespace {

void fill_haar_state(SampleRng &rng, Vector &out) {
    for (Eigen::Index i = 0; i < out.size(); i++) {
        out(i) = rng.complex_normal();
    }
    out /= out.norm();
}

std::int64_t ensemble_size(const EnsembleSpec &ens) {
    return ens.kind == EnsembleSpec::Kind::HaarState ? ens.n_samples : static_cast<std::int64_t>(ens.states.size());
}

std::vector<PureState> eigenvector_states(const Matrix &m) {
    Eigen::ComplexEigenSolver<Matrix> solver(m, true);
    if (solver.info() != Eigen::Success) {
        fail(ErrorCode::ConvergenceFailure, "eigensolver did not converge");
    }
    std::vector<PureState> out;
    for (Eigen::Index k = 0; k < m.cols(); k++) {
        out.push_back(PureState::normalized(solver.eigenvectors().col(k)));
    }
    return out;
}

}  // namespace

EnsembleSpec EnsembleSpec::haar(std::int64_t n) {
    if (n < 1) {
        fail(ErrorCode::OutOfRange, "ensemble needs at least one sample");
    }
    EnsembleSpec e;
    e.kind = Kind::HaarState;
    e.n_samples = n;
    return e;
}

EnsembleSpec EnsembleSpec::user(std::vector<PureState> states) {
    if (states.empty()) {
        fail(ErrorCode::InvalidEnsemble, "user ensemble is empty");
    }
    for (const auto &s : states) {
        if (s.dim() != states.front().dim()) {
            fail(ErrorCode::InvalidEnsemble, "user ensemble mixes state dimensions");
        }
    }
    EnsembleSpec e;
    e.kind = Kind::UserStates;
    e.n_samples = static_cast<std::int64_t>(states.size());
    e.states = std::move(states);
    return e;
}

void EnsembleSpec::validate(int d) const {
    if (kind == Kind::HaarState) {
        if (n_samples < 1) {
            fail(ErrorCode::OutOfRange, "ensemble needs at least one sample");
        }
        return;
    }
    if (states.empty()) {
        fail(ErrorCode::InvalidEnsemble, "user ensemble is empty");
    }
    for (const auto &s : states) {
        if (s.dim() != d) {
            fail(ErrorCode::DimensionMismatch,
                 "ensemble state of dimension " + std::to_string(s.dim()) + " used in dimension " + std::to_string(d));
        }
    }
}

PureState haar_state(int d, SampleRng &rng) {
    if (d < 1) {
        fail(ErrorCode::OutOfRange, "haar_state needs d >= 1");
    }
    Vector v(d);
    fill_haar_state(rng, v);
    return PureState::normalized(std::move(v));
}

PureState haar_state(int d, RngStream stream, std::uint64_t index) {
    SampleRng rng(stream, index);
    return haar_state(d, rng);
}

UnitaryMatrix haar_unitary(int d, SampleRng &rng) {
    if (d < 1) {
        fail(ErrorCode::OutOfRange, "haar_unitary needs d >= 1");
    }
    Matrix z(d, d);
    for (int c = 0; c < d; c++) {
        for (int r = 0; r < d; r++) {
            z(r, c) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix &packed = qr.matrixQR();
    for (int k = 0; k < d; k++) {
        Complex rkk = packed(k, k);
        double mag = std::abs(rkk);
        q.col(k) *= mag > 0.0 ? rkk / mag : Complex(1.0, 0.0);
    }
    return UnitaryMatrix::from(ComplexMatrix(std::move(q)));
}

UnitaryMatrix haar_unitary(int d, RngStream stream, std::uint64_t index) {
    SampleRng rng(stream, index);
    return haar_unitary(d, rng);
}

BivariateMoments accumulate(int d, const EnsembleSpec &ens, RngStream stream, const PairStatistic &statistic,
                            const MonteCarloOptions &opts) {
    ens.validate(d);
    if (opts.chunk_size < 1) {
        fail(ErrorCode::OutOfRange, "chunk_size must be positive");
    }
    const std::int64_t n = ensemble_size(ens);
    const std::int64_t chunk = opts.chunk_size;
    const std::int64_t num_chunks = (n + chunk - 1) / chunk;
    std::vector<BivariateMoments> partial(static_cast<size_t>(num_chunks));

    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        try {
            Vector psi(d);
            Vector scratch(d);
            std::vector<double> xs;
            std::vector<double> ys;
            for (std::int64_t c = next.fetch_add(1); c < num_chunks; c = next.fetch_add(1)) {
                const std::int64_t begin = c * chunk;
                const std::int64_t end = std::min(n, begin + chunk);
                xs.clear();
                ys.clear();
                for (std::int64_t i = begin; i < end; i++) {
                    if (ens.kind == EnsembleSpec::Kind::HaarState) {
                        SampleRng rng(stream, static_cast<std::uint64_t>(i));
                        fill_haar_state(rng, psi);
                    } else {
                        psi = ens.states[static_cast<size_t>(i)].vec();
                    }
                    auto [x, y] = statistic(psi, scratch);
                    xs.push_back(x);
                    ys.push_back(y);
                }
                partial[static_cast<size_t>(c)] = BivariateMoments::from_batch(xs, ys);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) {
                error = std::current_exception();
            }
            next.store(num_chunks);
        }
    };

    const auto workers = static_cast<unsigned>(
        std::clamp<std::int64_t>(static_cast<std::int64_t>(opts.threads), 1, std::max<std::int64_t>(num_chunks, 1)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; t++) {
            pool.emplace_back(worker);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }

    BivariateMoments total;
    for (const auto &p : partial) {
        total.merge(p);
    }
    return total;
}

CorrelationReport mc_stats(const UnitaryMatrix &u1, const UnitaryMatrix &u2, const EnsembleSpec &ens,
                           RngStream stream, const MonteCarloOptions &opts) {
    require_same_dim(u1.dim(), u2.dim(), "mc_stats");
    if (ens.kind == EnsembleSpec::Kind::HaarState && ens.n_samples < kMinHaarSamples) {
        fail(ErrorCode::OutOfRange, "mc_stats needs at least 100 Haar samples");
    }
    const Matrix &a = u1.mat();
    const Matrix &b = u2.mat();
    PairStatistic fidelities = [&a, &b](const Vector &psi, Vector &scratch) {
        scratch.noalias() = a * psi;
        const double x1 = clamp_fidelity(std::norm(psi.dot(scratch)));
        scratch.noalias() = b * psi;
        const double x2 = clamp_fidelity(std::norm(psi.dot(scratch)));
        return std::pair{x1, x2};
    };
    BivariateMoments m = accumulate(u1.dim(), ens, stream, fidelities, opts);

    CorrelationReport r = make_report(m.mean_x(), m.mean_y(), m.var_x(), m.var_y(), m.cov(), Method::MonteCarlo);
    r.pcc = m.pcc();
    r.stderr_mean1 = m.mean_x_stderr();
    r.stderr_mean2 = m.mean_y_stderr();
    r.stderr_pcc = m.pcc_stderr();
    r.n_samples = m.count();
    return r;
}

OverlapProbe min_overlap_probe(const UnitaryMatrix &u1, const UnitaryMatrix &u2, std::int64_t n, RngStream stream) {
    require_same_dim(u1.dim(), u2.dim(), "min_overlap_probe");
    const int d = u1.dim();
    const Matrix m = u2.mat().adjoint() * u1.mat();

    OverlapProbe out{0.0, 1.0, PureState::basis(d, 0)};
    auto consider = [&](const PureState &psi) {
        const double overlap = std::sqrt(clamp_fidelity(std::norm(psi.vec().dot(m * psi.vec()))));
        if (overlap > out.max_overlap) {
            out.max_overlap = overlap;
            out.argmax_state = psi;
        }
        out.min_overlap = std::min(out.min_overlap, overlap);
    };
    for (std::int64_t i = 0; i < n; i++) {
        consider(haar_state(d, stream, static_cast<std::uint64_t>(i)));
    }
    for (const auto &psi : eigenvector_states(m)) {
        consider(psi);
    }
    return out;
}

double complement_violation(const UnitaryMatrix &u1, const UnitaryMatrix &u2, std::int64_t n, RngStream stream) {
    require_same_dim(u1.dim(), u2.dim(), "complement_violation");
    const int d = u1.dim();
    double worst = 0.0;
    auto consider = [&](const PureState &psi) {
        worst = std::max(worst, std::abs(self_fidelity(u1, psi) + self_fidelity(u2, psi) - 1.0));
    };
    for (std::int64_t i = 0; i < n; i++) {
        consider(haar_state(d, stream, static_cast<std::uint64_t>(i)));
    }
    for (const auto &psi : eigenvector_states(u1.mat())) {
        consider(psi);
    }
    for (const auto &psi : eigenvector_states(u2.mat())) {
        consider(psi);
    }
    return worst;
}

}  // namespace sfcorr
