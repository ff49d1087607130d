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

#ifndef SFCORR_ECHO_HPP
#define SFCORR_ECHO_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "sfcorr/matcore.hpp"
#include "sfcorr/sampler.hpp"

namespace sfcorr::echo {

/// Two drives exp(-i H_j t) sharing the interrogation times.
struct EchoConfig {
    HermitianMatrix h1;
    HermitianMatrix h2;
    std::vector<double> times;

    /// Throws DimensionMismatch, or OutOfRange unless times are strictly
    /// positive and strictly increasing.
    void validate() const;
};

/// |<psi| U2^dag U1 |psi>|^2
double relative_echo(const UnitaryMatrix &u1, const UnitaryMatrix &u2, const PureState &psi);

/// <H^2> - <H>^2, clamped at 0.
double hamiltonian_variance(const HermitianMatrix &h, const PureState &psi);

struct ShortTimeRow {
    double t;
    double x_exact;
    double x_quadratic;  // 1 - t^2 Var_psi(H)
    double residual;     // |x_exact - x_quadratic|, O(t^4)
};

std::vector<ShortTimeRow> short_time_check(const HermitianMatrix &h, const PureState &psi,
                                           const std::vector<double> &times);

/// True when t * ||H||_spectral <= 0.5, where the t^2 / t^4 scaling windows
/// are asserted.
bool in_short_time_regime(const HermitianMatrix &h, double t);

/// Var over Haar states of Var_psi(H), evaluated exactly through S_k sums.
double variance_of_variance(const HermitianMatrix &h);

/// Throws DegenerateReadout when Var(Var_psi(H)) is negligible relative to
/// ||H||_F^4, i.e. H is proportional to the identity.
void require_nontrivial_drive(const HermitianMatrix &h);

struct VarianceCorrelation {
    double pcc = 0.0;
    std::optional<double> stderr_pcc;
    std::optional<std::int64_t> n_samples;
};

/// Pearson correlation of Var_psi(H1) and Var_psi(H2) over the ensemble,
/// estimated with the sampler's streaming moments.
VarianceCorrelation variance_limit_pcc(const HermitianMatrix &h1, const HermitianMatrix &h2, const EnsembleSpec &ens,
                                       RngStream stream, const MonteCarloOptions &opts = {});

/// Same correlation over Haar-random states, exact via moment contractions
/// of (H, H^2) words up to k = 4.
double variance_limit_pcc_exact(const HermitianMatrix &h1, const HermitianMatrix &h2);

struct ShortTimeRecord {
    double t = 0.0;
    double pcc_exact = 0.0;
    double pcc_variance_limit = 0.0;
    double gap = 0.0;
    std::optional<double> stderr_pcc_exact;
    std::optional<double> stderr_variance_limit;
};

struct ShortTimeReport {
    int dims = 0;
    std::vector<ShortTimeRecord> records;  // ordered by t
};

/// Exact route: exact_stats(evolve(H1, t), evolve(H2, t)) against the exact
/// variance-limit correlation. gap(t) = O(t^2).
ShortTimeReport short_time_pcc_gap(const EchoConfig &cfg);

/// Monte Carlo route over `ens`; both correlations use the same samples.
ShortTimeReport short_time_pcc_gap(const EchoConfig &cfg, const EnsembleSpec &ens, RngStream stream,
                                   const MonteCarloOptions &opts = {});

struct AffineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    bool negative_slope_feasible = false;  // slope < 0 and residual_rms < 1e-9
};

/// Least-squares fit Var_psi(H2) ~ slope * Var_psi(H1) + intercept over the
/// ensemble. The residual is recomputed in a second pass over the same
/// counter-based draws.
AffineFit affine_rigidity_fit(const HermitianMatrix &h1, const HermitianMatrix &h2, const EnsembleSpec &ens,
                              RngStream stream, const MonteCarloOptions &opts = {});

}  // namespace sfcorr::echo

#endif
