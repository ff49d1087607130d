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

#ifndef SFCORR_SAMPLER_HPP
#define SFCORR_SAMPLER_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "sfcorr/matcore.hpp"
#include "sfcorr/moments.hpp"
#include "sfcorr/rng.hpp"
#include "sfcorr/stats.hpp"

namespace sfcorr {

inline constexpr std::int64_t kMinHaarSamples = 100;

/// Input-state ensemble for Monte Carlo estimates.
struct EnsembleSpec {
    enum class Kind { HaarState, UserStates };

    Kind kind = Kind::HaarState;
    std::int64_t n_samples = 0;
    std::vector<PureState> states;  // UserStates only

    static EnsembleSpec haar(std::int64_t n);
    /// Throws InvalidEnsemble for an empty list or mixed dimensions.
    static EnsembleSpec user(std::vector<PureState> states);

    /// Throws unless the ensemble is usable in dimension d.
    void validate(int d) const;
};

/// Scheduling knobs. Results never depend on `threads`; they do depend on
/// `chunk_size`, which fixes the merge tree.
struct MonteCarloOptions {
    std::int64_t chunk_size = 8192;
    unsigned threads = 1;
};

PureState haar_state(int d, SampleRng &rng);
PureState haar_state(int d, RngStream stream, std::uint64_t index);

/// QR of a complex Ginibre matrix with the phases of diag(R) moved into Q.
UnitaryMatrix haar_unitary(int d, SampleRng &rng);
UnitaryMatrix haar_unitary(int d, RngStream stream, std::uint64_t index);

/// Evaluates a pair of real statistics on one input state. `scratch` is a
/// per-worker buffer of length d that the callback may overwrite.
using PairStatistic = std::function<std::pair<double, double>(const Vector &psi, Vector &scratch)>;

/// Streams `statistic` over the ensemble in fixed-size chunks. Chunk c covers
/// sample indices [c*chunk, (c+1)*chunk) and chunks are merged left to right,
/// so the result is bit-identical for any thread count.
BivariateMoments accumulate(int d, const EnsembleSpec &ens, RngStream stream, const PairStatistic &statistic,
                            const MonteCarloOptions &opts = {});

/// Monte Carlo estimate of the self-fidelity statistics of (u1, u2).
/// Haar ensembles need at least kMinHaarSamples samples.
CorrelationReport mc_stats(const UnitaryMatrix &u1, const UnitaryMatrix &u2, const EnsembleSpec &ens,
                           RngStream stream, const MonteCarloOptions &opts = {});

/// Witness search for |<psi|U2^dag U1|psi>|. Haar samples are complemented by
/// every eigenvector of M = U2^dag U1, where the modulus equals |lambda| = 1.
struct OverlapProbe {
    double max_overlap = 0.0;
    double min_overlap = 1.0;
    PureState argmax_state;
};

OverlapProbe min_overlap_probe(const UnitaryMatrix &u1, const UnitaryMatrix &u2, std::int64_t n, RngStream stream);

/// max over psi of |X1(psi) + X2(psi) - 1| over n Haar samples plus the
/// eigenvectors of U1 and of U2.
double complement_violation(const UnitaryMatrix &u1, const UnitaryMatrix &u2, std::int64_t n, RngStream stream);

}  // namespace sfcorr

#endif
