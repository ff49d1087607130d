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

#ifndef SFCORR_RNG_HPP
#define SFCORR_RNG_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <limits>

namespace sfcorr {

/// Identifies a reproducible random stream. Every draw is a pure function of
/// (seed, stream_id, sample index, draw index), so chunking and thread count
/// cannot change the sequence.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    RngStream substream(std::uint64_t id) const {
        return RngStream{seed, id};
    }
};

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., Random123).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Sequential draws belonging to one sample index of a stream. Each call to
/// next_block() consumes one Philox counter value.
class SampleRng {
  public:
    using result_type = std::uint64_t;

    SampleRng(RngStream stream, std::uint64_t sample_index);

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }
    result_type operator()();

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    double normal();
    /// Real and imaginary parts are independent N(0, 1).
    std::complex<double> complex_normal();

  private:
    void refill();

    PhiloxKey key_;
    std::uint64_t sample_;
    std::uint64_t block_ = 0;
    PhiloxCounter buffer_{};
    int used_ = 4;  // u32 words consumed from buffer_
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

}  // namespace sfcorr

#endif
