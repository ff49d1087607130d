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

#ifndef SFCORR_STATS_HPP
#define SFCORR_STATS_HPP

#include <array>
#include <cstdint>
#include <span>

namespace sfcorr {

/// Central co-moment sums of a bivariate sample up to total order four.
///
/// A batch is absorbed with a two-pass update about its own mean; batches are
/// combined with the exact binomial shift to the pooled mean. Merging is
/// deterministic but not bitwise associative, so callers that need
/// reproducibility must fix the merge order.
class BivariateMoments {
  public:
    static constexpr int kOrder = 4;

    /// Replaces the contents with the statistics of one batch.
    static BivariateMoments from_batch(std::span<const double> xs, std::span<const double> ys);

    /// Pools `other` into this accumulator.
    void merge(const BivariateMoments &other);

    std::int64_t count() const noexcept {
        return n_;
    }
    double mean_x() const noexcept {
        return mean_x_;
    }
    double mean_y() const noexcept {
        return mean_y_;
    }
    /// Sum over samples of (x - mean_x)^p (y - mean_y)^q, p + q <= 4.
    double central_sum(int p, int q) const {
        return m_[static_cast<size_t>(p)][static_cast<size_t>(q)];
    }

    /// Unbiased (n - 1) estimators.
    double var_x() const;
    double var_y() const;
    double cov() const;
    double pcc() const;

    /// Delta-method standard error of pcc() from fourth standardized moments:
    /// Var(r) ~ E[(ab - r (a^2 + b^2)/2)^2] / n with a, b standardized.
    double pcc_stderr() const;
    double mean_x_stderr() const;
    double mean_y_stderr() const;

  private:
    std::int64_t n_ = 0;
    double mean_x_ = 0.0;
    double mean_y_ = 0.0;
    std::array<std::array<double, kOrder + 1>, kOrder + 1> m_{};
};

}  // namespace sfcorr

#endif
