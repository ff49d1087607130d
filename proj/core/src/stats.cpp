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

#include "sfcorr/stats.hpp"

#include <algorithm>
#include <cmath>

#include "sfcorr/error.hpp"

namespace sfcorr {

namespace {

constexpr std::array<std::array<double, 5>, 5> kBinomial{{
    {1, 0, 0, 0, 0},
    {1, 1, 0, 0, 0},
    {1, 2, 1, 0, 0},
    {1, 3, 3, 1, 0},
    {1, 4, 6, 4, 1},
}};

using MomentTable = std::array<std::array<double, 5>, 5>;

// Re-centres central sums `m` by (dx, dy) where dx = old_mean - new_mean.
MomentTable shifted(const MomentTable &m, double dx, double dy) {
    MomentTable out{};
    std::array<double, 5> px{1, dx, dx * dx, dx * dx * dx, dx * dx * dx * dx};
    std::array<double, 5> py{1, dy, dy * dy, dy * dy * dy, dy * dy * dy * dy};
    for (int p = 0; p <= 4; p++) {
        for (int q = 0; p + q <= 4; q++) {
            double s = 0.0;
            for (int i = 0; i <= p; i++) {
                for (int j = 0; j <= q; j++) {
                    s += kBinomial[p][i] * kBinomial[q][j] * px[static_cast<size_t>(p - i)] *
                         py[static_cast<size_t>(q - j)] * m[static_cast<size_t>(i)][static_cast<size_t>(j)];
                }
            }
            out[static_cast<size_t>(p)][static_cast<size_t>(q)] = s;
        }
    }
    return out;
}

}  // namespace

BivariateMoments BivariateMoments::from_batch(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        fail(ErrorCode::DimensionMismatch, "bivariate batch with unequal lengths");
    }
    BivariateMoments out;
    out.n_ = static_cast<std::int64_t>(xs.size());
    if (xs.empty()) {
        return out;
    }
    double sx = 0.0;
    double sy = 0.0;
    for (size_t i = 0; i < xs.size(); i++) {
        sx += xs[i];
        sy += ys[i];
    }
    out.mean_x_ = sx / static_cast<double>(xs.size());
    out.mean_y_ = sy / static_cast<double>(ys.size());
    for (size_t i = 0; i < xs.size(); i++) {
        const double a = xs[i] - out.mean_x_;
        const double b = ys[i] - out.mean_y_;
        const double a2 = a * a;
        const double b2 = b * b;
        out.m_[2][0] += a2;
        out.m_[0][2] += b2;
        out.m_[1][1] += a * b;
        out.m_[3][0] += a2 * a;
        out.m_[0][3] += b2 * b;
        out.m_[2][1] += a2 * b;
        out.m_[1][2] += a * b2;
        out.m_[4][0] += a2 * a2;
        out.m_[0][4] += b2 * b2;
        out.m_[3][1] += a2 * a * b;
        out.m_[1][3] += a * b2 * b;
        out.m_[2][2] += a2 * b2;
    }
    out.m_[0][0] = static_cast<double>(out.n_);
    return out;
}

void BivariateMoments::merge(const BivariateMoments &other) {
    if (other.n_ == 0) {
        return;
    }
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double n = na + nb;
    const double mx = mean_x_ + (other.mean_x_ - mean_x_) * (nb / n);
    const double my = mean_y_ + (other.mean_y_ - mean_y_) * (nb / n);
    MomentTable a = shifted(m_, mean_x_ - mx, mean_y_ - my);
    MomentTable b = shifted(other.m_, other.mean_x_ - mx, other.mean_y_ - my);
    for (int p = 0; p <= 4; p++) {
        for (int q = 0; p + q <= 4; q++) {
            m_[static_cast<size_t>(p)][static_cast<size_t>(q)] =
                a[static_cast<size_t>(p)][static_cast<size_t>(q)] + b[static_cast<size_t>(p)][static_cast<size_t>(q)];
        }
    }
    // First-order sums about the pooled mean vanish analytically.
    m_[1][0] = 0.0;
    m_[0][1] = 0.0;
    n_ += other.n_;
    mean_x_ = mx;
    mean_y_ = my;
}

double BivariateMoments::var_x() const {
    return n_ > 1 ? m_[2][0] / static_cast<double>(n_ - 1) : 0.0;
}

double BivariateMoments::var_y() const {
    return n_ > 1 ? m_[0][2] / static_cast<double>(n_ - 1) : 0.0;
}

double BivariateMoments::cov() const {
    return n_ > 1 ? m_[1][1] / static_cast<double>(n_ - 1) : 0.0;
}

double BivariateMoments::pcc() const {
    return m_[1][1] / (std::sqrt(m_[2][0]) * std::sqrt(m_[0][2]));
}

double BivariateMoments::pcc_stderr() const {
    const double n = static_cast<double>(n_);
    const double s20 = m_[2][0] / n;
    const double s02 = m_[0][2] / n;
    const double r = pcc();
    const double m22 = m_[2][2] / n / (s20 * s02);
    const double m31 = m_[3][1] / n / (s20 * std::sqrt(s20 * s02));
    const double m13 = m_[1][3] / n / (s02 * std::sqrt(s20 * s02));
    const double m40 = m_[4][0] / n / (s20 * s20);
    const double m04 = m_[0][4] / n / (s02 * s02);
    double v = m22 - r * (m31 + m13) + 0.25 * r * r * (m40 + 2.0 * m22 + m04);
    return std::sqrt(std::max(v, 0.0) / n);
}

double BivariateMoments::mean_x_stderr() const {
    return std::sqrt(var_x() / static_cast<double>(n_));
}

double BivariateMoments::mean_y_stderr() const {
    return std::sqrt(var_y() / static_cast<double>(n_));
}

}  // namespace sfcorr
