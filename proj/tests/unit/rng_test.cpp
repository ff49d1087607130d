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

#include "sfcorr/rng.hpp"

#include <cmath>
#include <set>

#include "gtest/gtest.h"

using namespace sfcorr;

TEST(rng, philox_known_answers) {
    EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
              (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(rng, reproducible_by_coordinates) {
    RngStream s{123, 4};
    SampleRng a(s, 17);
    SampleRng b(s, 17);
    for (int i = 0; i < 100; i++) {
        EXPECT_EQ(a(), b());
    }
    SampleRng c(s, 18);
    SampleRng d(s.substream(5), 17);
    SampleRng e(RngStream{124, 4}, 17);
    SampleRng f(s, 17);
    const auto first = f();
    EXPECT_NE(first, c());
    EXPECT_NE(first, d());
    EXPECT_NE(first, e());
}

TEST(rng, uniform_open_interval_and_moments) {
    SampleRng rng(RngStream{1, 1}, 0);
    const int n = 200000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; i++) {
        const double u = rng.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sum_sq += u * u;
    }
    EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(sum_sq / n, 1.0 / 3, 0.003);
}

TEST(rng, normal_moments) {
    SampleRng rng(RngStream{2, 1}, 0);
    const int n = 200000;
    double m1 = 0, m2 = 0, m4 = 0;
    for (int i = 0; i < n; i++) {
        const double x = rng.normal();
        m1 += x;
        m2 += x * x;
        m4 += x * x * x * x;
    }
    EXPECT_NEAR(m1 / n, 0.0, 4 / std::sqrt(n));
    EXPECT_NEAR(m2 / n, 1.0, 4 * std::sqrt(2.0 / n));
    EXPECT_NEAR(m4 / n, 3.0, 4 * std::sqrt(96.0 / n));

    SampleRng crng(RngStream{2, 2}, 0);
    double re2 = 0, im2 = 0, cross = 0;
    for (int i = 0; i < n; i++) {
        const auto z = crng.complex_normal();
        re2 += z.real() * z.real();
        im2 += z.imag() * z.imag();
        cross += z.real() * z.imag();
    }
    EXPECT_NEAR(re2 / n, 1.0, 4 * std::sqrt(2.0 / n));
    EXPECT_NEAR(im2 / n, 1.0, 4 * std::sqrt(2.0 / n));
    EXPECT_NEAR(cross / n, 0.0, 4 / std::sqrt(n));
}

TEST(rng, distinct_sample_streams) {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t i = 0; i < 1000; i++) {
        SampleRng rng(RngStream{99, 0}, i);
        firsts.insert(rng());
    }
    EXPECT_EQ(firsts.size(), 1000u);
}
