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

#include "sfcorr/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sfcorr::qubit {

namespace {
constexpr double kUnitTolerance = 1e-12;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

RamseyControl::RamseyControl(double theta, Vec3 axis) : theta_(theta), axis_(std::move(axis)) {
    if (!axis_.allFinite() || std::abs(axis_.norm() - 1.0) > kUnitTolerance) {
        fail(ErrorCode::InvalidAxis, "rotation axis must be a unit vector");
    }
    if (!(theta_ > kUnitTolerance && theta_ < kTwoPi - kUnitTolerance)) {
        fail(ErrorCode::OutOfRange, "rotation angle must lie in (0, 2 pi), got " + std::to_string(theta_));
    }
}

double RamseyControl::amplitude() const {
    const double s = std::sin(0.5 * theta_);
    return s * s;
}

BlochPoint::BlochPoint(Vec3 r) : r_(std::move(r)) {
    if (!r_.allFinite() || std::abs(r_.norm() - 1.0) > kUnitTolerance) {
        fail(ErrorCode::InvalidAxis, "Bloch vector must have unit length");
    }
}

BlochPoint BlochPoint::from_angles(double polar, double azimuth) {
    const double s = std::sin(polar);
    return BlochPoint(Vec3(s * std::cos(azimuth), s * std::sin(azimuth), std::cos(polar)));
}

Vec3 axis_at(double delta) {
    return Vec3(std::sin(delta), 0.0, std::cos(delta));
}

UnitaryMatrix su2_rotation(double theta, const Vec3 &axis) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const Complex i(0.0, 1.0);
    Matrix m(2, 2);
    m(0, 0) = Complex(c, -s * axis.z());
    m(0, 1) = -i * s * Complex(axis.x(), -axis.y());
    m(1, 0) = -i * s * Complex(axis.x(), axis.y());
    m(1, 1) = Complex(c, s * axis.z());
    return UnitaryMatrix::from(ComplexMatrix(std::move(m)));
}

UnitaryMatrix rotation(const RamseyControl &c) {
    return su2_rotation(c.theta(), c.axis());
}

PureState state_of(const BlochPoint &p) {
    const Vec3 &r = p.r();
    const double polar = std::acos(std::clamp(r.z(), -1.0, 1.0));
    const double azimuth = std::atan2(r.y(), r.x());
    Vector v(2);
    v(0) = std::cos(0.5 * polar);
    v(1) = std::polar(std::sin(0.5 * polar), azimuth);
    return PureState::normalized(std::move(v));
}

Vec3 bloch_vector(const PureState &psi) {
    if (psi.dim() != 2) {
        fail(ErrorCode::DimensionMismatch, "Bloch vector needs a qubit state");
    }
    const Complex a = psi[0];
    const Complex b = psi[1];
    const Complex ab = std::conj(a) * b;
    return Vec3(2.0 * ab.real(), 2.0 * ab.imag(), std::norm(a) - std::norm(b));
}

double fringe(const RamseyControl &c, const BlochPoint &p) {
    const double proj = c.axis().dot(p.r());
    return 1.0 - c.amplitude() * (1.0 - proj * proj);
}

double closed_form_pcc(double delta) {
    const double c = std::cos(delta);
    return 0.5 * (3.0 * c * c - 1.0);
}

std::vector<FringeRow> fringe_grid(const RamseyControl &c, int n_polar, int n_azimuth) {
    if (n_polar < 2 || n_azimuth < 2) {
        fail(ErrorCode::GridTooSmall, "fringe grid needs at least 2 points per axis");
    }
    std::vector<FringeRow> rows;
    rows.reserve(static_cast<size_t>(n_polar) * static_cast<size_t>(n_azimuth));
    for (int i = 0; i < n_polar; i++) {
        const double polar = std::numbers::pi * i / (n_polar - 1);
        for (int j = 0; j < n_azimuth; j++) {
            const double azimuth = kTwoPi * j / (n_azimuth - 1);
            BlochPoint p = BlochPoint::from_angles(polar, azimuth);
            rows.push_back({polar, azimuth, p.r().x(), p.r().y(), p.r().z(), fringe(c, p)});
        }
    }
    return rows;
}

std::vector<std::pair<double, double>> pcc_sweep(int n_points) {
    if (n_points < 2) {
        fail(ErrorCode::GridTooSmall, "sweep needs at least 2 points");
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<size_t>(n_points));
    for (int i = 0; i < n_points; i++) {
        const double delta = std::numbers::pi * i / (n_points - 1);
        out.emplace_back(delta, closed_form_pcc(delta));
    }
    return out;
}

}  // namespace sfcorr::qubit
