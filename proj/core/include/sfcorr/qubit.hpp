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

#ifndef SFCORR_QUBIT_HPP
#define SFCORR_QUBIT_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sfcorr/matcore.hpp"

namespace sfcorr::qubit {

using Vec3 = Eigen::Vector3d;

/// Single-qubit pulse exp(-(i/2) theta n.sigma) with theta in (0, 2 pi).
class RamseyControl {
  public:
    /// Throws InvalidAxis if | |n| - 1 | > 1e-12 and OutOfRange if theta is
    /// not strictly inside (0, 2 pi) by more than 1e-12.
    RamseyControl(double theta, Vec3 axis);

    double theta() const noexcept {
        return theta_;
    }
    const Vec3 &axis() const noexcept {
        return axis_;
    }
    /// sin^2(theta/2), the fringe contrast.
    double amplitude() const;

  private:
    double theta_;
    Vec3 axis_;
};

/// Point on the unit Bloch sphere, stored in Cartesian form.
class BlochPoint {
  public:
    /// Throws InvalidAxis if | |r| - 1 | > 1e-12.
    explicit BlochPoint(Vec3 r);
    static BlochPoint from_angles(double polar, double azimuth);

    const Vec3 &r() const noexcept {
        return r_;
    }

  private:
    Vec3 r_;
};

/// Unit vector in the x-z plane at angle delta from +z.
Vec3 axis_at(double delta);

/// cos(theta/2) 1 - i sin(theta/2) n.sigma for any real theta (no range check).
UnitaryMatrix su2_rotation(double theta, const Vec3 &axis);
UnitaryMatrix rotation(const RamseyControl &c);

/// (cos(polar/2), e^{i azimuth} sin(polar/2))
PureState state_of(const BlochPoint &p);
/// Inverse of state_of up to global phase.
Vec3 bloch_vector(const PureState &psi);

/// 1 - sin^2(theta/2) (1 - (n.r)^2)
double fringe(const RamseyControl &c, const BlochPoint &p);

/// (3 cos^2 delta - 1) / 2, independent of the pulse angles.
double closed_form_pcc(double delta);

struct FringeRow {
    double polar;
    double azimuth;
    double x;
    double y;
    double z;
    double fidelity;
};

/// Regular latitude-longitude grid. Both poles are included and the seam
/// azimuth appears twice (0 and 2 pi). Throws GridTooSmall below 2x2.
std::vector<FringeRow> fringe_grid(const RamseyControl &c, int n_polar, int n_azimuth);

/// (delta, closed_form_pcc(delta)) for delta uniformly spanning [0, pi].
std::vector<std::pair<double, double>> pcc_sweep(int n_points);

}  // namespace sfcorr::qubit

#endif
