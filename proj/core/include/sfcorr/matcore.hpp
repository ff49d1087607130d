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

#ifndef SFCORR_MATCORE_HPP
#define SFCORR_MATCORE_HPP

#include <complex>
#include <span>

#include <Eigen/Dense>

#include "sfcorr/error.hpp"

namespace sfcorr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Numerical acceptance thresholds shared by every module. Dimension-scaled
/// entries track the backward error of double-precision QR and eigensolvers.
namespace tol {
inline double unitary(int d) {
    return 1e-10 * d;
}
inline double hermitian(int d) {
    return 1e-12 * d;
}
inline constexpr double norm = 1e-12;
inline constexpr double clamp = 1e-12;
inline double eig(double frobenius) {
    return 1e-10 * frobenius;
}
}  // namespace tol

/// Dense square complex operator with finite entries.
class ComplexMatrix {
  public:
    explicit ComplexMatrix(Matrix entries);

    static ComplexMatrix identity(int d);
    static ComplexMatrix zero(int d);
    /// `data` holds d*d entries in row-major order.
    static ComplexMatrix from_row_major(int d, std::span<const Complex> data);

    int dim() const noexcept {
        return static_cast<int>(m_.rows());
    }
    const Matrix &mat() const noexcept {
        return m_;
    }
    Complex operator()(int row, int col) const {
        return m_(row, col);
    }

  private:
    Matrix m_;
};

class UnitaryMatrix {
  public:
    /// Throws NotUnitary when ||U^dag U - 1||_F exceeds tol::unitary(d).
    static UnitaryMatrix from(ComplexMatrix m);
    static UnitaryMatrix identity(int d);

    int dim() const noexcept {
        return base_.dim();
    }
    const Matrix &mat() const noexcept {
        return base_.mat();
    }
    const ComplexMatrix &base() const noexcept {
        return base_;
    }
    operator const ComplexMatrix &() const noexcept {
        return base_;
    }
    double unitarity_residual() const noexcept {
        return residual_;
    }

  private:
    UnitaryMatrix(ComplexMatrix m, double residual) : base_(std::move(m)), residual_(residual) {
    }

    ComplexMatrix base_;
    double residual_;
};

class HermitianMatrix {
  public:
    /// Throws NotHermitian when ||H - H^dag||_F exceeds tol::hermitian(d).
    static HermitianMatrix from(ComplexMatrix m);

    int dim() const noexcept {
        return base_.dim();
    }
    const Matrix &mat() const noexcept {
        return base_.mat();
    }
    const ComplexMatrix &base() const noexcept {
        return base_;
    }
    operator const ComplexMatrix &() const noexcept {
        return base_;
    }
    double hermiticity_residual() const noexcept {
        return residual_;
    }

  private:
    HermitianMatrix(ComplexMatrix m, double residual) : base_(std::move(m)), residual_(residual) {
    }

    ComplexMatrix base_;
    double residual_;
};

/// Unit vector in C^d.
class PureState {
  public:
    /// Throws NotNormalized unless | ||amplitudes|| - 1 | <= tol::norm.
    explicit PureState(Vector amplitudes);

    /// Rescales to unit norm; throws NotNormalized for the zero vector.
    static PureState normalized(Vector amplitudes);
    static PureState basis(int d, int k);

    int dim() const noexcept {
        return static_cast<int>(v_.size());
    }
    const Vector &vec() const noexcept {
        return v_;
    }
    Complex operator[](int i) const {
        return v_(i);
    }

  private:
    Vector v_;
};

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
Complex trace(const ComplexMatrix &a);
ComplexMatrix adjoint(const ComplexMatrix &a);
ComplexMatrix scale(const ComplexMatrix &a, Complex factor);
double frobenius_norm(const ComplexMatrix &a);

UnitaryMatrix adjoint(const UnitaryMatrix &u);
/// a * b
UnitaryMatrix compose(const UnitaryMatrix &a, const UnitaryMatrix &b);
/// e^{i phi} u
UnitaryMatrix with_phase(const UnitaryMatrix &u, double phi);
/// v u v^dag
UnitaryMatrix conjugate_by(const UnitaryMatrix &v, const UnitaryMatrix &u);
PureState apply(const UnitaryMatrix &u, const PureState &psi);

struct HermitianEigen {
    Eigen::VectorXd values;  // ascending
    UnitaryMatrix vectors;   // columns are eigenvectors
};

HermitianEigen herm_eig(const HermitianMatrix &h);
double spectral_norm(const HermitianMatrix &h);

/// exp(-i h t). Exactly the identity at t == 0.
UnitaryMatrix evolve(const HermitianMatrix &h, double t);

/// <psi| a |psi>
Complex expectation(const ComplexMatrix &a, const PureState &psi);

/// |<psi|U|psi>|^2, one mat-vec plus one inner product.
double self_fidelity(const UnitaryMatrix &u, const PureState &psi);

void require_same_dim(int a, int b, const char *what);

/// Maps a computed |<psi|U|psi>|^2 into [0, 1]; an overshoot above 1 larger
/// than tol::clamp throws OutOfRange.
double clamp_fidelity(double x);

}  // namespace sfcorr

#endif
