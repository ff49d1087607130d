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

#include "sfcorr/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sfcorr {

double clamp_fidelity(double x) {
    if (x > 1.0) {
        if (x - 1.0 > tol::clamp) {
            fail(ErrorCode::OutOfRange, "self-fidelity overshoots 1 by " + std::to_string(x - 1.0));
        }
        return 1.0;
    }
    return x;
}

void require_same_dim(int a, int b, const char *what) {
    if (a != b) {
        fail(ErrorCode::DimensionMismatch,
             std::string(what) + ": dimension " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

ComplexMatrix::ComplexMatrix(Matrix entries) : m_(std::move(entries)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
        fail(ErrorCode::DimensionMismatch, "matrix must be square and non-empty");
    }
    if (!m_.allFinite()) {
        fail(ErrorCode::NonFinite, "matrix has non-finite entries");
    }
}

ComplexMatrix ComplexMatrix::identity(int d) {
    return ComplexMatrix(Matrix::Identity(d, d));
}

ComplexMatrix ComplexMatrix::zero(int d) {
    return ComplexMatrix(Matrix::Zero(d, d));
}

ComplexMatrix ComplexMatrix::from_row_major(int d, std::span<const Complex> data) {
    if (d <= 0 || data.size() != static_cast<size_t>(d) * static_cast<size_t>(d)) {
        fail(ErrorCode::DimensionMismatch, "row-major data length does not match d*d");
    }
    Matrix m(d, d);
    for (int r = 0; r < d; r++) {
        for (int c = 0; c < d; c++) {
            m(r, c) = data[static_cast<size_t>(r) * d + c];
        }
    }
    return ComplexMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::from(ComplexMatrix m) {
    const int d = m.dim();
    double residual = (m.mat().adjoint() * m.mat() - Matrix::Identity(d, d)).norm();
    if (!(residual <= tol::unitary(d))) {
        fail(ErrorCode::NotUnitary, "unitarity residual " + std::to_string(residual));
    }
    return UnitaryMatrix(std::move(m), residual);
}

UnitaryMatrix UnitaryMatrix::identity(int d) {
    return UnitaryMatrix(ComplexMatrix::identity(d), 0.0);
}

HermitianMatrix HermitianMatrix::from(ComplexMatrix m) {
    double residual = (m.mat() - m.mat().adjoint()).norm();
    if (!(residual <= tol::hermitian(m.dim()))) {
        fail(ErrorCode::NotHermitian, "hermiticity residual " + std::to_string(residual));
    }
    return HermitianMatrix(std::move(m), residual);
}

PureState::PureState(Vector amplitudes) : v_(std::move(amplitudes)) {
    if (v_.size() == 0) {
        fail(ErrorCode::DimensionMismatch, "state must have positive dimension");
    }
    if (!v_.allFinite()) {
        fail(ErrorCode::NonFinite, "state has non-finite amplitudes");
    }
    double n = v_.norm();
    if (!(std::abs(n - 1.0) <= tol::norm)) {
        fail(ErrorCode::NotNormalized, "state norm " + std::to_string(n));
    }
}

PureState PureState::normalized(Vector amplitudes) {
    double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        fail(ErrorCode::NotNormalized, "cannot normalize a zero or non-finite vector");
    }
    return PureState(amplitudes / n);
}

PureState PureState::basis(int d, int k) {
    if (k < 0 || k >= d) {
        fail(ErrorCode::OutOfRange, "basis index outside [0, d)");
    }
    return PureState(Vector::Unit(d, k));
}

namespace pauli {
ComplexMatrix x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return ComplexMatrix(std::move(m));
}
ComplexMatrix y() {
    const Complex i(0.0, 1.0);
    Matrix m(2, 2);
    m << 0.0, -i, i, 0.0;
    return ComplexMatrix(std::move(m));
}
ComplexMatrix z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return ComplexMatrix(std::move(m));
}
}  // namespace pauli

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a.dim(), b.dim(), "matmul");
    return ComplexMatrix(a.mat() * b.mat());
}

Complex trace(const ComplexMatrix &a) {
    return a.mat().trace();
}

ComplexMatrix adjoint(const ComplexMatrix &a) {
    return ComplexMatrix(a.mat().adjoint());
}

ComplexMatrix scale(const ComplexMatrix &a, Complex factor) {
    return ComplexMatrix(a.mat() * factor);
}

double frobenius_norm(const ComplexMatrix &a) {
    return a.mat().norm();
}

UnitaryMatrix adjoint(const UnitaryMatrix &u) {
    return UnitaryMatrix::from(adjoint(u.base()));
}

UnitaryMatrix compose(const UnitaryMatrix &a, const UnitaryMatrix &b) {
    return UnitaryMatrix::from(matmul(a.base(), b.base()));
}

UnitaryMatrix with_phase(const UnitaryMatrix &u, double phi) {
    return UnitaryMatrix::from(scale(u.base(), std::polar(1.0, phi)));
}

UnitaryMatrix conjugate_by(const UnitaryMatrix &v, const UnitaryMatrix &u) {
    require_same_dim(v.dim(), u.dim(), "conjugate_by");
    return UnitaryMatrix::from(ComplexMatrix(v.mat() * u.mat() * v.mat().adjoint()));
}

PureState apply(const UnitaryMatrix &u, const PureState &psi) {
    require_same_dim(u.dim(), psi.dim(), "apply");
    return PureState::normalized(u.mat() * psi.vec());
}

HermitianEigen herm_eig(const HermitianMatrix &h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.mat(), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        fail(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
    }
    return HermitianEigen{solver.eigenvalues(), UnitaryMatrix::from(ComplexMatrix(solver.eigenvectors()))};
}

double spectral_norm(const HermitianMatrix &h) {
    auto eig = herm_eig(h);
    return std::max(std::abs(eig.values(0)), std::abs(eig.values(eig.values.size() - 1)));
}

UnitaryMatrix evolve(const HermitianMatrix &h, double t) {
    if (t == 0.0) {
        return UnitaryMatrix::identity(h.dim());
    }
    auto eig = herm_eig(h);
    const Matrix &v = eig.vectors.mat();
    Vector phases(eig.values.size());
    for (Eigen::Index k = 0; k < eig.values.size(); k++) {
        phases(k) = std::polar(1.0, -eig.values(k) * t);
    }
    return UnitaryMatrix::from(ComplexMatrix(v * phases.asDiagonal() * v.adjoint()));
}

Complex expectation(const ComplexMatrix &a, const PureState &psi) {
    require_same_dim(a.dim(), psi.dim(), "expectation");
    return psi.vec().dot(a.mat() * psi.vec());
}

double self_fidelity(const UnitaryMatrix &u, const PureState &psi) {
    require_same_dim(u.dim(), psi.dim(), "self_fidelity");
    Vector image = u.mat() * psi.vec();
    return clamp_fidelity(std::norm(psi.vec().dot(image)));
}

}  // namespace sfcorr
