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

#include "sfcorr/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>

#include "sfcorr/permtrace.hpp"

namespace sfcorr {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::ClosedForm:
            return "ClosedForm";
        case Method::PermSum:
            return "PermSum";
        case Method::MonteCarlo:
            return "MonteCarlo";
    }
    return "Unknown";
}

InvariantSet invariants(const UnitaryMatrix &u1, const UnitaryMatrix &u2) {
    require_same_dim(u1.dim(), u2.dim(), "invariants");
    const Matrix &a = u1.mat();
    const Matrix &b = u2.mat();
    Matrix ab = a * b;
    Matrix ba = b * a;

    InvariantSet inv;
    inv.d = u1.dim();
    inv.tr_u1 = a.trace();
    inv.tr_u2 = b.trace();
    inv.tr_u1u2 = ab.trace();
    inv.tr_u1u2dag = (a * b.adjoint()).trace();
    inv.tr_u1sq = (a * a).trace();
    inv.tr_u2sq = (b * b).trace();
    // Tr(U1 U2 U1^dag U2^dag) = <BA, AB>_F
    inv.tr_comm = (ba.adjoint() * ab).trace();
    inv.abs2_tr_u1 = std::norm(inv.tr_u1);
    inv.abs2_tr_u2 = std::norm(inv.tr_u2);
    return inv;
}

double mean_self_fidelity(const InvariantSet &inv, Which which) {
    const double d = inv.d;
    const double t2 = which == Which::First ? inv.abs2_tr_u1 : inv.abs2_tr_u2;
    return (t2 + d) / (d * (d + 1.0));
}

namespace {

double fourth_moment_from_traces(int dim, Complex t1, Complex t2, Complex t12, Complex t12dag, Complex tcomm) {
    const double d = dim;
    const double a1 = std::norm(t1);
    const double a2 = std::norm(t2);
    double numerator = d * (d + 4.0) + (d + 4.0) * (a1 + a2) + a1 * a2 + std::norm(t12) + std::norm(t12dag) +
                       2.0 * (t12 * std::conj(t1) * std::conj(t2) + t12dag * std::conj(t1) * t2 + tcomm).real();
    return numerator / rising_factorial(dim, 4);
}

double real_moment(Complex z, const char *what) {
    if (std::abs(z.imag()) > 1e-10) {
        fail(ErrorCode::OutOfRange, std::string(what) + " has imaginary part " + std::to_string(z.imag()));
    }
    return z.real();
}

// Traceless part B = U - alpha I with alpha = Tr(U)/d, so <psi|U|psi> = alpha + b.
struct Centered {
    Complex alpha;
    ComplexMatrix b;
    ComplexMatrix bd;
};

Centered center(const UnitaryMatrix &u) {
    const Complex alpha = trace(u) / static_cast<double>(u.dim());
    Matrix b = u.mat();
    b.diagonal().array() -= alpha;
    ComplexMatrix cb(std::move(b));
    ComplexMatrix cbd = adjoint(cb);
    return {alpha, std::move(cb), std::move(cbd)};
}

// E[(X1 - E X1)(X2 - E X2)] expanded in moments of the traceless parts.
// `e` evaluates E[prod_m <psi|A_m|psi>] for a list of operators.
template <typename Moment>
double centered_covariance(const Centered &c1, const Centered &c2, Moment &&e) {
    const Complex a1 = std::conj(c1.alpha);
    const Complex a2 = std::conj(c2.alpha);
    const std::array<ComplexMatrix, 2> w12{c1.b, c2.b};
    const std::array<ComplexMatrix, 2> w12d{c1.b, c2.bd};
    const std::array<ComplexMatrix, 3> w1_22{c1.b, c2.bd, c2.b};
    const std::array<ComplexMatrix, 3> w11_2{c1.bd, c1.b, c2.b};
    const std::array<ComplexMatrix, 4> w1122{c1.bd, c1.b, c2.bd, c2.b};
    const std::array<ComplexMatrix, 2> w11{c1.bd, c1.b};
    const std::array<ComplexMatrix, 2> w22{c2.bd, c2.b};
    const Complex linear = a1 * a2 * e(std::span<const ComplexMatrix>(w12)) +
                           a1 * c2.alpha * e(std::span<const ComplexMatrix>(w12d)) +
                           a1 * e(std::span<const ComplexMatrix>(w1_22)) + a2 * e(std::span<const ComplexMatrix>(w11_2));
    return 2.0 * linear.real() + e(std::span<const ComplexMatrix>(w1122)).real() -
           e(std::span<const ComplexMatrix>(w11)).real() * e(std::span<const ComplexMatrix>(w22)).real();
}

Complex tr_product(const Matrix &a, const Matrix &b) {
    return (a.transpose().cwiseProduct(b)).sum();
}

// Haar pure-state moments of traceless operators: only fixed-point-free
// permutations contribute to the contraction.
Complex traceless_moment(std::span<const ComplexMatrix> ops) {
    const double d = ops.front().dim();
    const auto &m = [&](size_t i) -> const Matrix & { return ops[i].mat(); };
    switch (ops.size()) {
        case 2:
            return tr_product(m(0), m(1)) / (d * (d + 1));
        case 3: {
            Matrix ab = m(0) * m(1);
            Matrix ac = m(0) * m(2);
            return (tr_product(ab, m(2)) + tr_product(ac, m(1))) / (d * (d + 1) * (d + 2));
        }
        case 4: {
            Complex pairs = tr_product(m(0), m(1)) * tr_product(m(2), m(3)) +
                            tr_product(m(0), m(2)) * tr_product(m(1), m(3)) +
                            tr_product(m(0), m(3)) * tr_product(m(1), m(2));
            Matrix ab = m(0) * m(1);
            Matrix ac = m(0) * m(2);
            Matrix ad = m(0) * m(3);
            Matrix bc = m(1) * m(2);
            Matrix cb = m(2) * m(1);
            Matrix bd = m(1) * m(3);
            Matrix db = m(3) * m(1);
            Matrix cd = m(2) * m(3);
            Matrix dc = m(3) * m(2);
            Complex cycles = tr_product(ab, cd) + tr_product(ab, dc) + tr_product(ac, bd) + tr_product(ac, db) +
                             tr_product(ad, bc) + tr_product(ad, cb);
            return (pairs + cycles) / (d * (d + 1) * (d + 2) * (d + 3));
        }
        default:
            fail(ErrorCode::OutOfRange, "traceless_moment supports 2 to 4 operators");
    }
}

}  // namespace

double fourth_moment(const InvariantSet &inv) {
    return fourth_moment_from_traces(inv.d, inv.tr_u1, inv.tr_u2, inv.tr_u1u2, inv.tr_u1u2dag, inv.tr_comm);
}

double second_moment(const InvariantSet &inv, Which which) {
    const Complex t = which == Which::First ? inv.tr_u1 : inv.tr_u2;
    const Complex tsq = which == Which::First ? inv.tr_u1sq : inv.tr_u2sq;
    const Complex d(inv.d, 0.0);
    return fourth_moment_from_traces(inv.d, t, t, tsq, d, d);
}

double expanded_variance(const InvariantSet &inv, Which which) {
    const double d = inv.d;
    const Complex t = which == Which::First ? inv.tr_u1 : inv.tr_u2;
    const Complex tsq = which == Which::First ? inv.tr_u1sq : inv.tr_u2sq;
    const double a = std::norm(t);
    double numerator = 2.0 * d * (d + 3.0) + 4.0 * (d + 2.0) * a + std::norm(tsq) + a * a +
                       2.0 * (tsq * std::conj(t) * std::conj(t)).real();
    const double f = mean_self_fidelity(inv, which);
    return numerator / rising_factorial(inv.d, 4) - f * f;
}

double expanded_covariance(const InvariantSet &inv) {
    const double d = inv.d;
    const double f1 = mean_self_fidelity(inv, Which::First);
    const double f2 = mean_self_fidelity(inv, Which::Second);
    double numerator =
        -4.0 * d + 4.0 * d * (d + 1.0) * (f1 + f2) - 2.0 * (2.0 * d + 3.0) * d * (d + 1.0) * f1 * f2 +
        std::norm(inv.tr_u1u2) + std::norm(inv.tr_u1u2dag) +
        2.0 * (inv.tr_u1u2 * std::conj(inv.tr_u1) * std::conj(inv.tr_u2) +
               inv.tr_u1u2dag * std::conj(inv.tr_u1) * inv.tr_u2 + inv.tr_comm)
                  .real();
    return numerator / rising_factorial(inv.d, 4);
}

CorrelationReport make_report(double mean1, double mean2, double var1, double var2, double cov, Method method) {
    if (!(var1 >= tol::variance) || !(var2 >= tol::variance)) {
        fail(ErrorCode::DegenerateReadout, "self-fidelity variance below threshold (var1 = " +
                                               std::to_string(var1) + ", var2 = " + std::to_string(var2) +
                                               "); the correlation is undefined for trivial unitaries");
    }
    CorrelationReport r;
    r.mean1 = mean1;
    r.mean2 = mean2;
    r.var1 = var1;
    r.var2 = var2;
    r.cov = cov;
    r.pcc = cov / (std::sqrt(var1) * std::sqrt(var2));
    r.method = method;
    return r;
}

CorrelationReport exact_stats(const UnitaryMatrix &u1, const UnitaryMatrix &u2) {
    auto inv = invariants(u1, u2);
    const double f1 = mean_self_fidelity(inv, Which::First);
    const double f2 = mean_self_fidelity(inv, Which::Second);
    // Same values as fourth_moment(inv) - f1 * f2, evaluated on traceless parts.
    const Centered c1 = center(u1);
    const Centered c2 = center(u2);
    const double var1 = centered_covariance(c1, c1, traceless_moment);
    const double var2 = centered_covariance(c2, c2, traceless_moment);
    const double cov = centered_covariance(c1, c2, traceless_moment);
    return make_report(f1, f2, var1, var2, cov, Method::ClosedForm);
}

CorrelationReport exact_stats_permsum(const UnitaryMatrix &u1, const UnitaryMatrix &u2) {
    require_same_dim(u1.dim(), u2.dim(), "exact_stats_permsum");
    const int d = u1.dim();
    std::array<ComplexMatrix, 2> m1{adjoint(u1.base()), u1.base()};
    std::array<ComplexMatrix, 2> m2{adjoint(u2.base()), u2.base()};
    const double f1 = real_moment(moment_contraction(m1, d), "E[X1]");
    const double f2 = real_moment(moment_contraction(m2, d), "E[X2]");

    auto contraction = [d](std::span<const ComplexMatrix> ops) { return moment_contraction(ops, d); };
    const Centered c1 = center(u1);
    const Centered c2 = center(u2);
    const double var1 = centered_covariance(c1, c1, contraction);
    const double var2 = centered_covariance(c2, c2, contraction);
    const double cov = centered_covariance(c1, c2, contraction);
    return make_report(f1, f2, var1, var2, cov, Method::PermSum);
}

ContrastReport optimal_contrast(const CorrelationReport &report, int grid_points) {
    if (!(report.var2 >= tol::variance)) {
        fail(ErrorCode::DegenerateReadout, "optimal contrast needs var2 above threshold");
    }
    if (grid_points < 3) {
        fail(ErrorCode::GridTooSmall, "contrast grid needs at least 3 points");
    }
    ContrastReport out;
    out.kappa_star = report.cov / report.var2;
    out.floor = std::max(0.0, report.var1 * (1.0 - report.pcc * report.pcc));

    auto var_at = [&](double k) { return report.var1 - 2.0 * k * report.cov + k * k * report.var2; };
    const double half_width = std::max(1.0, std::abs(out.kappa_star));
    out.curve.reserve(static_cast<size_t>(grid_points) + 1);
    for (int i = 0; i < grid_points; i++) {
        double k = out.kappa_star + half_width * (2.0 * i / (grid_points - 1) - 1.0);
        out.curve.emplace_back(k, var_at(k));
    }
    bool has_vertex = std::any_of(out.curve.begin(), out.curve.end(),
                                  [&](const auto &row) { return row.first == out.kappa_star; });
    if (!has_vertex) {
        auto pos = std::lower_bound(out.curve.begin(), out.curve.end(), out.kappa_star,
                                    [](const auto &row, double k) { return row.first < k; });
        out.curve.insert(pos, {out.kappa_star, var_at(out.kappa_star)});
    }
    return out;
}

}  // namespace sfcorr
