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

#ifndef SFCORR_MOMENTS_HPP
#define SFCORR_MOMENTS_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "sfcorr/matcore.hpp"

namespace sfcorr {

namespace tol {
/// Below this a self-fidelity variance is treated as zero (trivial unitary).
inline constexpr double variance = 1e-14;
}  // namespace tol

enum class Which { First, Second };

/// Trace invariants of a unitary pair. Every ensemble statistic of the two
/// self-fidelities up to fourth order is a polynomial in these.
struct InvariantSet {
    int d = 0;
    Complex tr_u1;
    Complex tr_u2;
    Complex tr_u1u2;     // Tr(U1 U2)
    Complex tr_u1u2dag;  // Tr(U1 U2^dag)
    Complex tr_u1sq;     // Tr(U1^2)
    Complex tr_u2sq;     // Tr(U2^2)
    Complex tr_comm;     // Tr(U1 U2 U1^dag U2^dag)
    double abs2_tr_u1 = 0.0;
    double abs2_tr_u2 = 0.0;
};

enum class Method { ClosedForm, PermSum, MonteCarlo };

std::string_view to_string(Method m);

struct CorrelationReport {
    double mean1 = 0.0;
    double mean2 = 0.0;
    double var1 = 0.0;
    double var2 = 0.0;
    double cov = 0.0;
    double pcc = 0.0;
    Method method = Method::ClosedForm;
    std::optional<double> stderr_mean1;
    std::optional<double> stderr_mean2;
    std::optional<double> stderr_pcc;
    std::optional<std::int64_t> n_samples;
};

struct ContrastReport {
    double kappa_star = 0.0;
    double floor = 0.0;
    std::vector<std::pair<double, double>> curve;  // (kappa, Var(X1 - kappa X2))
};

InvariantSet invariants(const UnitaryMatrix &u1, const UnitaryMatrix &u2);

/// E_psi[X_j] = (|Tr U_j|^2 + d) / (d (d+1))
double mean_self_fidelity(const InvariantSet &inv, Which which);

/// E_psi[X_1 X_2] from the trace invariants (fourth-order Haar state moment).
double fourth_moment(const InvariantSet &inv);

/// E_psi[X_j^2], the fourth-moment formula specialised to U_1 = U_2 = U_j.
double second_moment(const InvariantSet &inv, Which which);

/// Printed expanded variance formula, kept as an independent cross-check.
double expanded_variance(const InvariantSet &inv, Which which);

/// Printed expanded covariance formula in terms of the means. The 2Re(...)
/// term is read as Tr(U1U2)Tr(U1^dag)Tr(U2^dag) + Tr(U1U2^dag)Tr(U1^dag)Tr(U2)
/// + Tr(U1U2U1^dag U2^dag); cross-check only.
double expanded_covariance(const InvariantSet &inv);

/// Builds a report from first and second central moments. Throws
/// DegenerateReadout when either variance is below tol::variance.
CorrelationReport make_report(double mean1, double mean2, double var1, double var2, double cov, Method method);

/// Closed-form route through the trace invariants.
CorrelationReport exact_stats(const UnitaryMatrix &u1, const UnitaryMatrix &u2);

/// Same statistics, each moment evaluated as a sum over S_2 / S_4.
CorrelationReport exact_stats_permsum(const UnitaryMatrix &u1, const UnitaryMatrix &u2);

/// Optimal linear contrast C_k = X1 - k X2. The curve is tabulated on
/// `grid_points` uniformly spaced weights centred on kappa*; kappa* itself is
/// always one of the rows. Throws DegenerateReadout if var2 < tol::variance.
ContrastReport optimal_contrast(const CorrelationReport &report, int grid_points = 201);

}  // namespace sfcorr

#endif
