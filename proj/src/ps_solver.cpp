// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "swipt/ps_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swipt {

namespace {

constexpr double kRhoMin = 1e-9;
constexpr double kRhoMax = 1.0 - 1e-9;

bool finite_split(const PowerSplit& s)
{
    return std::isfinite(s.p1) && std::isfinite(s.p2) && std::isfinite(s.rho);
}

std::optional<PsCandidate> make_candidate(int k, const PowerSplit& s, const PsCoefficients& c)
{
    if (!finite_split(s))
        return std::nullopt;
    PsCandidate cand;
    cand.case_id = k;
    cand.split = s;
    cand.objective = ps_objective(s, c);
    cand.violated = ps_violations(s, c);
    cand.feasible = cand.violated.empty();
    return cand;
}

// Maximizer of K/u - M u over u > 0 (concave when K < 0 < M): u = sqrt(-K / M).
std::optional<double> stationary_u(double k_num, double m)
{
    if (!(m > 0.0) || !(k_num < 0.0))
        return std::nullopt;
    const double u = std::sqrt(-k_num / m);
    if (!(u > 0.0 && u < 1.0))
        return std::nullopt;
    return u;
}

// Largest rho meeting both SINR constraints at fixed powers.
std::optional<double> rho_from_sinr(double p1, double p2, const PsCoefficients& c)
{
    const double den1 = c.e2 * p2 - c.d2;
    const double den2 = c.g2 * p1 - c.f2;
    if (!(den1 > 0.0) || !(den2 > 0.0))
        return std::nullopt;
    const double r = std::min(1.0 - c.t1() / den1, 1.0 - c.t2() / den2);
    if (!(r > 0.0 && r < 1.0))
        return std::nullopt;
    return r;
}

// Powers placing both SINR constraints at equality for u = 1 - rho.
PowerSplit sinr_tight_split(double u, const PsCoefficients& c)
{
    return {(c.f2 + c.t2() / u) / c.g2, (c.d2 + c.t1() / u) / c.e2, 1.0 - u};
}

double relative_residual(double lhs, double rhs)
{
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
}

}  // namespace

PsCoefficients compute_ps_coefficients(const ChannelRealization& ch, const CMatrix& w,
                                       const CMatrix& qx, const SystemParams& params)
{
    params.validate();
    const int n = ch.n_antennas();
    ch.validate(n);
    if (w.rows() != n || w.cols() != n || qx.rows() != n || qx.cols() != n)
        throw std::invalid_argument("compute_ps_coefficients: W and Qx must be N x N");

    const double a = params.alpha();
    const double b = params.beta();
    const double k = 0.5 * params.eta * params.slot_length;
    const CVector wh1 = w * ch.h1;
    const CVector wh2 = w * ch.h2;
    auto gain = [](const CVector& g, const CVector& x) { return std::norm(g.dot(x.conjugate())); };
    const double g1wh1 = gain(ch.g1, wh1);
    const double g1wh2 = gain(ch.g1, wh2);
    const double g2wh1 = gain(ch.g2, wh1);
    const double g2wh2 = gain(ch.g2, wh2);
    const double jam1 = quad_form(ch.g1, qx);
    const double jam2 = quad_form(ch.g2, qx);
    const double amp1 = params.sigma_r2 * (ch.g1.transpose() * w).squaredNorm();
    const double amp2 = params.sigma_r2 * (ch.g2.transpose() * w).squaredNorm();

    PsCoefficients c;
    c.a2 = k * (a * g1wh2 + b * g2wh2);
    c.b2 = k * (a * g1wh1 + b * g2wh1);
    c.c2 = k * (a * jam1 + b * jam2);
    c.d2 = (jam1 + amp1 + params.sigma_d2[0]) * params.tau[0];
    c.e2 = g1wh2;
    c.f2 = (jam2 + amp2 + params.sigma_d2[1]) * params.tau[1];
    c.g2 = g2wh1;
    c.j2 = wh1.squaredNorm();
    c.k2 = wh2.squaredNorm();
    c.l2 = qx.trace().real() + params.sigma_r2 * w.squaredNorm();
    c.tau = params.tau;
    c.sigma_c2 = params.sigma_c2;
    c.weights = params.weights;
    c.slot_length = params.slot_length;
    c.p_relay = params.p_relay;
    c.p_max = params.p_max;
    return c;
}

double ps_objective(const PowerSplit& s, const PsCoefficients& c)
{
    return c.a2 * s.rho * s.p2 + c.b2 * s.rho * s.p1 + c.c2 * s.rho - c.pen1() * s.p1 -
           c.pen2() * s.p2;
}

std::vector<std::string> ps_violations(const PowerSplit& s, const PsCoefficients& c)
{
    std::vector<std::string> v;
    const double u = 1.0 - s.rho;
    if ((c.e2 * s.p2 - c.d2) * u - c.t1() < -kPsFeasTol)
        v.emplace_back("sinr1");
    if ((c.g2 * s.p1 - c.f2) * u - c.t2() < -kPsFeasTol)
        v.emplace_back("sinr2");
    if (c.j2 * s.p1 + c.k2 * s.p2 - (c.p_relay - c.l2) > kPsFeasTol)
        v.emplace_back("relay_power");
    if (!(s.p1 > 0.0) || s.p1 - c.p_max[0] > kPsFeasTol)
        v.emplace_back("pmax1");
    if (!(s.p2 > 0.0) || s.p2 - c.p_max[1] > kPsFeasTol)
        v.emplace_back("pmax2");
    if (!(s.rho >= kRhoMin && s.rho <= kRhoMax))
        v.emplace_back("rho_range");
    return v;
}

std::vector<std::string> ps_tight_constraints(const PowerSplit& s, const PsCoefficients& c)
{
    std::vector<std::string> tight;
    const double u = 1.0 - s.rho;
    if (relative_residual((c.e2 * s.p2 - c.d2) * u, c.t1()) <= kPsTightTol)
        tight.emplace_back("sinr1");
    if (relative_residual((c.g2 * s.p1 - c.f2) * u, c.t2()) <= kPsTightTol)
        tight.emplace_back("sinr2");
    if (relative_residual(c.j2 * s.p1 + c.k2 * s.p2, c.p_relay - c.l2) <= kPsTightTol)
        tight.emplace_back("relay_power");
    if (relative_residual(s.p1, c.p_max[0]) <= kPsTightTol)
        tight.emplace_back("pmax1");
    if (relative_residual(s.p2, c.p_max[1]) <= kPsTightTol)
        tight.emplace_back("pmax2");
    return tight;
}

std::optional<PsCandidate> solve_ps_case(int k, const PsCoefficients& c)
{
    const double A = c.a2, B = c.b2, C = c.c2, D = c.d2, E = c.e2;
    const double F = c.f2, G = c.g2, J = c.j2, K = c.k2, L = c.l2;
    const double t1 = c.t1(), t2 = c.t2();
    const double pen1 = c.pen1(), pen2 = c.pen2();
    const double budget = c.p_relay - L;

    switch (k) {
    case 1: {  // sinr1 and sinr2 tight
        if (!(E > 0.0 && G > 0.0))
            return std::nullopt;
        const double a1 = -(A * D * G + B * E * F + C * E * G);
        const double a2 = A * G * t1 + B * E * t2 + A * D * G + B * E * F + C * E * G;
        const double a3 = pen1 * E * t2 + pen2 * G * t1;
        if (!(a2 - a3 > 0.0 && a2 - a3 < -a1))
            return std::nullopt;
        const double u = std::sqrt((a1 + a2 - a3) / a1);
        return make_candidate(k, sinr_tight_split(u, c), c);
    }
    case 2: {  // sinr1 and relay_power tight
        if (!(E > 0.0 && J > 0.0))
            return std::nullopt;
        const double b1 = (A * J - B * K) * t1;
        const double b2 = (pen1 * K - pen2 * J) * t1;
        const double b3 = ((budget * E - D * K) * B + (A * D + C * E) * J) / (J * E);
        if (!(b3 > 0.0 && b1 + b2 < 0.0 && b1 + b2 + J * E * b3 > 0.0))
            return std::nullopt;
        const auto u = stationary_u((b1 + b2) / (J * E), b3);
        if (!u)
            return std::nullopt;
        const double p2 = (D + t1 / *u) / E;
        return make_candidate(k, {(budget - K * p2) / J, p2, 1.0 - *u}, c);
    }
    case 3: {  // sinr1 tight, P1 at its cap
        if (!(E > 0.0))
            return std::nullopt;
        const double c1 = A * t1;
        const double c2 = pen2 * t1;
        const double c3 = (A * D + B * E * c.p_max[0] + C * E) / E;
        if (!(c1 < c2 && c2 < c1 + E * c3))
            return std::nullopt;
        const auto u = stationary_u((c1 - c2) / E, c3);
        if (!u)
            return std::nullopt;
        return make_candidate(k, {c.p_max[0], (D + t1 / *u) / E, 1.0 - *u}, c);
    }
    case 4: {  // sinr2 and relay_power tight
        if (!(G > 0.0 && K > 0.0))
            return std::nullopt;
        const double d1 = (B * K - A * J) * t2;
        const double d2 = (pen2 * J - pen1 * K) * t2;
        const double d3 = ((budget * G - F * J) * A + (B * F + C * G) * K) / (K * G);
        if (!(d3 > 0.0 && d1 + d2 < 0.0 && d1 + d2 + K * G * d3 > 0.0))
            return std::nullopt;
        const auto u = stationary_u((d1 + d2) / (K * G), d3);
        if (!u)
            return std::nullopt;
        const double p1 = (F + t2 / *u) / G;
        return make_candidate(k, {p1, (budget - J * p1) / K, 1.0 - *u}, c);
    }
    case 5: {  // sinr2 tight, P2 at its cap
        if (!(G > 0.0))
            return std::nullopt;
        const double e1 = B * t2;
        const double e2 = pen1 * t2;
        const double e3 = (B * F + A * G * c.p_max[1] + C * G) / G;
        if (!(e1 < e2 && e2 < e1 + G * e3))
            return std::nullopt;
        const auto u = stationary_u((e1 - e2) / G, e3);
        if (!u)
            return std::nullopt;
        return make_candidate(k, {(F + t2 / *u) / G, c.p_max[1], 1.0 - *u}, c);
    }
    case 6:    // relay_power tight, P1 at its cap
    case 7:    // relay_power tight, P2 at its cap
    case 8: {  // both caps
        double p1 = c.p_max[0];
        double p2 = c.p_max[1];
        if (k == 6) {
            if (!(K > 0.0))
                return std::nullopt;
            p2 = (budget - J * p1) / K;
        } else if (k == 7) {
            if (!(J > 0.0))
                return std::nullopt;
            p1 = (budget - K * p2) / J;
        }
        const auto rho = rho_from_sinr(p1, p2, c);
        if (!rho)
            return std::nullopt;
        return make_candidate(k, {p1, p2, *rho}, c);
    }
    case 9: {  // sinr1, sinr2 and relay_power tight
        if (!(E > 0.0 && G > 0.0))
            return std::nullopt;
        const double num = J * t2 / G + K * t1 / E;
        const double den = budget - J * F / G - K * D / E;
        if (!(den > 0.0 && num > 0.0))
            return std::nullopt;
        const double u = num / den;
        if (!(u < 1.0))
            return std::nullopt;
        return make_candidate(k, sinr_tight_split(u, c), c);
    }
    case 10: {  // sinr1, sinr2 tight, P1 at its cap
        if (!(E > 0.0 && G * c.p_max[0] - F > 0.0 && t2 > 0.0))
            return std::nullopt;
        const double u = t2 / (G * c.p_max[0] - F);
        if (!(u < 1.0))
            return std::nullopt;
        return make_candidate(k, {c.p_max[0], (D + t1 / u) / E, 1.0 - u}, c);
    }
    case 11: {  // sinr1, sinr2 tight, P2 at its cap
        if (!(G > 0.0 && E * c.p_max[1] - D > 0.0 && t1 > 0.0))
            return std::nullopt;
        const double u = t1 / (E * c.p_max[1] - D);
        if (!(u < 1.0))
            return std::nullopt;
        return make_candidate(k, {(F + t2 / u) / G, c.p_max[1], 1.0 - u}, c);
    }
    case 12: {  // sinr1, sinr2 tight at the lower rho limit
        if (!(E > 0.0 && G > 0.0))
            return std::nullopt;
        PowerSplit s = sinr_tight_split(1.0 - kRhoMin, c);
        s.rho = kRhoMin;
        return make_candidate(k, s, c);
    }
    default:
        throw std::invalid_argument("solve_ps_case: case id must be in 1..12");
    }
}

PsCandidate solve_ps_candidate(const PsCoefficients& c)
{
    std::optional<PsCandidate> best;
    for (int k = 1; k <= kPsCaseCount; ++k) {
        auto cand = solve_ps_case(k, c);
        if (!cand || !cand->feasible)
            continue;
        if (!best || cand->objective > best->objective)
            best = std::move(cand);
    }
    if (!best)
        throw InfeasibleError("solve_ps: no feasible power / splitting candidate");
    return *best;
}

PowerSplit solve_ps(const PsCoefficients& c)
{
    return solve_ps_candidate(c).split;
}

namespace {

struct GridBest {
    double objective = -std::numeric_limits<double>::infinity();
    long long index = -1;
};

// Scans one P1 row of the lattice; keeps the first (lowest index) maximizer.
void scan_row(int k1, int res, const PsCoefficients& c, GridBest& best)
{
    const double p1 = c.p_max[0] * k1 / res;
    const double budget = c.p_relay - c.l2;
    for (int k2 = 1; k2 <= res; ++k2) {
        const double p2 = c.p_max[1] * k2 / res;
        if (c.j2 * p1 + c.k2 * p2 - budget > kPsFeasTol)
            continue;
        const double m1 = c.e2 * p2 - c.d2;
        const double m2 = c.g2 * p1 - c.f2;
        for (int j = 1; j <= res; ++j) {
            const double rho = static_cast<double>(j) / (res + 1);
            const double u = 1.0 - rho;
            if (m1 * u - c.t1() < -kPsFeasTol || m2 * u - c.t2() < -kPsFeasTol)
                continue;
            const double obj = ps_objective({p1, p2, rho}, c);
            const long long idx = (static_cast<long long>(k1 - 1) * res + (k2 - 1)) * res + (j - 1);
            if (obj > best.objective) {
                best.objective = obj;
                best.index = idx;
            }
        }
    }
}

std::optional<PsCandidate> grid_result(const GridBest& best, int res, const PsCoefficients& c)
{
    if (best.index < 0)
        return std::nullopt;
    const long long j = best.index % res;
    const long long k2 = (best.index / res) % res;
    const long long k1 = best.index / (static_cast<long long>(res) * res);
    PsCandidate cand;
    cand.case_id = 0;
    cand.split = {c.p_max[0] * (k1 + 1) / res, c.p_max[1] * (k2 + 1) / res,
                  static_cast<double>(j + 1) / (res + 1)};
    cand.objective = ps_objective(cand.split, c);
    cand.violated = ps_violations(cand.split, c);
    cand.feasible = cand.violated.empty();
    return cand;
}

void check_resolution(int res)
{
    if (res < 1)
        throw std::invalid_argument("ps_grid_oracle: resolution must be positive");
}

}  // namespace

std::optional<PsCandidate> ps_grid_oracle(const PsCoefficients& c, int resolution)
{
    check_resolution(resolution);
    std::vector<GridBest> rows(resolution);
#pragma omp parallel for schedule(dynamic)
    for (int k1 = 1; k1 <= resolution; ++k1)
        scan_row(k1, resolution, c, rows[k1 - 1]);

    // Rows are merged in index order, so ties resolve exactly as in the serial scan.
    GridBest best;
    for (const auto& r : rows)
        if (r.objective > best.objective)
            best = r;
    return grid_result(best, resolution, c);
}

std::optional<PsCandidate> ps_grid_oracle_serial(const PsCoefficients& c, int resolution)
{
    check_resolution(resolution);
    GridBest best;
    for (int k1 = 1; k1 <= resolution; ++k1)
        scan_row(k1, resolution, c, best);
    return grid_result(best, resolution, c);
}

double solve_rho_df(double c, double d, const SystemParams& params)
{
    const double t1 = params.tau[0] * params.sigma_c2[0];
    const double t2 = params.tau[1] * params.sigma_c2[1];
    if (!(c > t1) || !(d > t2))
        throw InfeasibleError("solve_rho_df: SINR targets unreachable for any rho in (0, 1)");
    const double rho = std::min(1.0 - t1 / c, 1.0 - t2 / d);
    return std::min(rho, kRhoMax);
}

std::pair<double, double> df_rho_coefficients(const ChannelRealization& ch,
                                              const BeamformingSolution& sol,
                                              const SystemParams& params)
{
    const CMatrix* info1 = nullptr;
    const CMatrix* info2 = nullptr;
    switch (sol.strategy) {
    case RelayStrategy::DF_XOR:
        info1 = info2 = &sol.qs;
        break;
    case RelayStrategy::DF_SUP:
        info1 = &sol.qs2;
        info2 = &sol.qs1;
        break;
    case RelayStrategy::AF:
        throw std::invalid_argument("df_rho_coefficients: AF has no DF rho update");
    }
    const double c = quad_form(ch.g1, *info1) -
                     (quad_form(ch.g1, sol.qx) + params.sigma_d2[0]) * params.tau[0];
    const double d = quad_form(ch.g2, *info2) -
                     (quad_form(ch.g2, sol.qx) + params.sigma_d2[1]) * params.tau[1];
    return {c, d};
}

}  // namespace swipt
