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

#include "swipt/validation.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "swipt/sdp_builders.hpp"

namespace swipt {

CMatrix random_cmatrix(CounterRng& rng, int rows, int cols)
{
    CMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            m(i, j) = cdouble(re, im) / std::sqrt(2.0);
        }
    return m;
}

PsCoefficients random_ps_coefficients(std::uint64_t seed)
{
    CounterRng rng(seed ^ 0x5eed5eed5eedULL);
    SystemParams p;
    p.n_antennas = 4;
    p.p_relay = dbm_to_watts(10.0 + 20.0 * rng.uniform());
    const double tau = 0.02 + 0.8 * rng.uniform();
    p.tau = {tau * (0.5 + rng.uniform()), tau * (0.5 + rng.uniform())};
    const double alpha = 0.1 + 0.8 * rng.uniform();
    p.weights = {alpha, 1.0 - alpha};
    p.distances = {1.0 + rng.uniform(), 1.0 + rng.uniform()};
    const ChannelRealization ch = sample_channel(p, seed);

    const int n = p.n_antennas;
    CMatrix w = random_cmatrix(rng, n, n);
    const CVector jam = random_cmatrix(rng, n, 1);
    CMatrix qx = jam * jam.adjoint();
    qx *= 0.2 * rng.uniform() * p.p_relay / qx.trace().real();

    // Relay power at the source caps lands between 0.5 and 1.5 of the budget.
    const double spare = p.p_relay - qx.trace().real();
    const double at_cap = p.p_max[0] * (w * ch.h1).squaredNorm() +
                          p.p_max[1] * (w * ch.h2).squaredNorm() + p.sigma_r2 * w.squaredNorm();
    w *= std::sqrt((0.5 + rng.uniform()) * spare / at_cap);
    return compute_ps_coefficients(ch, w, qx, p);
}

CheckResult check_trace_identity(int count, std::uint64_t seed)
{
    CounterRng rng(seed);
    int failed = 0;
    for (int k = 0; k < count; ++k) {
        const int m = 1 + static_cast<int>(rng.next_u64() % 4);
        const int n = 1 + static_cast<int>(rng.next_u64() % 4);
        const int p = 1 + static_cast<int>(rng.next_u64() % 4);
        const int q = 1 + static_cast<int>(rng.next_u64() % 4);
        const CMatrix a = random_cmatrix(rng, m, n);
        const CMatrix b = random_cmatrix(rng, n, p);
        const CMatrix c = random_cmatrix(rng, p, q);
        const CMatrix d = random_cmatrix(rng, q, m);
        if (!trace_identity_check(a, b, c, d, 1e-10))
            ++failed;
    }
    return {"trace_identity", failed == 0,
            std::to_string(count - failed) + "/" + std::to_string(count) + " within 1e-10"};
}

CheckResult check_ps_oracle(int count, int resolution, std::uint64_t seed)
{
    int checked = 0, failed = 0;
    double worst = -INFINITY;
    for (std::uint64_t s = seed; checked < count && s < seed + 100 * count; ++s) {
        const PsCoefficients c = random_ps_coefficients(s);
        const auto grid = ps_grid_oracle(c, resolution);
        if (!grid)
            continue;
        ++checked;
        double obj = -INFINITY;
        try {
            obj = solve_ps_candidate(c).objective;
        } catch (const InfeasibleError&) {
        }
        const double shortfall = (grid->objective - obj) / (1.0 + std::abs(obj));
        worst = std::max(worst, shortfall);
        if (!(shortfall <= 1e-3))
            ++failed;
    }
    std::ostringstream d;
    d << checked << " instances, worst relative shortfall (negative: closed form ahead) " << std::setprecision(3) << worst;
    return {"ps_grid_oracle", failed == 0 && checked == count, d.str()};
}

CheckResult check_rank_census(int count, int n, std::uint64_t seed)
{
    SystemParams p;
    p.n_antennas = n;
    p.p_relay = dbm_to_watts(20.0);
    int low = 0, solved = 0;
    double worst_gap = 0.0;
    for (int k = 0; k < count; ++k) {
        const ChannelRealization ch = sample_channel(p, seed + k);
        const SdpSolution s = solve_sdp(build_af_sdp(ch, p, {p.p_max[0], p.p_max[1], 0.5}),
                                        {1e-9, 1e-9, 200});
        if (s.status != SdpStatus::Optimal)
            continue;
        ++solved;
        worst_gap = std::max(worst_gap, s.duality_gap);
        if (extract_rank_one(s.blocks[0]).rank_ratio <= 1e-4)
            ++low;
    }
    std::ostringstream d;
    d << low << "/" << solved << " with rank ratio <= 1e-4 (N=" << n << "), worst gap "
      << std::setprecision(3) << worst_gap;
    const bool ok = solved == count && low >= 0.95 * count && worst_gap <= 1e-7;
    return {"rank_census", ok, d.str()};
}

CheckResult check_sdp_analytic()
{
    const SdpTolerances tight{1e-10, 1e-10, 200};
    SdpProblem ball;
    ball.blocks = {{"X", 2}};
    ball.objective = {CMatrix::Identity(2, 2)};
    ball.constraints = {{"trace", {CMatrix::Identity(2, 2)}, ConstraintSense::LessEqual, 1.0}};
    const SdpSolution a = solve_sdp(ball, tight);

    SdpProblem lp;
    lp.blocks = {{"X", 2}};
    CMatrix c = CMatrix::Zero(2, 2);
    c(0, 0) = 1.0;
    c(1, 1) = 2.0;
    lp.objective = {c};
    lp.constraints = {{"sum", {CMatrix::Identity(2, 2)}, ConstraintSense::LessEqual, 1.0}};
    const SdpSolution b = solve_sdp(lp, tight);

    const double e1 = std::abs(a.objective_value - 1.0);
    const double e2 = std::abs(b.objective_value - 2.0);
    std::ostringstream d;
    d << "trace-ball error " << std::setprecision(3) << e1 << ", diagonal LP error " << e2;
    const bool ok = a.status == SdpStatus::Optimal && b.status == SdpStatus::Optimal &&
                    e1 <= 1e-8 && e2 <= 1e-8;
    return {"sdp_analytic", ok, d.str()};
}

void print_checks(const std::vector<CheckResult>& checks, std::ostream& out)
{
    for (const auto& c : checks)
        out << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(18) << c.name << c.detail
            << '\n';
}

}  // namespace swipt
