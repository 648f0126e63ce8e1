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

#ifndef SWIPT_PS_SOLVER_HPP
#define SWIPT_PS_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "swipt/relay_eval.hpp"

namespace swipt {

/*
 * AF power / power-splitting subproblem at a fixed relay design (W, Qx):
 *
 *   maximize   a2 rho P2 + b2 rho P1 + c2 rho - pen1 P1 - pen2 P2
 *   sinr1:     (e2 P2 - d2)(1 - rho) >= tau1 sigma_c1
 *   sinr2:     (g2 P1 - f2)(1 - rho) >= tau2 sigma_c2
 *   relay:     j2 P1 + k2 P2 <= P_r - l2
 *   pmax1/2:   0 < P_i <= P_max,i
 *   rho_range: 0 < rho < 1
 *
 * pen_i = weight_i T / 2, so the objective is exactly alpha net1 + beta net2.
 */
struct PsCoefficients {
    double a2 = 0.0, b2 = 0.0, c2 = 0.0, d2 = 0.0, e2 = 0.0;
    double f2 = 0.0, g2 = 0.0, j2 = 0.0, k2 = 0.0, l2 = 0.0;

    NodePair tau{0.0, 0.0};
    NodePair sigma_c2{1.0, 1.0};
    NodePair weights{0.5, 0.5};
    double slot_length = 1.0;
    double p_relay = 0.0;
    NodePair p_max{0.0, 0.0};

    double pen1() const { return 0.5 * weights[0] * slot_length; }
    double pen2() const { return 0.5 * weights[1] * slot_length; }
    /// tau_i * sigma_c,i, the right-hand side of the SINR constraints.
    double t1() const { return tau[0] * sigma_c2[0]; }
    double t2() const { return tau[1] * sigma_c2[1]; }
};

/// Constraint tags used in PsCandidate::violated and the tightness checks.
inline const std::vector<std::string>& ps_constraint_tags()
{
    static const std::vector<std::string> tags{"sinr1", "sinr2", "relay_power",
                                               "pmax1", "pmax2", "rho_range"};
    return tags;
}

struct PsCandidate {
    /// 1..8 are the two-constraint cases; 9..11 are the three-constraint
    /// vertices {sinr1, sinr2} + {relay_power | pmax1 | pmax2}; 12 is
    /// {sinr1, sinr2} at the lower rho limit, where the penalties outweigh
    /// any harvested energy.
    int case_id = 0;
    PowerSplit split;
    double objective = 0.0;
    bool feasible = false;
    std::vector<std::string> violated;
};

inline constexpr int kPsCaseCount = 12;
inline constexpr double kPsFeasTol = 1e-9;
inline constexpr double kPsTightTol = 1e-7;

PsCoefficients compute_ps_coefficients(const ChannelRealization& ch, const CMatrix& w,
                                       const CMatrix& qx, const SystemParams& params);

double ps_objective(const PowerSplit& split, const PsCoefficients& c);

/// Constraint tags violated at `split` (absolute tolerance kPsFeasTol).
std::vector<std::string> ps_violations(const PowerSplit& split, const PsCoefficients& c);

/// Tags of {sinr1, sinr2, relay_power, pmax1, pmax2} holding with equality
/// within kPsTightTol relative.
std::vector<std::string> ps_tight_constraints(const PowerSplit& split, const PsCoefficients& c);

/// Closed-form candidate of case k, or nullopt when its validity condition
/// fails. The returned candidate is already checked against every constraint.
std::optional<PsCandidate> solve_ps_case(int k, const PsCoefficients& c);

/// Feasible argmax over all cases; ties go to the lowest case id.
/// Throws InfeasibleError when no candidate is feasible.
PsCandidate solve_ps_candidate(const PsCoefficients& c);
PowerSplit solve_ps(const PsCoefficients& c);

/// Exhaustive lattice search: P_i = P_max,i k / res (k = 1..res) and
/// rho = j / (res + 1) (j = 1..res). Parallel over P1 with OpenMP.
std::optional<PsCandidate> ps_grid_oracle(const PsCoefficients& c, int resolution);
/// Single-threaded reference of ps_grid_oracle; returns the same point.
std::optional<PsCandidate> ps_grid_oracle_serial(const PsCoefficients& c, int resolution);

/// min{1 - tau1 sigma_c1 / c, 1 - tau2 sigma_c2 / d}, the largest rho meeting
/// both DF SINR targets. Throws InfeasibleError when c <= tau1 sigma_c1 or
/// d <= tau2 sigma_c2. With zero targets the open-interval limit 1 - 1e-9 is
/// returned.
double solve_rho_df(double c, double d, const SystemParams& params);

/// (C, D) margins for solve_rho_df: g_i^T Q_info g_i^* - tau_i (g_i^T Qx g_i^* + sigma_d,i),
/// with Q_info = Qs (XOR) or the stream node i decodes (SUP).
std::pair<double, double> df_rho_coefficients(const ChannelRealization& ch,
                                              const BeamformingSolution& sol,
                                              const SystemParams& params);

}  // namespace swipt

#endif  // SWIPT_PS_SOLVER_HPP
