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

#ifndef SWIPT_OPTIMIZERS_HPP
#define SWIPT_OPTIMIZERS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swipt/relay_eval.hpp"
#include "swipt/sdp.hpp"

namespace swipt {

struct OptimizeOptions {
    int max_iters = 50;
    double rel_tol = 1e-6;
    /// Starting point; defaults to P_i = P_max,i and rho = 0.5.
    std::optional<PowerSplit> init_split;
    /// Solver accuracy of every beamforming SDP.
    SdpTolerances sdp{1e-9, 1e-9, 200};

    void validate() const;
};

enum class OptimizeStatus { Converged, MaxIters, Infeasible, RankRepairFailed };

std::string to_string(OptimizeStatus s);

struct OptimizeResult {
    BeamformingSolution solution;
    PowerSplit split;
    Metrics metrics;
    /// Objective after every step: [SDP step, power/rho step] per outer iteration.
    std::vector<double> trace;
    OptimizeStatus status = OptimizeStatus::Infeasible;
    int iterations = 0;
    /// lambda_2 / lambda_1 of every AF lifted solution (empty for DF).
    std::vector<double> rank_ratios;
    /// Largest SDP duality gap seen.
    double max_sdp_gap = 0.0;

    bool ok() const
    {
        return status == OptimizeStatus::Converged || status == OptimizeStatus::MaxIters;
    }
};

using RatePair = std::pair<double, double>;

/// Rates matching the SINR targets: R_i = log2(1 + tau_i) / 2.
RatePair rates_from_tau(const SystemParams& params);

/// Relay power of an AF design at the given source powers.
double af_relay_power(const ChannelRealization& ch, const CMatrix& w, const CMatrix& qx,
                      const PowerSplit& split, const SystemParams& params);

/// Alternates the AF beamforming SDP with the closed-form power / splitting step.
OptimizeResult optimize_af(const ChannelRealization& ch, const SystemParams& params,
                           const OptimizeOptions& opts = {});

/// Fixes the source powers at the MAC minimum for `rates` and alternates the
/// XOR covariance SDP with the closed-form rho update.
OptimizeResult optimize_xor(const ChannelRealization& ch, const SystemParams& params,
                            const RatePair& rates, const OptimizeOptions& opts = {});

OptimizeResult optimize_sup(const ChannelRealization& ch, const SystemParams& params,
                            const RatePair& rates, const OptimizeOptions& opts = {});

/// Dispatches to the joint optimizer; DF strategies use rates_from_tau(params).
OptimizeResult optimize_joint(const ChannelRealization& ch, const SystemParams& params,
                              RelayStrategy strategy, const OptimizeOptions& opts = {});

/// One beamforming SDP at P_i = P_max,i (AF) or the MAC powers (DF), rho = 0.5.
OptimizeResult baseline_precoding_only(const ChannelRealization& ch, const SystemParams& params,
                                       RelayStrategy strategy, const OptimizeOptions& opts = {});

/// Fixed isotropic relay design, optimizing only (P1, P2, rho).
///
/// AF uses W = kappa I and Qx = 0 with kappa spending P_r exactly at P_max.
/// DF splits P_r equally over its blocks, each set to (share / N) I.
OptimizeResult baseline_allocation_only(const ChannelRealization& ch, const SystemParams& params,
                                        RelayStrategy strategy, const OptimizeOptions& opts = {});

}  // namespace swipt

#endif  // SWIPT_OPTIMIZERS_HPP
