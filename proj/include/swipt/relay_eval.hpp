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

#ifndef SWIPT_RELAY_EVAL_HPP
#define SWIPT_RELAY_EVAL_HPP

#include <stdexcept>
#include <string>
#include <utility>

#include "swipt/model.hpp"

namespace swipt {

enum class RelayStrategy { AF, DF_XOR, DF_SUP };

std::string to_string(RelayStrategy s);
/// Accepts "af", "xor", "sup" (and the upper-case enum spellings).
RelayStrategy parse_strategy(const std::string& name);

/// Raised when rate targets, SINR targets or power budgets cannot be met.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Relay broadcast-phase design. Only the blocks used by `strategy` are
/// populated: AF {af_w, qx}, DF_XOR {qs, qx}, DF_SUP {qs1, qs2, qx}.
struct BeamformingSolution {
    RelayStrategy strategy = RelayStrategy::AF;
    CMatrix af_w;
    CMatrix qx;
    CMatrix qs;
    CMatrix qs1;
    CMatrix qs2;

    static BeamformingSolution zero(RelayStrategy strategy, int n);

    /// Checks shapes plus the Hermitian / PSD tolerance of every covariance block.
    void validate(int n) const;
};

/// Source transmit powers and the receive power-splitting ratio rho.
struct PowerSplit {
    double p1 = 0.0;
    double p2 = 0.0;
    double rho = 0.5;
};

struct Metrics {
    NodePair sinr{0.0, 0.0};
    NodePair energy{0.0, 0.0};
    double relay_power = 0.0;
    double objective = 0.0;

    /// E_i - P_i T / 2 for node i.
    NodePair net{0.0, 0.0};
};

/// Amplify-and-forward: self-interference is cancelled on the information
/// branch but still harvested on the energy branch.
Metrics evaluate_af(const ChannelRealization& ch, const BeamformingSolution& sol,
                    const PowerSplit& split, const SystemParams& params);

Metrics evaluate_xor(const ChannelRealization& ch, const BeamformingSolution& sol,
                     const PowerSplit& split, const SystemParams& params);

/// Superposition DF: node i decodes only the stream of the other node.
Metrics evaluate_sup(const ChannelRealization& ch, const BeamformingSolution& sol,
                     const PowerSplit& split, const SystemParams& params);

/// Dispatches on sol.strategy.
Metrics evaluate(const ChannelRealization& ch, const BeamformingSolution& sol,
                 const PowerSplit& split, const SystemParams& params);

/// Smallest source powers placing `rates` (bits/s/Hz) inside the MAC capacity
/// region at the relay.
///
/// Starts from the single-user minima sigma_r^2 (2^R_i - 1) / |h_i|^2. When the
/// sum-rate bound is violated both powers are scaled by a common factor found
/// by bisection. Throws InfeasibleError when a power exceeds its cap.
std::pair<double, double> mac_min_powers(const ChannelRealization& ch,
                                         const std::pair<double, double>& rates,
                                         const SystemParams& params);

/// log2 det(I + P1/s h1 h1^H + P2/s h2 h2^H), the MAC sum-rate bound.
double mac_sum_capacity(const ChannelRealization& ch, double p1, double p2, double sigma_r2);

}  // namespace swipt

#endif  // SWIPT_RELAY_EVAL_HPP
