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

#ifndef SWIPT_SDP_BUILDERS_HPP
#define SWIPT_SDP_BUILDERS_HPP

#include <stdexcept>

#include "swipt/relay_eval.hpp"
#include "swipt/sdp.hpp"

namespace swipt {

/// Constraint labels shared by the builders and the optimizers.
inline constexpr const char* kSinr1 = "sinr1";
inline constexpr const char* kSinr2 = "sinr2";
inline constexpr const char* kRelayPower = "relay_power";

/// AF beamforming relaxation at fixed (P1, P2, rho).
///
/// Blocks {"W", N^2 x N^2} holding vec(W) vec(W)^H and {"Qx", N x N}. The
/// objective equals (2 / eta T) (alpha E1 + beta E2) for a rank-one W block.
SdpProblem build_af_sdp(const ChannelRealization& ch, const SystemParams& params,
                        const PowerSplit& split);

/// DF-XOR relay covariance design at fixed rho. Blocks {"Qs", "Qx"}; the
/// objective is Tr(A (Qs + Qx)) with A = alpha g1^* g1^T + beta g2^* g2^T.
SdpProblem build_xor_sdp(const ChannelRealization& ch, const SystemParams& params, double rho);

/// DF-SUP design at fixed rho. Blocks {"Qs1", "Qs2", "Qx"}; node 1 decodes the
/// Qs2 stream and node 2 the Qs1 stream.
SdpProblem build_sup_sdp(const ChannelRealization& ch, const SystemParams& params, double rho);

/// Raised by extract_rank_one on an all-zero lifted matrix.
class DegenerateSolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RankOneResult {
    CVector w;
    CMatrix w_matrix;
    /// lambda_2 / lambda_1 of the lifted matrix.
    double rank_ratio = 0.0;
};

/// Principal eigenpair of an N^2 x N^2 lifted matrix: w = sqrt(lambda_1) v_1,
/// W = unvec(w, N, N). The phase is fixed so the largest entry of w is real
/// and positive.
RankOneResult extract_rank_one(const CMatrix& wtilde);

}  // namespace swipt

#endif  // SWIPT_SDP_BUILDERS_HPP
