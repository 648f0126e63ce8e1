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

#ifndef SWIPT_MODEL_HPP
#define SWIPT_MODEL_HPP

#include <array>
#include <cstdint>

#include "swipt/linalg.hpp"

namespace swipt {

/// Per-node pair of scalars, index 0 is S1 and index 1 is S2.
using NodePair = std::array<double, 2>;

/// System constants of the two-way relay network.
///
/// Powers are in the harness power unit (1.0 == 0 dBm == 1 mW). Energies use
/// the slot length, so with slot_length = 1 they read as power per slot.
struct SystemParams {
    int n_antennas = 4;
    double slot_length = 1.0;
    double eta = 0.5;
    double sigma_r2 = 1.0;
    NodePair sigma_d2{1.0, 1.0};
    NodePair sigma_c2{1.0, 1.0};
    NodePair p_max{3.1622776601683795, 3.1622776601683795};
    double p_relay = 100.0;
    NodePair tau{0.15335, 0.15335};
    NodePair weights{0.5, 0.5};
    double pathloss_c = 1.0;
    double pathloss_n = 3.0;
    NodePair distances{1.0, 1.0};

    /// Throws std::invalid_argument naming the first violated invariant.
    void validate() const;

    double alpha() const { return weights[0]; }
    double beta() const { return weights[1]; }
};

/// Uplink (h) and downlink (g) channel vectors of one fading block.
struct ChannelRealization {
    CVector h1, h2, g1, g2;
    std::uint64_t seed = 0;

    int n_antennas() const { return static_cast<int>(h1.size()); }

    /// Throws std::invalid_argument on length mismatch or non-finite entries.
    void validate(int n_antennas) const;

    /// FNV-1a over the raw entries; used to prove paired trials saw identical channels.
    std::uint64_t hash() const;
};

/// Counter-based generator: output k is splitmix64(key + k * golden_gamma).
///
/// Every draw depends only on (key, counter), so a trial seeded with
/// base_seed + t yields the same stream on any thread.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1).
    double uniform();
    /// Standard normal via Box-Muller; both outputs of a pair are used.
    double normal();

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

/// c * d^(-n). Throws std::domain_error for d <= 0.
double pathloss_gain(double distance, const SystemParams& params);

/// Rayleigh channel scaled by path loss: every entry ~ CN(0, pathloss_gain(d_i)).
ChannelRealization sample_channel(const SystemParams& params, std::uint64_t seed);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// SINR target reaching rate R in the half-duplex broadcast phase: 2^(2R) - 1.
double tau_from_rate(double rate);

/// 0.5 * log2(1 + p_max / sigma2), the reference rate of the rate-fraction presets.
double rate_max(double p_max, double sigma2);

}  // namespace swipt

#endif  // SWIPT_MODEL_HPP
