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

#include "swipt/model.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <string>

namespace swipt {

namespace {

void require(bool ok, const char* what)
{
    if (!ok)
        throw std::invalid_argument(std::string("SystemParams: ") + what);
}

bool positive_pair(const NodePair& p)
{
    return p[0] > 0.0 && p[1] > 0.0 && std::isfinite(p[0]) && std::isfinite(p[1]);
}

std::uint64_t splitmix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

void SystemParams::validate() const
{
    require(n_antennas >= 1, "n_antennas must be positive");
    require(slot_length > 0.0, "slot_length must be positive");
    require(eta > 0.0 && eta < 1.0, "eta must lie in (0, 1)");
    require(sigma_r2 > 0.0, "sigma_r2 must be positive");
    require(positive_pair(sigma_d2), "sigma_d2 must be positive");
    require(positive_pair(sigma_c2), "sigma_c2 must be positive");
    require(positive_pair(p_max), "p_max must be positive");
    require(p_relay > 0.0 && std::isfinite(p_relay), "p_relay must be positive");
    require(tau[0] >= 0.0 && tau[1] >= 0.0, "tau must be nonnegative");
    require(positive_pair(weights), "weights must be positive");
    require(std::abs(weights[0] + weights[1] - 1.0) <= 1e-9, "weights must sum to 1");
    require(pathloss_c > 0.0, "pathloss_c must be positive");
    require(pathloss_n >= 0.0, "pathloss_n must be nonnegative");
    require(positive_pair(distances), "distances must be positive");
}

void ChannelRealization::validate(int n) const
{
    for (const CVector* v : {&h1, &h2, &g1, &g2}) {
        if (v->size() != n)
            throw std::invalid_argument("ChannelRealization: vector length differs from N");
        if (!v->allFinite())
            throw std::invalid_argument("ChannelRealization: non-finite entry");
    }
}

std::uint64_t ChannelRealization::hash() const
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](double x) {
        std::uint64_t bits;
        std::memcpy(&bits, &x, sizeof bits);
        for (int k = 0; k < 8; ++k) {
            h ^= (bits >> (8 * k)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    for (const CVector* v : {&h1, &h2, &g1, &g2})
        for (Eigen::Index i = 0; i < v->size(); ++i) {
            mix((*v)(i).real());
            mix((*v)(i).imag());
        }
    return h;
}

std::uint64_t CounterRng::next_u64()
{
    return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
}

double CounterRng::uniform()
{
    // 53 random bits, shifted off zero.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal()
{
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(t);
    has_cached_ = true;
    return r * std::cos(t);
}

double pathloss_gain(double distance, const SystemParams& params)
{
    if (!(distance > 0.0))
        throw std::domain_error("pathloss_gain: distance must be positive");
    return params.pathloss_c * std::pow(distance, -params.pathloss_n);
}

ChannelRealization sample_channel(const SystemParams& params, std::uint64_t seed)
{
    params.validate();
    const int n = params.n_antennas;
    CounterRng rng(seed);

    auto draw = [&](double gain) {
        const double s = std::sqrt(gain / 2.0);
        CVector v(n);
        for (int i = 0; i < n; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            v(i) = cdouble(s * re, s * im);
        }
        return v;
    };

    const double gain1 = pathloss_gain(params.distances[0], params);
    const double gain2 = pathloss_gain(params.distances[1], params);

    ChannelRealization ch;
    ch.seed = seed;
    ch.h1 = draw(gain1);
    ch.h2 = draw(gain2);
    ch.g1 = draw(gain1);
    ch.g2 = draw(gain2);
    return ch;
}

double dbm_to_watts(double dbm)
{
    return std::pow(10.0, dbm / 10.0);
}

double watts_to_dbm(double watts)
{
    return 10.0 * std::log10(watts);
}

double tau_from_rate(double rate)
{
    if (rate < 0.0)
        throw std::domain_error("tau_from_rate: rate must be nonnegative");
    return std::exp2(2.0 * rate) - 1.0;
}

double rate_max(double p_max, double sigma2)
{
    return 0.5 * std::log2(1.0 + p_max / sigma2);
}

}  // namespace swipt
