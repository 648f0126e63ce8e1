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

#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "swipt/config.hpp"
#include "swipt/model.hpp"

using namespace swipt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("path loss gain")
{
    const SystemParams p;
    CHECK_THAT(pathloss_gain(1.0, p), WithinAbs(1.0, 1e-15));
    CHECK_THAT(pathloss_gain(2.0, p), WithinAbs(0.125, 1e-15));
    CHECK_THROWS_AS(pathloss_gain(0.0, p), std::domain_error);
    CHECK_THROWS_AS(pathloss_gain(-1.0, p), std::domain_error);
}

TEST_CASE("unit conversions")
{
    CHECK_THAT(dbm_to_watts(0.0), WithinAbs(1.0, 1e-15));
    CHECK_THAT(dbm_to_watts(5.0), WithinRel(3.1622776601683795, 1e-14));
    CHECK_THAT(dbm_to_watts(20.0), WithinRel(100.0, 1e-14));
    CHECK_THAT(watts_to_dbm(dbm_to_watts(17.3)), WithinAbs(17.3, 1e-12));
}

TEST_CASE("rate to SINR target")
{
    CHECK_THAT(tau_from_rate(0.5), WithinAbs(1.0, 1e-15));
    CHECK_THAT(tau_from_rate(0.0), WithinAbs(0.0, 1e-15));
    CHECK_THROWS_AS(tau_from_rate(-0.1), std::domain_error);
    // gamma = 0.1 of the half-duplex reference rate at P_max = 5 dBm.
    const double r = 0.1 * rate_max(dbm_to_watts(5.0), 1.0);
    CHECK_THAT(r, WithinAbs(0.1 * 0.5 * std::log2(1.0 + 3.1622776601683795), 1e-15));
    CHECK_THAT(tau_from_rate(r), WithinAbs(std::pow(1.0 + 3.1622776601683795, 0.1) - 1.0, 1e-12));
}

TEST_CASE("parameter validation")
{
    SystemParams p;
    CHECK_NOTHROW(p.validate());
    SystemParams bad = p;
    bad.eta = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.weights = {0.6, 0.6};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.distances = {1.0, 0.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.n_antennas = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("channel sampling is deterministic per seed")
{
    const SystemParams p;
    const ChannelRealization a = sample_channel(p, 42);
    const ChannelRealization b = sample_channel(p, 42);
    const ChannelRealization c = sample_channel(p, 43);
    CHECK(a.hash() == b.hash());
    CHECK((a.h1 - b.h1).norm() == 0.0);
    CHECK((a.g2 - b.g2).norm() == 0.0);
    CHECK(a.hash() != c.hash());
    CHECK(a.h1.size() == p.n_antennas);
}

namespace {

// Sample variance of all channel entries over many draws.
double entry_variance(const SystemParams& p, int draws, double& mean_abs_re)
{
    double sum = 0.0, re = 0.0;
    long long count = 0;
    for (int s = 0; s < draws; ++s) {
        const ChannelRealization ch = sample_channel(p, 1000 + s);
        for (const CVector* v : {&ch.h1, &ch.g1}) {
            for (Eigen::Index i = 0; i < v->size(); ++i) {
                sum += std::norm((*v)(i));
                re += (*v)(i).real();
                ++count;
            }
        }
    }
    mean_abs_re = std::abs(re / count);
    return sum / count;
}

}  // namespace

TEST_CASE("channel entries have the path-loss variance")
{
    SystemParams p;
    p.n_antennas = 1;
    double mean = 0.0;
    // 10^5 entries: two vectors of length one per draw.
    CHECK_THAT(entry_variance(p, 50000, mean), WithinAbs(1.0, 0.02));
    CHECK(mean < 0.01);

    p.distances = {2.0, 2.0};
    CHECK_THAT(entry_variance(p, 50000, mean), WithinAbs(0.125, 0.003));
}

TEST_CASE("config parsing")
{
    std::istringstream in("# comment\n n_antennas = 8 \np_relay_dbm = 20\nalpha=0.25\n"
                          "p_max_2_dbm = 10 # trailing\n");
    const KeyValueConfig cfg = parse_config(in);
    const SystemParams p = apply_system_keys(cfg, SystemParams{});
    CHECK(p.n_antennas == 8);
    CHECK_THAT(p.p_relay, WithinRel(100.0, 1e-12));
    CHECK_THAT(p.alpha(), WithinAbs(0.25, 1e-15));
    CHECK_THAT(p.beta(), WithinAbs(0.75, 1e-15));
    CHECK_THAT(p.p_max[0], WithinRel(3.1622776601683795, 1e-12));
    CHECK_THAT(p.p_max[1], WithinRel(10.0, 1e-12));
}

TEST_CASE("config errors")
{
    std::istringstream dup("eta = 0.5\neta = 0.4\n");
    CHECK_THROWS_AS(parse_config(dup), ConfigError);
    std::istringstream noeq("eta 0.5\n");
    CHECK_THROWS_AS(parse_config(noeq), ConfigError);
    std::istringstream badnum("eta = half\n");
    const KeyValueConfig cfg = parse_config(badnum);
    CHECK_THROWS_AS(apply_system_keys(cfg, SystemParams{}), ConfigError);
    std::istringstream invalid("eta = 2\n");
    CHECK_THROWS_AS(apply_system_keys(parse_config(invalid), SystemParams{}), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("sigma2 sets every noise variance")
{
    std::istringstream in("sigma2_dbm = 10\n");
    const SystemParams p = apply_system_keys(parse_config(in), SystemParams{});
    CHECK_THAT(p.sigma_r2, WithinRel(10.0, 1e-12));
    CHECK_THAT(p.sigma_d2[1], WithinRel(10.0, 1e-12));
    CHECK_THAT(p.sigma_c2[0], WithinRel(10.0, 1e-12));
}
