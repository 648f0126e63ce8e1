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

#include "swipt/relay_eval.hpp"

#include <algorithm>
#include <cmath>

namespace swipt {

namespace {

void require_shape(const CMatrix& m, int n, const char* what)
{
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument(std::string("BeamformingSolution: ") + what +
                                    " must be N x N");
}

void require_covariance(const CMatrix& m, int n, const char* what)
{
    require_shape(m, n, what);
    if (!is_hermitian(m, 1e-10))
        throw std::invalid_argument(std::string("BeamformingSolution: ") + what +
                                    " is not Hermitian");
    const double tr = std::max(std::abs(m.trace().real()), 1e-300);
    if (min_eigenvalue(m) < -1e-9 * tr)
        throw std::invalid_argument(std::string("BeamformingSolution: ") + what +
                                    " is not positive semidefinite");
}

void check_inputs(const ChannelRealization& ch, const BeamformingSolution& sol,
                  const PowerSplit& split, RelayStrategy expected)
{
    if (sol.strategy != expected)
        throw std::invalid_argument("evaluate: solution strategy mismatch");
    const int n = ch.n_antennas();
    ch.validate(n);
    sol.validate(n);
    if (!(split.rho >= 0.0 && split.rho < 1.0))
        throw std::invalid_argument("evaluate: rho must lie in [0, 1)");
}

Metrics finish(NodePair sinr, NodePair received, const PowerSplit& split, double relay_power,
               const SystemParams& params)
{
    Metrics m;
    m.sinr = sinr;
    const double scale = 0.5 * params.eta * params.slot_length * split.rho;
    m.energy = {scale * received[0], scale * received[1]};
    m.relay_power = relay_power;
    m.net = {m.energy[0] - 0.5 * split.p1 * params.slot_length,
             m.energy[1] - 0.5 * split.p2 * params.slot_length};
    m.objective = params.alpha() * m.net[0] + params.beta() * m.net[1];
    return m;
}

double info_noise(int i, double interference, const PowerSplit& split, const SystemParams& params)
{
    return interference + params.sigma_d2[i] + params.sigma_c2[i] / (1.0 - split.rho);
}

}  // namespace

std::string to_string(RelayStrategy s)
{
    switch (s) {
    case RelayStrategy::AF: return "af";
    case RelayStrategy::DF_XOR: return "xor";
    case RelayStrategy::DF_SUP: return "sup";
    }
    return "?";
}

RelayStrategy parse_strategy(const std::string& name)
{
    if (name == "af" || name == "AF")
        return RelayStrategy::AF;
    if (name == "xor" || name == "DF_XOR" || name == "df-xor")
        return RelayStrategy::DF_XOR;
    if (name == "sup" || name == "DF_SUP" || name == "df-sup")
        return RelayStrategy::DF_SUP;
    throw std::invalid_argument("unknown relay strategy '" + name + "'");
}

BeamformingSolution BeamformingSolution::zero(RelayStrategy strategy, int n)
{
    BeamformingSolution s;
    s.strategy = strategy;
    const CMatrix z = CMatrix::Zero(n, n);
    s.qx = z;
    switch (strategy) {
    case RelayStrategy::AF: s.af_w = z; break;
    case RelayStrategy::DF_XOR: s.qs = z; break;
    case RelayStrategy::DF_SUP:
        s.qs1 = z;
        s.qs2 = z;
        break;
    }
    return s;
}

void BeamformingSolution::validate(int n) const
{
    require_covariance(qx, n, "Q_x");
    switch (strategy) {
    case RelayStrategy::AF: require_shape(af_w, n, "W"); break;
    case RelayStrategy::DF_XOR: require_covariance(qs, n, "Q_s"); break;
    case RelayStrategy::DF_SUP:
        require_covariance(qs1, n, "Q_s1");
        require_covariance(qs2, n, "Q_s2");
        break;
    }
}

Metrics evaluate_af(const ChannelRealization& ch, const BeamformingSolution& sol,
                    const PowerSplit& split, const SystemParams& params)
{
    check_inputs(ch, sol, split, RelayStrategy::AF);
    const CMatrix& w = sol.af_w;
    const CVector wh1 = w * ch.h1;
    const CVector wh2 = w * ch.h2;
    const std::array<const CVector*, 2> g{&ch.g1, &ch.g2};
    const std::array<const CVector*, 2> wh{&wh1, &wh2};
    const NodePair p{split.p1, split.p2};

    NodePair sinr{}, received{};
    for (int i = 0; i < 2; ++i) {
        const int other = 1 - i;
        const double signal = std::norm(g[i]->dot(wh[other]->conjugate()));
        const double self = std::norm(g[i]->dot(wh[i]->conjugate()));
        const double jam = quad_form(*g[i], sol.qx);
        const double amplified_noise = params.sigma_r2 * (g[i]->transpose() * w).squaredNorm();
        sinr[i] = p[other] * signal / info_noise(i, jam + amplified_noise, split, params);
        received[i] = signal * p[other] + self * p[i] + jam;
    }
    const double relay_power = split.p1 * wh1.squaredNorm() + split.p2 * wh2.squaredNorm() +
                               sol.qx.trace().real() + params.sigma_r2 * w.squaredNorm();
    return finish(sinr, received, split, relay_power, params);
}

Metrics evaluate_xor(const ChannelRealization& ch, const BeamformingSolution& sol,
                     const PowerSplit& split, const SystemParams& params)
{
    check_inputs(ch, sol, split, RelayStrategy::DF_XOR);
    const std::array<const CVector*, 2> g{&ch.g1, &ch.g2};
    NodePair sinr{}, received{};
    for (int i = 0; i < 2; ++i) {
        const double info = quad_form(*g[i], sol.qs);
        const double jam = quad_form(*g[i], sol.qx);
        sinr[i] = info / info_noise(i, jam, split, params);
        received[i] = info + jam;
    }
    const double relay_power = sol.qs.trace().real() + sol.qx.trace().real();
    return finish(sinr, received, split, relay_power, params);
}

Metrics evaluate_sup(const ChannelRealization& ch, const BeamformingSolution& sol,
                     const PowerSplit& split, const SystemParams& params)
{
    check_inputs(ch, sol, split, RelayStrategy::DF_SUP);
    const std::array<const CVector*, 2> g{&ch.g1, &ch.g2};
    const std::array<const CMatrix*, 2> streams{&sol.qs1, &sol.qs2};
    NodePair sinr{}, received{};
    for (int i = 0; i < 2; ++i) {
        const double own = quad_form(*g[i], *streams[i]);
        const double wanted = quad_form(*g[i], *streams[1 - i]);
        const double jam = quad_form(*g[i], sol.qx);
        sinr[i] = wanted / info_noise(i, jam, split, params);
        received[i] = own + wanted + jam;
    }
    const double relay_power =
        sol.qs1.trace().real() + sol.qs2.trace().real() + sol.qx.trace().real();
    return finish(sinr, received, split, relay_power, params);
}

Metrics evaluate(const ChannelRealization& ch, const BeamformingSolution& sol,
                 const PowerSplit& split, const SystemParams& params)
{
    switch (sol.strategy) {
    case RelayStrategy::AF: return evaluate_af(ch, sol, split, params);
    case RelayStrategy::DF_XOR: return evaluate_xor(ch, sol, split, params);
    case RelayStrategy::DF_SUP: return evaluate_sup(ch, sol, split, params);
    }
    throw std::invalid_argument("evaluate: unknown strategy");
}

double mac_sum_capacity(const ChannelRealization& ch, double p1, double p2, double sigma_r2)
{
    // det(I_N + U U^H) = det(I_2 + U^H U) with U = [sqrt(p1/s) h1, sqrt(p2/s) h2].
    const double a = p1 / sigma_r2 * ch.h1.squaredNorm();
    const double b = p2 / sigma_r2 * ch.h2.squaredNorm();
    const double c = p1 * p2 / (sigma_r2 * sigma_r2) * std::norm(ch.h1.dot(ch.h2));
    return std::log2((1.0 + a) * (1.0 + b) - c);
}

std::pair<double, double> mac_min_powers(const ChannelRealization& ch,
                                         const std::pair<double, double>& rates,
                                         const SystemParams& params)
{
    const auto [r1, r2] = rates;
    if (!(r1 >= 0.0 && r2 >= 0.0))
        throw std::domain_error("mac_min_powers: rates must be nonnegative");

    auto single_user = [&](double rate, const CVector& h) {
        if (rate == 0.0)
            return 0.0;
        const double gain = h.squaredNorm();
        if (!(gain > 0.0))
            throw InfeasibleError("mac_min_powers: zero uplink channel");
        return params.sigma_r2 * (std::exp2(rate) - 1.0) / gain;
    };
    double p1 = single_user(r1, ch.h1);
    double p2 = single_user(r2, ch.h2);

    const double target = r1 + r2;
    auto sum_ok = [&](double c) {
        return mac_sum_capacity(ch, c * p1, c * p2, params.sigma_r2) >= target;
    };
    if (target > 0.0 && !sum_ok(1.0)) {
        double lo = 1.0;
        double hi = 2.0;
        for (int k = 0; k < 200 && !sum_ok(hi); ++k) {
            lo = hi;
            hi *= 2.0;
        }
        for (int k = 0; k < 200 && hi - lo > 1e-10 * hi; ++k) {
            const double mid = 0.5 * (lo + hi);
            (sum_ok(mid) ? hi : lo) = mid;
        }
        p1 *= hi;
        p2 *= hi;
    }

    if (p1 > params.p_max[0] * (1.0 + 1e-12) || p2 > params.p_max[1] * (1.0 + 1e-12))
        throw InfeasibleError("mac_min_powers: rate pair needs more than the source power cap");
    return {p1, p2};
}

}  // namespace swipt
