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

#include "swipt/sdp_builders.hpp"

#include <cmath>

namespace swipt {

namespace {

void check_rho(double rho, const char* who)
{
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument(std::string(who) + ": rho must lie in (0, 1)");
}

double info_noise(int i, double rho, const SystemParams& params)
{
    return params.sigma_d2[i] + params.sigma_c2[i] / (1.0 - rho);
}

CMatrix eye(int n)
{
    return CMatrix::Identity(n, n);
}

CMatrix none()
{
    return CMatrix();
}

}  // namespace

SdpProblem build_af_sdp(const ChannelRealization& ch, const SystemParams& params,
                        const PowerSplit& split)
{
    params.validate();
    const int n = ch.n_antennas();
    ch.validate(n);
    check_rho(split.rho, "build_af_sdp");
    if (!(split.p1 >= 0.0 && split.p2 >= 0.0))
        throw std::invalid_argument("build_af_sdp: source powers must be nonnegative");

    const double rho = split.rho;
    const CMatrix hh1 = conj_outer(ch.h1);
    const CMatrix hh2 = conj_outer(ch.h2);
    const CMatrix gg1 = conj_outer(ch.g1);
    const CMatrix gg2 = conj_outer(ch.g2);
    const double a = params.alpha();
    const double b = params.beta();

    SdpProblem p;
    p.blocks = {{"W", n * n}, {"Qx", n}};

    const CMatrix b1 = a * rho * gg1 + b * rho * gg2;
    p.objective = {kron(split.p2 * hh2 + split.p1 * hh1, b1), b1};

    const std::array<const CMatrix*, 2> gg{&gg1, &gg2};
    const std::array<const CMatrix*, 2> hh{&hh1, &hh2};
    const NodePair pw{split.p1, split.p2};
    const char* labels[2] = {kSinr1, kSinr2};
    for (int i = 0; i < 2; ++i) {
        const int other = 1 - i;
        const double tau = params.tau[i];
        SdpConstraint c;
        c.label = labels[i];
        c.sense = ConstraintSense::GreaterEqual;
        c.coeffs = {kron(pw[other] * *hh[other] - tau * params.sigma_r2 * eye(n), *gg[i]),
                    -tau * *gg[i]};
        c.bound = tau * info_noise(i, rho, params);
        p.constraints.push_back(std::move(c));
    }

    SdpConstraint power;
    power.label = kRelayPower;
    power.sense = ConstraintSense::LessEqual;
    power.coeffs = {kron(split.p1 * hh1 + split.p2 * hh2 + params.sigma_r2 * eye(n), eye(n)),
                    eye(n)};
    power.bound = params.p_relay;
    p.constraints.push_back(std::move(power));
    return p;
}

SdpProblem build_xor_sdp(const ChannelRealization& ch, const SystemParams& params, double rho)
{
    params.validate();
    const int n = ch.n_antennas();
    ch.validate(n);
    check_rho(rho, "build_xor_sdp");

    const CMatrix gg1 = conj_outer(ch.g1);
    const CMatrix gg2 = conj_outer(ch.g2);
    const CMatrix a3 = params.alpha() * gg1 + params.beta() * gg2;

    SdpProblem p;
    p.blocks = {{"Qs", n}, {"Qx", n}};
    p.objective = {a3, a3};

    const std::array<const CMatrix*, 2> gg{&gg1, &gg2};
    const char* labels[2] = {kSinr1, kSinr2};
    for (int i = 0; i < 2; ++i) {
        const double tau = params.tau[i];
        p.constraints.push_back({labels[i], {*gg[i], -tau * *gg[i]}, ConstraintSense::GreaterEqual,
                                 tau * info_noise(i, rho, params)});
    }
    p.constraints.push_back(
        {kRelayPower, {eye(n), eye(n)}, ConstraintSense::LessEqual, params.p_relay});
    return p;
}

SdpProblem build_sup_sdp(const ChannelRealization& ch, const SystemParams& params, double rho)
{
    params.validate();
    const int n = ch.n_antennas();
    ch.validate(n);
    check_rho(rho, "build_sup_sdp");

    const CMatrix gg1 = conj_outer(ch.g1);
    const CMatrix gg2 = conj_outer(ch.g2);
    const CMatrix a5 = params.alpha() * gg1 + params.beta() * gg2;

    SdpProblem p;
    p.blocks = {{"Qs1", n}, {"Qs2", n}, {"Qx", n}};
    p.objective = {a5, a5, a5};

    const double t1 = params.tau[0];
    const double t2 = params.tau[1];
    p.constraints.push_back({kSinr1, {none(), gg1, -t1 * gg1}, ConstraintSense::GreaterEqual,
                             t1 * info_noise(0, rho, params)});
    p.constraints.push_back({kSinr2, {gg2, none(), -t2 * gg2}, ConstraintSense::GreaterEqual,
                             t2 * info_noise(1, rho, params)});
    p.constraints.push_back(
        {kRelayPower, {eye(n), eye(n), eye(n)}, ConstraintSense::LessEqual, params.p_relay});
    return p;
}

RankOneResult extract_rank_one(const CMatrix& wtilde)
{
    const Eigen::Index dim = wtilde.rows();
    if (dim == 0 || wtilde.cols() != dim)
        throw std::invalid_argument("extract_rank_one: matrix must be square and nonempty");
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
    if (static_cast<Eigen::Index>(n) * n != dim)
        throw std::invalid_argument("extract_rank_one: dimension must be a perfect square");
    if (wtilde.cwiseAbs().maxCoeff() == 0.0)
        throw DegenerateSolutionError("extract_rank_one: all-zero lifted matrix");

    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(wtilde));
    const auto& ev = es.eigenvalues();
    const double l1 = ev(dim - 1);
    if (!(l1 > 0.0))
        throw DegenerateSolutionError("extract_rank_one: no positive eigenvalue");
    const double l2 = dim > 1 ? std::max(0.0, ev(dim - 2)) : 0.0;

    CVector w = std::sqrt(l1) * es.eigenvectors().col(dim - 1);
    Eigen::Index k = 0;
    w.cwiseAbs().maxCoeff(&k);
    w *= std::polar(1.0, -std::arg(w(k)));

    RankOneResult r;
    r.w_matrix = unvec(w, n, n);
    r.w = std::move(w);
    r.rank_ratio = l2 / l1;
    return r;
}

}  // namespace swipt
