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

#include "swipt/optimizers.hpp"

#include <cmath>
#include <tuple>

#include "swipt/ps_solver.hpp"
#include "swipt/sdp_builders.hpp"

namespace swipt {

namespace {

constexpr double kRankTol = 1e-4;
constexpr double kSinrTol = 1e-9;

bool sinr_ok(const Metrics& m, const SystemParams& params)
{
    for (int i = 0; i < 2; ++i)
        if (m.sinr[i] - params.tau[i] < -kSinrTol * (1.0 + params.tau[i]))
            return false;
    return true;
}

bool improved_enough(double prev, double next, double rel_tol)
{
    return std::abs(next - prev) > rel_tol * (1.0 + std::abs(next));
}

struct Iterate {
    BeamformingSolution sol;
    PowerSplit split;
    Metrics metrics;
};

void finish(OptimizeResult& r, const Iterate& best)
{
    r.solution = best.sol;
    r.split = best.split;
    r.metrics = best.metrics;
}

// Beamforming SDP plus rank-one extraction. The principal component is scaled
// to spend the whole relay budget, which raises both SINRs and the harvested
// energy.
struct AfStep {
    SdpStatus status = SdpStatus::NumericalFailure;
    BeamformingSolution sol;
    double rank_ratio = 0.0;
    double gap = 0.0;
};

AfStep af_sdp_step(const ChannelRealization& ch, const SystemParams& params,
                   const PowerSplit& split, const SdpTolerances& tol)
{
    AfStep step;
    const SdpSolution s = solve_sdp(build_af_sdp(ch, params, split), tol);
    step.status = s.status;
    step.gap = s.duality_gap;
    if (s.status != SdpStatus::Optimal)
        return step;

    const int n = ch.n_antennas();
    RankOneResult r1;
    try {
        r1 = extract_rank_one(s.blocks[0]);
    } catch (const DegenerateSolutionError&) {
        r1.w_matrix = CMatrix::Zero(n, n);
        r1.rank_ratio = 1.0;
    }
    step.rank_ratio = r1.rank_ratio;

    CMatrix qx = project_psd(s.blocks[1]);
    const double qx_power = qx.trace().real();
    if (qx_power > params.p_relay)
        qx *= params.p_relay / qx_power;
    CMatrix w = r1.w_matrix;
    const double w_power = af_relay_power(ch, w, CMatrix::Zero(n, n), split, params);
    const double spare = params.p_relay - qx.trace().real();
    if (w_power > 0.0 && spare > 0.0)
        w *= std::sqrt(spare / w_power);

    step.sol = BeamformingSolution::zero(RelayStrategy::AF, n);
    step.sol.af_w = w;
    step.sol.qx = qx;
    return step;
}

PowerSplit initial_split(const SystemParams& params, const OptimizeOptions& opts)
{
    if (opts.init_split)
        return *opts.init_split;
    return {params.p_max[0], params.p_max[1], 0.5};
}

// DF covariance SDP at fixed rho; blocks are projected onto the PSD cone.
std::optional<BeamformingSolution> df_sdp_step(const ChannelRealization& ch,
                                               const SystemParams& params, RelayStrategy strategy,
                                               double rho, const SdpTolerances& tol, double& gap)
{
    const bool is_xor = strategy == RelayStrategy::DF_XOR;
    const SdpSolution s = solve_sdp(
        is_xor ? build_xor_sdp(ch, params, rho) : build_sup_sdp(ch, params, rho), tol);
    gap = s.duality_gap;
    if (s.status != SdpStatus::Optimal)
        return std::nullopt;
    BeamformingSolution sol = BeamformingSolution::zero(strategy, ch.n_antennas());
    if (is_xor) {
        sol.qs = project_psd(s.blocks[0]);
        sol.qx = project_psd(s.blocks[1]);
    } else {
        sol.qs1 = project_psd(s.blocks[0]);
        sol.qs2 = project_psd(s.blocks[1]);
        sol.qx = project_psd(s.blocks[2]);
    }
    return sol;
}

OptimizeResult optimize_df(const ChannelRealization& ch, const SystemParams& params,
                           RelayStrategy strategy, const RatePair& rates,
                           const OptimizeOptions& opts)
{
    params.validate();
    opts.validate();
    OptimizeResult res;
    double p1 = 0.0, p2 = 0.0;
    try {
        std::tie(p1, p2) = mac_min_powers(ch, rates, params);
    } catch (const InfeasibleError&) {
        return res;
    }

    Iterate cur;
    cur.split = {p1, p2, opts.init_split ? opts.init_split->rho : 0.5};
    std::optional<Iterate> best;
    double prev = 0.0;

    for (int it = 0; it < opts.max_iters; ++it) {
        res.iterations = it + 1;
        double gap = 0.0;
        auto sol = df_sdp_step(ch, params, strategy, cur.split.rho, opts.sdp, gap);
        res.max_sdp_gap = std::max(res.max_sdp_gap, gap);
        if (!sol) {
            if (!best) {
                res.status = OptimizeStatus::Infeasible;
                return res;
            }
            res.trace.push_back(prev);
            res.trace.push_back(prev);
            res.status = OptimizeStatus::Converged;
            break;
        }
        const Metrics m = evaluate(ch, *sol, cur.split, params);
        // The SDP maximizes at fixed rho, so a lower value is solver noise.
        if (!best || m.objective >= prev) {
            cur.sol = *sol;
            cur.metrics = m;
        }
        res.trace.push_back(cur.metrics.objective);

        double rho = 0.0;
        try {
            const auto [c, d] = df_rho_coefficients(ch, cur.sol, params);
            rho = solve_rho_df(c, d, params);
        } catch (const InfeasibleError&) {
            if (!best) {
                res.status = OptimizeStatus::Infeasible;
                return res;
            }
            res.trace.push_back(prev);
            res.status = OptimizeStatus::Converged;
            break;
        }
        cur.split.rho = rho;
        cur.metrics = evaluate(ch, cur.sol, cur.split, params);
        res.trace.push_back(cur.metrics.objective);

        const bool first = !best;
        const double last = prev;
        if (!best || cur.metrics.objective >= best->metrics.objective)
            best = cur;
        prev = cur.metrics.objective;
        if (!first && !improved_enough(last, prev, opts.rel_tol)) {
            res.status = OptimizeStatus::Converged;
            break;
        }
        res.status = OptimizeStatus::MaxIters;
    }
    finish(res, *best);
    return res;
}

}  // namespace

void OptimizeOptions::validate() const
{
    if (max_iters < 1)
        throw std::invalid_argument("OptimizeOptions: max_iters must be at least 1");
    if (!(rel_tol > 0.0))
        throw std::invalid_argument("OptimizeOptions: rel_tol must be positive");
    if (init_split && !(init_split->rho > 0.0 && init_split->rho < 1.0))
        throw std::invalid_argument("OptimizeOptions: initial rho must lie in (0, 1)");
}

std::string to_string(OptimizeStatus s)
{
    switch (s) {
    case OptimizeStatus::Converged: return "converged";
    case OptimizeStatus::MaxIters: return "max_iters";
    case OptimizeStatus::Infeasible: return "infeasible";
    case OptimizeStatus::RankRepairFailed: return "rank_repair_failed";
    }
    return "?";
}

RatePair rates_from_tau(const SystemParams& params)
{
    return {0.5 * std::log2(1.0 + params.tau[0]), 0.5 * std::log2(1.0 + params.tau[1])};
}

double af_relay_power(const ChannelRealization& ch, const CMatrix& w, const CMatrix& qx,
                      const PowerSplit& split, const SystemParams& params)
{
    return split.p1 * (w * ch.h1).squaredNorm() + split.p2 * (w * ch.h2).squaredNorm() +
           params.sigma_r2 * w.squaredNorm() + qx.trace().real();
}

namespace {

OptimizeResult optimize_af_from(const ChannelRealization& ch, const SystemParams& params,
                                const OptimizeOptions& opts)
{
    OptimizeResult res;

    Iterate cur;
    cur.split = initial_split(params, opts);
    std::optional<Iterate> best;
    double prev = 0.0;

    for (int it = 0; it < opts.max_iters; ++it) {
        res.iterations = it + 1;

        AfStep step = af_sdp_step(ch, params, cur.split, opts.sdp);
        res.max_sdp_gap = std::max(res.max_sdp_gap, step.gap);
        if (step.status != SdpStatus::Optimal) {
            if (!best) {
                res.status = OptimizeStatus::Infeasible;
                return res;
            }
            // The previous design is feasible here, so this is a solver stall.
            res.trace.push_back(prev);
            res.trace.push_back(prev);
            res.status = OptimizeStatus::Converged;
            break;
        }
        res.rank_ratios.push_back(step.rank_ratio);
        const Metrics m = evaluate_af(ch, step.sol, cur.split, params);
        if (step.rank_ratio > kRankTol && !sinr_ok(m, params)) {
            res.status = OptimizeStatus::RankRepairFailed;
            if (!best) {
                cur.sol = step.sol;
                cur.metrics = m;
                finish(res, cur);
                res.trace.push_back(m.objective);
                return res;
            }
            break;
        }
        if (!best || m.objective >= prev) {
            cur.sol = step.sol;
            cur.metrics = m;
        }
        res.trace.push_back(cur.metrics.objective);

        const PsCoefficients coeffs =
            compute_ps_coefficients(ch, cur.sol.af_w, cur.sol.qx, params);
        PsCandidate cand;
        try {
            cand = solve_ps_candidate(coeffs);
        } catch (const InfeasibleError&) {
            if (!best) {
                res.status = OptimizeStatus::Infeasible;
                return res;
            }
            res.trace.push_back(prev);
            res.status = OptimizeStatus::Converged;
            break;
        }
        const Metrics mp = evaluate_af(ch, cur.sol, cand.split, params);
        if (!best || mp.objective >= cur.metrics.objective || !sinr_ok(cur.metrics, params)) {
            cur.split = cand.split;
            cur.metrics = mp;
        }
        res.trace.push_back(cur.metrics.objective);

        const bool first = !best;
        const double last = prev;
        if (!best || cur.metrics.objective >= best->metrics.objective)
            best = cur;
        prev = cur.metrics.objective;
        if (!first && !improved_enough(last, prev, opts.rel_tol)) {
            res.status = OptimizeStatus::Converged;
            break;
        }
        res.status = OptimizeStatus::MaxIters;
    }
    finish(res, *best);
    return res;
}

}  // namespace

OptimizeResult optimize_af(const ChannelRealization& ch, const SystemParams& params,
                           const OptimizeOptions& opts)
{
    params.validate();
    opts.validate();
    OptimizeResult res = optimize_af_from(ch, params, opts);
    if (opts.init_split)
        return res;

    // From P_max and rho = 0.5 the SDP leaves both SINR targets tight, which
    // pins the power step to the same split. A second start from the
    // isotropic allocation point reaches the high-rho region instead; its
    // relay matrix is feasible for that SDP, so the start never loses to the
    // allocation-only baseline.
    const OptimizeResult alloc = baseline_allocation_only(ch, params, RelayStrategy::AF, opts);
    if (!alloc.ok())
        return res;
    OptimizeOptions second = opts;
    second.init_split = alloc.split;
    OptimizeResult alt = optimize_af_from(ch, params, second);
    if (alt.ok() && (!res.ok() || alt.metrics.objective > res.metrics.objective))
        return alt;
    return res;
}

OptimizeResult optimize_xor(const ChannelRealization& ch, const SystemParams& params,
                            const RatePair& rates, const OptimizeOptions& opts)
{
    return optimize_df(ch, params, RelayStrategy::DF_XOR, rates, opts);
}

OptimizeResult optimize_sup(const ChannelRealization& ch, const SystemParams& params,
                            const RatePair& rates, const OptimizeOptions& opts)
{
    return optimize_df(ch, params, RelayStrategy::DF_SUP, rates, opts);
}

OptimizeResult optimize_joint(const ChannelRealization& ch, const SystemParams& params,
                              RelayStrategy strategy, const OptimizeOptions& opts)
{
    switch (strategy) {
    case RelayStrategy::AF: return optimize_af(ch, params, opts);
    case RelayStrategy::DF_XOR: return optimize_xor(ch, params, rates_from_tau(params), opts);
    case RelayStrategy::DF_SUP: return optimize_sup(ch, params, rates_from_tau(params), opts);
    }
    throw std::invalid_argument("optimize_joint: unknown strategy");
}

OptimizeResult baseline_precoding_only(const ChannelRealization& ch, const SystemParams& params,
                                       RelayStrategy strategy, const OptimizeOptions& opts)
{
    params.validate();
    opts.validate();
    OptimizeResult res;
    res.iterations = 1;
    Iterate it;

    if (strategy == RelayStrategy::AF) {
        it.split = {params.p_max[0], params.p_max[1], 0.5};
        AfStep step = af_sdp_step(ch, params, it.split, opts.sdp);
        res.max_sdp_gap = step.gap;
        if (step.status != SdpStatus::Optimal) {
            res.status = OptimizeStatus::Infeasible;
            return res;
        }
        res.rank_ratios.push_back(step.rank_ratio);
        it.sol = step.sol;
        it.metrics = evaluate_af(ch, it.sol, it.split, params);
        res.status = sinr_ok(it.metrics, params) ? OptimizeStatus::Converged
                                                 : OptimizeStatus::RankRepairFailed;
    } else {
        try {
            const auto [p1, p2] = mac_min_powers(ch, rates_from_tau(params), params);
            it.split = {p1, p2, 0.5};
        } catch (const InfeasibleError&) {
            res.status = OptimizeStatus::Infeasible;
            return res;
        }
        double gap = 0.0;
        auto sol = df_sdp_step(ch, params, strategy, 0.5, opts.sdp, gap);
        res.max_sdp_gap = gap;
        if (!sol) {
            res.status = OptimizeStatus::Infeasible;
            return res;
        }
        it.sol = *sol;
        it.metrics = evaluate(ch, it.sol, it.split, params);
        res.status = OptimizeStatus::Converged;
    }
    res.trace.push_back(it.metrics.objective);
    finish(res, it);
    return res;
}

OptimizeResult baseline_allocation_only(const ChannelRealization& ch, const SystemParams& params,
                                        RelayStrategy strategy, const OptimizeOptions& opts)
{
    params.validate();
    opts.validate();
    const int n = ch.n_antennas();
    OptimizeResult res;
    res.iterations = 1;
    Iterate it;
    it.sol = BeamformingSolution::zero(strategy, n);
    const CMatrix eye = CMatrix::Identity(n, n);

    try {
        if (strategy == RelayStrategy::AF) {
            const PowerSplit at_cap{params.p_max[0], params.p_max[1], 0.5};
            const double unit = af_relay_power(ch, eye, it.sol.qx, at_cap, params);
            it.sol.af_w = std::sqrt(params.p_relay / unit) * eye;
            it.split = solve_ps(compute_ps_coefficients(ch, it.sol.af_w, it.sol.qx, params));
        } else {
            const auto [p1, p2] = mac_min_powers(ch, rates_from_tau(params), params);
            const bool is_xor = strategy == RelayStrategy::DF_XOR;
            const CMatrix share = (params.p_relay / (is_xor ? 2.0 : 3.0) / n) * eye;
            it.sol.qx = share;
            if (is_xor) {
                it.sol.qs = share;
            } else {
                it.sol.qs1 = share;
                it.sol.qs2 = share;
            }
            const auto [c, d] = df_rho_coefficients(ch, it.sol, params);
            it.split = {p1, p2, solve_rho_df(c, d, params)};
        }
    } catch (const InfeasibleError&) {
        res.status = OptimizeStatus::Infeasible;
        return res;
    }
    it.metrics = evaluate(ch, it.sol, it.split, params);
    res.trace.push_back(it.metrics.objective);
    res.status = OptimizeStatus::Converged;
    finish(res, it);
    return res;
}

}  // namespace swipt
