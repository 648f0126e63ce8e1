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

// Acceptance run: one PASS / FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "swipt/experiment.hpp"
#include "swipt/linalg.hpp"
#include "swipt/ps_solver.hpp"
#include "swipt/validation.hpp"

using namespace swipt;

namespace {

struct Verdict {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

constexpr std::array<RelayStrategy, 3> kStrategies{RelayStrategy::AF, RelayStrategy::DF_XOR,
                                                   RelayStrategy::DF_SUP};

struct Outcome {
    bool ok = false;
    bool converged = false;
    bool monotone = true;
    double objective = 0.0;
    double sinr_slack = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
};

Outcome summarize_run(const OptimizeResult& r, const SystemParams& p)
{
    Outcome o;
    o.ok = r.ok();
    o.converged = r.status == OptimizeStatus::Converged;
    o.objective = r.metrics.objective;
    o.e1 = r.metrics.energy[0];
    o.e2 = r.metrics.energy[1];
    o.sinr_slack = std::min(r.metrics.sinr[0] - p.tau[0], r.metrics.sinr[1] - p.tau[1]);
    for (std::size_t i = 1; i < r.trace.size(); ++i)
        if (r.trace[i] < r.trace[i - 1] - 1e-8 * (1.0 + std::abs(r.trace[i - 1])))
            o.monotone = false;
    return o;
}

// Symmetric preset runs shared by several criteria, indexed [point][strategy][seed].
struct SymmetricBatch {
    std::vector<double> pr_dbm;
    int trials = 0;
    std::vector<std::array<std::vector<Outcome>, 3>> joint, precoding, allocation, joint_n8;
    std::vector<SystemParams> params;
};

SymmetricBatch run_symmetric_batch()
{
    const ExperimentConfig cfg = preset("symmetric");
    SymmetricBatch b;
    b.pr_dbm = cfg.pr_dbm;
    b.trials = cfg.trials;
    const std::size_t points = cfg.pr_dbm.size();
    for (auto* v : {&b.joint, &b.precoding, &b.allocation, &b.joint_n8})
        v->resize(points);
    for (std::size_t k = 0; k < points; ++k) {
        const SystemParams p = sweep_point_params(cfg, cfg.pr_dbm[k]);
        SystemParams p8 = p;
        p8.n_antennas = 8;
        b.params.push_back(p);
        for (int s = 0; s < 3; ++s)
            for (auto* v : {&b.joint, &b.precoding, &b.allocation, &b.joint_n8})
                (*v)[k][s].resize(cfg.trials);
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < cfg.trials; ++t) {
            const std::uint64_t seed = cfg.base_seed + t;
            const ChannelRealization ch = sample_channel(p, seed);
            const ChannelRealization ch8 = sample_channel(p8, seed);
            for (int s = 0; s < 3; ++s) {
                const RelayStrategy st = kStrategies[s];
                b.joint[k][s][t] = summarize_run(optimize_joint(ch, p, st, cfg.opts), p);
                b.precoding[k][s][t] =
                    summarize_run(baseline_precoding_only(ch, p, st, cfg.opts), p);
                b.allocation[k][s][t] =
                    summarize_run(baseline_allocation_only(ch, p, st, cfg.opts), p);
                b.joint_n8[k][s][t] = summarize_run(optimize_joint(ch8, p8, st, cfg.opts), p8);
            }
        }
    }
    return b;
}

// Paired difference a - b over trials where both runs succeeded.
MeanStderr paired_gap(const std::vector<Outcome>& a, const std::vector<Outcome>& b,
                      const std::function<double(const Outcome&)>& f, int* pairs = nullptr)
{
    std::vector<double> d;
    for (std::size_t t = 0; t < a.size(); ++t)
        if (a[t].ok && b[t].ok)
            d.push_back(f(a[t]) - f(b[t]));
    if (pairs)
        *pairs = static_cast<int>(d.size());
    if (d.empty())
        return {std::nan(""), std::nan("")};
    return mean_stderr(d);
}

double objective_of(const Outcome& o) { return o.objective; }

Verdict criterion_ps_oracle()
{
    const auto t0 = std::chrono::steady_clock::now();
    const CheckResult r = check_ps_oracle(200, 200, 1);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {r.passed && secs < 120.0, r.detail + fmt(", %.1f s (limit 120 s)", secs)};
}

Verdict criterion_ps_tightness()
{
    int feasible = 0, good = 0;
    for (std::uint64_t s = 1; s <= 1000; ++s) {
        const PsCoefficients c = random_ps_coefficients(s);
        PowerSplit split;
        try {
            split = solve_ps(c);
        } catch (const InfeasibleError&) {
            continue;
        }
        ++feasible;
        if (ps_tight_constraints(split, c).size() >= 2)
            ++good;
    }
    return {feasible > 0 && good == feasible,
            fmt("%.0f/%.0f feasible instances with >= 2 tight constraints", good, feasible)};
}

Verdict criterion_rank()
{
    const CheckResult r = check_rank_census(100, 4, 1);
    return {r.passed, r.detail};
}

Verdict criterion_monotone(const SymmetricBatch& b)
{
    // 50 seeds per algorithm at the middle sweep point.
    const std::size_t k = b.pr_dbm.size() / 2;
    std::string detail;
    bool ok = true;
    for (int s = 0; s < 3; ++s) {
        int runs = 0, mono = 0;
        for (int t = 0; t < 50; ++t) {
            const Outcome& o = b.joint[k][s][t];
            if (!o.ok)
                continue;
            ++runs;
            mono += o.monotone;
        }
        ok = ok && runs > 0 && mono == runs;
        detail += to_string(kStrategies[s]) + fmt(" %.0f/%.0f  ", mono, runs);
    }
    return {ok, detail + fmt("(P_r %.0f dBm)", b.pr_dbm[k])};
}

Verdict criterion_df_tightness(const SymmetricBatch& b)
{
    int runs = 0;
    double worst = 0.0;
    for (std::size_t k = 0; k < b.pr_dbm.size(); ++k)
        for (int s = 1; s < 3; ++s)
            for (const Outcome& o : b.joint[k][s])
                if (o.converged) {
                    ++runs;
                    worst = std::max(worst, std::abs(o.sinr_slack));
                }
    return {runs > 0 && worst <= 1e-8,
            fmt("%.0f converged DF runs, worst |min SINR_i - tau_i| %.2e", runs, worst)};
}

Verdict criterion_strategy_order(const SymmetricBatch& b)
{
    bool ok = true;
    std::string detail;
    for (std::size_t k = 0; k < b.pr_dbm.size(); ++k) {
        const MeanStderr xs = paired_gap(b.joint[k][1], b.joint[k][2], objective_of);
        const MeanStderr sa = paired_gap(b.joint[k][2], b.joint[k][0], objective_of);
        ok = ok && xs.mean > xs.stderr_ && sa.mean > sa.stderr_;
        detail += fmt("%.0f dBm: xor-sup %.4g (se %.2g), sup-af %.4g", b.pr_dbm[k], xs.mean,
                      xs.stderr_, sa.mean) +
                  fmt(" (se %.2g); ", sa.stderr_);
    }
    return {ok, detail};
}

Verdict criterion_antennas(const SymmetricBatch& b)
{
    bool ok = true;
    std::string detail;
    for (std::size_t k = 0; k < b.pr_dbm.size(); ++k)
        for (int s = 0; s < 3; ++s) {
            const MeanStderr g = paired_gap(b.joint_n8[k][s], b.joint[k][s], objective_of);
            ok = ok && g.mean >= 0.0;
            detail += to_string(kStrategies[s]) + fmt("@%.0f %+.4g; ", b.pr_dbm[k], g.mean);
        }
    return {ok, "N=8 minus N=4: " + detail};
}

Verdict criterion_scheme_order(const SymmetricBatch& b)
{
    bool ok = true;
    std::string detail;
    for (std::size_t k = 0; k < b.pr_dbm.size(); ++k)
        for (int s = 0; s < 3; ++s) {
            // Means over trials where all three schemes succeeded.
            double j = 0.0, p = 0.0, a = 0.0;
            int n = 0;
            for (int t = 0; t < b.trials; ++t) {
                const Outcome& oj = b.joint[k][s][t];
                const Outcome& op = b.precoding[k][s][t];
                const Outcome& oa = b.allocation[k][s][t];
                if (!(oj.ok && op.ok && oa.ok))
                    continue;
                ++n;
                j += oj.objective;
                p += op.objective;
                a += oa.objective;
            }
            ok = ok && n > 0 && j >= p && p >= a;
            if (n > 0)
                detail += to_string(kStrategies[s]) +
                          fmt("@%.0f %.4g/%.4g/%.4g; ", b.pr_dbm[k], j / n, p / n, a / n);
        }
    return {ok, "joint/precoding/allocation: " + detail};
}

Verdict criterion_near_far()
{
    ExperimentConfig cfg = preset("asymmetric");
    bool ok = true;
    std::string detail;
    for (double pr : cfg.pr_dbm) {
        std::array<std::vector<Outcome>, 2> runs;
        const std::array<double, 2> betas{0.5, 0.75};
        for (int w = 0; w < 2; ++w) {
            SystemParams p = sweep_point_params(cfg, pr);
            p.weights = {1.0 - betas[w], betas[w]};
            runs[w].resize(cfg.trials);
#pragma omp parallel for schedule(dynamic)
            for (int t = 0; t < cfg.trials; ++t) {
                const ChannelRealization ch = sample_channel(p, cfg.base_seed + t);
                runs[w][t] = summarize_run(optimize_joint(ch, p, RelayStrategy::DF_XOR, cfg.opts), p);
            }
        }
        auto share = [](const Outcome& o) {
            return o.e1 + o.e2 > 0.0 ? o.e2 / (o.e1 + o.e2) : 0.0;
        };
        int pairs = 0;
        const MeanStderr g = paired_gap(runs[1], runs[0], share, &pairs);
        ok = ok && pairs > 0 && g.mean > 0.0;
        detail += fmt("%.0f dBm: share(3/4) - share(1/2) = %+.4g over %.0f pairs; ", pr, g.mean,
                      pairs);
    }
    return {ok, detail};
}

Verdict criterion_af_net()
{
    ExperimentConfig cfg = preset("af-net");
    const auto rows = summarize(run_experiment(cfg));
    const SummaryRow* lo = nullptr;
    const SummaryRow* hi = nullptr;
    for (const auto& r : rows) {
        if (!lo || r.pr_dbm < lo->pr_dbm)
            lo = &r;
        if (!hi || r.pr_dbm > hi->pr_dbm)
            hi = &r;
    }
    if (!lo || !hi || lo->feasible == 0 || hi->feasible == 0)
        return {false, "no feasible trials at the sweep ends"};
    const bool ok = lo->net1.mean < 0.0 && lo->net2.mean < 0.0 && hi->net1.mean > 0.0 &&
                    hi->net2.mean > 0.0;
    return {ok, fmt("%.0f dBm net %.4g / %.4g; ", lo->pr_dbm, lo->net1.mean, lo->net2.mean) +
                    fmt("%.0f dBm net %.4g / %.4g", hi->pr_dbm, hi->net1.mean, hi->net2.mean)};
}

Verdict criterion_identities()
{
    const CheckResult trace = check_trace_identity(1000, 1);
    CounterRng rng(7);
    bool round_trip = true;
    for (int k = 0; k < 200; ++k) {
        const int r = 1 + static_cast<int>(rng.next_u64() % 5);
        const int c = 1 + static_cast<int>(rng.next_u64() % 5);
        const CMatrix a = random_cmatrix(rng, r, c);
        round_trip = round_trip && unvec(vec(a), r, c) == a;
    }
    const CheckResult sdp = check_sdp_analytic();
    return {trace.passed && round_trip && sdp.passed,
            trace.detail + "; vec/unvec " + (round_trip ? "exact" : "MISMATCH") + "; " +
                sdp.detail};
}

}  // namespace

int main()
{
    const auto start = std::chrono::steady_clock::now();
    int failures = 0;
    auto report = [&](int id, const char* name, const Verdict& v) {
        failures += !v.passed;
        std::printf("%s criterion %2d %-22s %s\n", v.passed ? "PASS" : "FAIL", id, name,
                    v.detail.c_str());
        std::fflush(stdout);
    };

    report(1, "ps_closed_form_vs_grid", criterion_ps_oracle());
    report(2, "ps_tight_constraints", criterion_ps_tightness());
    report(3, "af_rank_one", criterion_rank());
    const SymmetricBatch batch = run_symmetric_batch();
    report(4, "monotone_alternation", criterion_monotone(batch));
    report(5, "df_rho_tightness", criterion_df_tightness(batch));
    report(6, "strategy_ordering", criterion_strategy_order(batch));
    report(7, "antenna_scaling", criterion_antennas(batch));
    report(8, "scheme_ordering", criterion_scheme_order(batch));
    report(9, "near_far_share", criterion_near_far());
    report(10, "af_net_sign_change", criterion_af_net());
    report(11, "identities", criterion_identities());

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d of 11 criteria failed, %.1f s\n", failures, secs);
    return failures == 0 ? 0 : 1;
}
