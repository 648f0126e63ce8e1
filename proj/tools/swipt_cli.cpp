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

// swipt_cli: solve one channel, run a Monte-Carlo sweep, or run the
// self-validation suite.
//
// Exit codes: 0 success, 1 infeasible instance or failed validation,
// 2 usage or configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swipt/experiment.hpp"
#include "swipt/validation.hpp"

using namespace swipt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void print_matrix(const std::string& name, const CMatrix& m)
{
    std::cout << name << " (" << m.rows() << "x" << m.cols() << ")\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::cout << " ";
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            std::cout << " " << num(m(i, j).real()) << (m(i, j).imag() < 0 ? "-" : "+")
                      << num(std::abs(m(i, j).imag())) << "i";
        std::cout << "\n";
    }
}

struct CommonOptions {
    std::string config;
    std::string preset;
    std::vector<std::string> strategies;
    std::vector<std::string> schemes;
    int trials = 0;
    long long seed = -1;
    std::string pr_range;
    std::string out;
    int n = 0;
};

ExperimentConfig build_config(const CommonOptions& o)
{
    ExperimentConfig cfg;
    if (!o.config.empty())
        cfg = experiment_from_config(load_config(o.config));
    else if (!o.preset.empty())
        cfg = preset(o.preset);
    try {
        if (!o.strategies.empty()) {
            cfg.strategies.clear();
            for (const auto& s : o.strategies)
                cfg.strategies.push_back(parse_strategy(s));
        }
        if (!o.schemes.empty()) {
            cfg.schemes.clear();
            for (const auto& s : o.schemes)
                cfg.schemes.push_back(parse_scheme(s));
        }
        if (o.trials > 0)
            cfg.trials = o.trials;
        if (o.seed >= 0)
            cfg.base_seed = static_cast<std::uint64_t>(o.seed);
        if (!o.pr_range.empty())
            cfg.pr_dbm = parse_range(o.pr_range);
        if (!o.out.empty())
            cfg.output_path = o.out;
        if (o.n > 0)
            cfg.params.n_antennas = o.n;
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

int run_solve(const CommonOptions& o, std::optional<double> pr_flag)
{
    const ExperimentConfig cfg = build_config(o);
    const double pr_dbm = pr_flag ? *pr_flag : cfg.pr_dbm.front();
    const SystemParams params = sweep_point_params(cfg, pr_dbm);
    const RelayStrategy strategy = cfg.strategies.front();
    const Scheme scheme = cfg.schemes.front();
    const ChannelRealization ch = sample_channel(params, cfg.base_seed);

    std::cout << "strategy " << to_string(strategy) << "  scheme " << to_string(scheme)
              << "  N " << params.n_antennas << "  seed " << cfg.base_seed << "  P_r "
              << num(pr_dbm) << " dBm  tau " << num(params.tau[0]) << "," << num(params.tau[1])
              << "\n";

    OptimizeResult r;
    try {
        r = run_scheme(ch, params, strategy, scheme, cfg.opts);
    } catch (const InfeasibleError& e) {
        std::cout << "status infeasible (" << e.what() << ")\n";
        return kExitInfeasible;
    }
    std::cout << "status " << to_string(r.status) << "  iterations " << r.iterations << "\n";
    if (!r.ok())
        return kExitInfeasible;

    const Metrics& m = r.metrics;
    std::cout << "P1 " << num(r.split.p1) << "  P2 " << num(r.split.p2) << "  rho "
              << num(r.split.rho) << "\n"
              << "objective " << num(m.objective) << "\n"
              << "E1 " << num(m.energy[0]) << "  E2 " << num(m.energy[1]) << "\n"
              << "net1 " << num(m.net[0]) << "  net2 " << num(m.net[1]) << "\n"
              << "sinr1 " << num(m.sinr[0]) << "  sinr2 " << num(m.sinr[1]) << "\n"
              << "relay_power " << num(m.relay_power) << "\n";
    std::cout << "trace";
    for (double v : r.trace)
        std::cout << " " << num(v);
    std::cout << "\n";
    const BeamformingSolution& s = r.solution;
    switch (strategy) {
    case RelayStrategy::AF: print_matrix("W", s.af_w); break;
    case RelayStrategy::DF_XOR: print_matrix("Qs", s.qs); break;
    case RelayStrategy::DF_SUP:
        print_matrix("Qs1", s.qs1);
        print_matrix("Qs2", s.qs2);
        break;
    }
    print_matrix("Qx", s.qx);
    return kExitOk;
}

int run_sweep(const CommonOptions& o, bool serial)
{
    const ExperimentConfig cfg = build_config(o);
    const auto records = serial ? run_experiment_serial(cfg) : run_experiment(cfg);
    const auto rows = summarize(records);
    write_summary_table(rows, std::cout);
    if (!cfg.output_path.empty()) {
        const std::string path = cfg.output_path + ".summary.csv";
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("cannot open summary file '" + path + "'");
        write_summary_csv(rows, out);
        std::cout << "records: " << cfg.output_path << "\nsummary: " << path << "\n";
    }
    return kExitOk;
}

int run_validate(bool quick, std::uint64_t seed)
{
    std::vector<CheckResult> checks;
    checks.push_back(check_trace_identity(quick ? 200 : 1000, seed));
    checks.push_back(check_ps_oracle(quick ? 20 : 200, quick ? 100 : 200, seed));
    checks.push_back(check_rank_census(quick ? 10 : 100, quick ? 2 : 4, seed));
    checks.push_back(check_sdp_analytic());
    print_checks(checks, std::cout);
    for (const auto& c : checks)
        if (!c.passed)
            return kExitInfeasible;
    return kExitOk;
}

void add_common(CLI::App* sub, CommonOptions& o)
{
    sub->add_option("--config", o.config, "key = value configuration file");
    sub->add_option("--preset", o.preset, "symmetric | asymmetric | af-net | quick");
    sub->add_option("--strategy", o.strategies, "af | xor | sup (repeatable)")->delimiter(',');
    sub->add_option("--scheme", o.schemes, "joint | precoding | allocation (repeatable)")
        ->delimiter(',');
    sub->add_option("--seed", o.seed, "base seed");
    sub->add_option("--n", o.n, "relay antennas")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-way relay SWIPT beamforming and power-splitting simulator"};
    app.require_subcommand(1);

    CommonOptions solve_opts;
    std::optional<double> pr_dbm;
    auto* solve = app.add_subcommand("solve", "optimize one channel realization and print it");
    add_common(solve, solve_opts);
    solve->add_option("--pr-dbm", pr_dbm,
                      "relay power budget in dBm (default: first sweep point)");

    CommonOptions sweep_opts;
    bool serial = false;
    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over the relay power");
    add_common(sweep, sweep_opts);
    sweep->add_option("--trials", sweep_opts.trials, "trials per sweep point")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--pr-dbm-range", sweep_opts.pr_range, "lo:hi:step in dBm");
    sweep->add_option("--out", sweep_opts.out, "per-trial CSV path");
    sweep->add_flag("--serial", serial, "run trials on one thread");

    bool quick = false;
    long long vseed = 1;
    auto* validate = app.add_subcommand("validate", "oracle and property self-checks");
    validate->add_flag("--quick", quick, "reduced instance counts");
    validate->add_option("--seed", vseed, "base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*solve)
            return run_solve(solve_opts, pr_dbm);
        if (*sweep)
            return run_sweep(sweep_opts, serial);
        return run_validate(quick, static_cast<std::uint64_t>(vseed));
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
