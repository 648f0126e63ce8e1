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

#include "swipt/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace swipt {

namespace {

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<std::string> split_list(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos)
            out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

TrialRecord make_record(const ChannelRealization& ch, double pr_dbm, RelayStrategy strategy,
                        Scheme scheme, const OptimizeResult& r)
{
    TrialRecord rec;
    rec.seed = ch.seed;
    rec.strategy = strategy;
    rec.scheme = scheme;
    rec.pr_dbm = pr_dbm;
    rec.status = r.status;
    rec.iterations = r.iterations;
    rec.channel_hash = ch.hash();
    if (r.ok()) {
        rec.objective = r.metrics.objective;
        rec.e1 = r.metrics.energy[0];
        rec.e2 = r.metrics.energy[1];
        rec.p1 = r.split.p1;
        rec.p2 = r.split.p2;
        rec.rho = r.split.rho;
        rec.sinr1 = r.metrics.sinr[0];
        rec.sinr2 = r.metrics.sinr[1];
        rec.net1 = r.metrics.net[0];
        rec.net2 = r.metrics.net[1];
    }
    return rec;
}

// All (strategy, scheme) records of one trial, in configuration order.
void run_trial(const ExperimentConfig& cfg, std::size_t point, int trial, TrialRecord* out)
{
    const double pr = cfg.pr_dbm[point];
    const SystemParams params = sweep_point_params(cfg, pr);
    const ChannelRealization ch = sample_channel(params, cfg.base_seed + trial);
    for (RelayStrategy s : cfg.strategies) {
        for (Scheme sc : cfg.schemes) {
            OptimizeResult r;
            try {
                r = run_scheme(ch, params, s, sc, cfg.opts);
            } catch (const InfeasibleError&) {
                r.status = OptimizeStatus::Infeasible;
            }
            *out++ = make_record(ch, pr, s, sc, r);
        }
    }
}

std::vector<TrialRecord> run_impl(const ExperimentConfig& cfg, bool parallel)
{
    cfg.validate();
    std::ofstream file;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path);
        if (!file)
            throw std::runtime_error("cannot open output file '" + cfg.output_path + "'");
    }

    const std::size_t per_trial = cfg.strategies.size() * cfg.schemes.size();
    const long long tasks = static_cast<long long>(cfg.pr_dbm.size()) * cfg.trials;
    std::vector<TrialRecord> records(static_cast<std::size_t>(tasks) * per_trial);

    // Each task writes its own slice, so the output order never depends on the schedule.
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long task = 0; task < tasks; ++task) {
        const auto point = static_cast<std::size_t>(task / cfg.trials);
        const int trial = static_cast<int>(task % cfg.trials);
        run_trial(cfg, point, trial, records.data() + task * per_trial);
    }

    if (file.is_open())
        write_records_csv(records, file);
    return records;
}

}  // namespace

std::string to_string(Scheme s)
{
    switch (s) {
    case Scheme::Joint: return "joint";
    case Scheme::PrecodingOnly: return "precoding";
    case Scheme::AllocationOnly: return "allocation";
    }
    return "?";
}

Scheme parse_scheme(const std::string& name)
{
    if (name == "joint")
        return Scheme::Joint;
    if (name == "precoding" || name == "precoding_only")
        return Scheme::PrecodingOnly;
    if (name == "allocation" || name == "allocation_only")
        return Scheme::AllocationOnly;
    throw std::invalid_argument("unknown scheme '" + name + "'");
}

void ExperimentConfig::validate() const
{
    params.validate();
    opts.validate();
    if (trials < 1)
        throw std::invalid_argument("ExperimentConfig: trials must be at least 1");
    if (pr_dbm.empty())
        throw std::invalid_argument("ExperimentConfig: relay power sweep is empty");
    if (strategies.empty() || schemes.empty())
        throw std::invalid_argument("ExperimentConfig: no strategy or scheme selected");
    if (gamma && !(*gamma > 0.0))
        throw std::invalid_argument("ExperimentConfig: gamma must be positive");
}

std::vector<double> parse_range(const std::string& text)
{
    const auto parts = split_list(text, ':');
    if (parts.size() != 3 && parts.size() != 1)
        throw std::invalid_argument("range must be lo:hi:step, got '" + text + "'");
    std::vector<double> v;
    try {
        for (const auto& p : parts)
            v.push_back(std::stod(p));
    } catch (const std::exception&) {
        throw std::invalid_argument("range must be numeric, got '" + text + "'");
    }
    if (v.size() == 1)
        return v;
    const double lo = v[0], hi = v[1], step = v[2];
    if (!(step > 0.0) || hi < lo)
        throw std::invalid_argument("range needs lo <= hi and step > 0, got '" + text + "'");
    std::vector<double> out;
    for (int k = 0; lo + k * step <= hi + 0.5 * step; ++k)
        out.push_back(lo + k * step);
    return out;
}

ExperimentConfig preset(const std::string& name)
{
    ExperimentConfig cfg;
    if (name == "symmetric") {
        cfg.trials = 200;
    } else if (name == "asymmetric") {
        cfg.params.distances = {1.0, 2.0};
        cfg.strategies = {RelayStrategy::DF_XOR};
        cfg.trials = 200;
    } else if (name == "af-net") {
        cfg.strategies = {RelayStrategy::AF};
        cfg.pr_dbm = parse_range("0:30:5");
        cfg.trials = 200;
    } else if (name == "quick") {
        cfg.params.n_antennas = 2;
        cfg.pr_dbm = {20.0};
        cfg.trials = 4;
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return cfg;
}

ExperimentConfig experiment_from_config(const KeyValueConfig& kv)
{
    static const char* known[] = {"preset", "strategies", "schemes", "pr_dbm_range", "trials",
                                  "gamma", "base_seed", "output", "max_iters", "rel_tol"};
    for (const auto& [key, value] : kv.entries) {
        bool ok = is_system_key(key);
        for (const char* k : known)
            ok = ok || key == k;
        if (!ok)
            throw ConfigError("unknown config key '" + key + "'");
    }

    ExperimentConfig cfg = kv.has("preset") ? preset(kv.get("preset")) : ExperimentConfig{};
    cfg.params = apply_system_keys(kv, cfg.params);
    try {
        if (kv.has("strategies")) {
            cfg.strategies.clear();
            for (const auto& s : split_list(kv.get("strategies"), ','))
                cfg.strategies.push_back(parse_strategy(s));
        }
        if (kv.has("schemes")) {
            cfg.schemes.clear();
            for (const auto& s : split_list(kv.get("schemes"), ','))
                cfg.schemes.push_back(parse_scheme(s));
        }
        if (kv.has("pr_dbm_range"))
            cfg.pr_dbm = parse_range(kv.get("pr_dbm_range"));
        if (kv.has("trials"))
            cfg.trials = static_cast<int>(kv.get_int("trials"));
        if (kv.has("gamma")) {
            if (kv.get("gamma") == "none")
                cfg.gamma.reset();
            else
                cfg.gamma = kv.get_double("gamma");
        }
        if (kv.has("base_seed"))
            cfg.base_seed = static_cast<std::uint64_t>(kv.get_int("base_seed"));
        if (kv.has("output"))
            cfg.output_path = kv.get("output");
        if (kv.has("max_iters"))
            cfg.opts.max_iters = static_cast<int>(kv.get_int("max_iters"));
        if (kv.has("rel_tol"))
            cfg.opts.rel_tol = kv.get_double("rel_tol");
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

SystemParams sweep_point_params(const ExperimentConfig& cfg, double pr_dbm)
{
    SystemParams p = cfg.params;
    p.p_relay = dbm_to_watts(pr_dbm);
    if (cfg.gamma) {
        for (int i = 0; i < 2; ++i)
            p.tau[i] = tau_from_rate(*cfg.gamma * rate_max(p.p_max[i], p.sigma_d2[i]));
    }
    p.validate();
    return p;
}

OptimizeResult run_scheme(const ChannelRealization& ch, const SystemParams& params,
                          RelayStrategy strategy, Scheme scheme, const OptimizeOptions& opts)
{
    switch (scheme) {
    case Scheme::Joint: return optimize_joint(ch, params, strategy, opts);
    case Scheme::PrecodingOnly: return baseline_precoding_only(ch, params, strategy, opts);
    case Scheme::AllocationOnly: return baseline_allocation_only(ch, params, strategy, opts);
    }
    throw std::invalid_argument("run_scheme: unknown scheme");
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg)
{
    return run_impl(cfg, true);
}

std::vector<TrialRecord> run_experiment_serial(const ExperimentConfig& cfg)
{
    return run_impl(cfg, false);
}

void write_records_csv(const std::vector<TrialRecord>& records, std::ostream& out)
{
    out << "seed,strategy,scheme,P_r,objective,E1,E2,P1,P2,rho,sinr1,sinr2,iterations,status,"
           "channel_hash,net1,net2\n";
    for (const auto& r : records) {
        out << r.seed << ',' << to_string(r.strategy) << ',' << to_string(r.scheme) << ','
            << fmt(r.pr_dbm) << ',' << fmt(r.objective) << ',' << fmt(r.e1) << ',' << fmt(r.e2)
            << ',' << fmt(r.p1) << ',' << fmt(r.p2) << ',' << fmt(r.rho) << ',' << fmt(r.sinr1)
            << ',' << fmt(r.sinr2) << ',' << r.iterations << ',' << to_string(r.status) << ','
            << std::hex << std::setw(16) << std::setfill('0') << r.channel_hash << std::dec
            << std::setfill(' ') << ',' << fmt(r.net1) << ',' << fmt(r.net2) << '\n';
    }
}

MeanStderr mean_stderr(const std::vector<double>& xs)
{
    MeanStderr m;
    if (xs.empty())
        return m;
    double sum = 0.0;
    for (double x : xs)
        sum += x;
    m.mean = sum / xs.size();
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs)
            ss += (x - m.mean) * (x - m.mean);
        m.stderr_ = std::sqrt(ss / (xs.size() - 1) / xs.size());
    }
    return m;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records)
{
    if (records.empty())
        throw std::invalid_argument("summarize: no records");

    using Key = std::tuple<int, int, double>;
    struct Acc {
        int trials = 0;
        std::vector<double> obj, e1, e2, n1, n2, share;
    };
    std::vector<Key> order;
    std::map<Key, Acc> groups;
    for (const auto& r : records) {
        const Key key{static_cast<int>(r.strategy), static_cast<int>(r.scheme), r.pr_dbm};
        auto [it, fresh] = groups.try_emplace(key);
        if (fresh)
            order.push_back(key);
        Acc& a = it->second;
        ++a.trials;
        if (!r.ok())
            continue;
        a.obj.push_back(r.objective);
        a.e1.push_back(r.e1);
        a.e2.push_back(r.e2);
        a.n1.push_back(r.net1);
        a.n2.push_back(r.net2);
        if (r.e1 + r.e2 > 0.0)
            a.share.push_back(r.e2 / (r.e1 + r.e2));
    }

    std::vector<SummaryRow> rows;
    for (const auto& key : order) {
        const Acc& a = groups.at(key);
        SummaryRow row;
        row.strategy = static_cast<RelayStrategy>(std::get<0>(key));
        row.scheme = static_cast<Scheme>(std::get<1>(key));
        row.pr_dbm = std::get<2>(key);
        row.trials = a.trials;
        row.feasible = static_cast<int>(a.obj.size());
        row.objective = mean_stderr(a.obj);
        row.e1 = mean_stderr(a.e1);
        row.e2 = mean_stderr(a.e2);
        row.net1 = mean_stderr(a.n1);
        row.net2 = mean_stderr(a.n2);
        row.share2 = mean_stderr(a.share);
        row.feasibility_rate = static_cast<double>(row.feasible) / row.trials;
        rows.push_back(row);
    }
    return rows;
}

void write_summary_table(const std::vector<SummaryRow>& rows, std::ostream& out)
{
    auto ms = [](const MeanStderr& m) {
        std::ostringstream s;
        s << std::setprecision(5) << m.mean << " +- " << std::setprecision(2) << m.stderr_;
        return s.str();
    };
    out << std::left << std::setw(9) << "strategy" << std::setw(12) << "scheme" << std::setw(8)
        << "P_r" << std::setw(22) << "objective" << std::setw(22) << "E1" << std::setw(22) << "E2"
        << std::setw(22) << "share_S2" << "feasible\n";
    for (const auto& r : rows) {
        out << std::left << std::setw(9) << to_string(r.strategy) << std::setw(12)
            << to_string(r.scheme) << std::setw(8) << fmt(r.pr_dbm) << std::setw(22)
            << ms(r.objective) << std::setw(22) << ms(r.e1) << std::setw(22) << ms(r.e2)
            << std::setw(22) << ms(r.share2) << r.feasible << '/' << r.trials << '\n';
    }
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out)
{
    out << "strategy,scheme,P_r,trials,feasible,objective_mean,objective_se,E1_mean,E1_se,"
           "E2_mean,E2_se,net1_mean,net1_se,net2_mean,net2_se,share2_mean,share2_se,"
           "feasibility_rate\n";
    for (const auto& r : rows) {
        out << to_string(r.strategy) << ',' << to_string(r.scheme) << ',' << fmt(r.pr_dbm) << ','
            << r.trials << ',' << r.feasible;
        for (const MeanStderr* m : {&r.objective, &r.e1, &r.e2, &r.net1, &r.net2, &r.share2})
            out << ',' << fmt(m->mean) << ',' << fmt(m->stderr_);
        out << ',' << fmt(r.feasibility_rate) << '\n';
    }
}

}  // namespace swipt
