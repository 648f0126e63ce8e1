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

#include <cmath>
#include <set>
#include <sstream>

#include "swipt/experiment.hpp"

using namespace swipt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ExperimentConfig tiny_config()
{
    ExperimentConfig cfg = preset("quick");
    cfg.trials = 3;
    cfg.pr_dbm = {15.0, 25.0};
    cfg.schemes = {Scheme::Joint, Scheme::AllocationOnly};
    return cfg;
}

KeyValueConfig parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_config(in);
}

}  // namespace

TEST_CASE("scheme names round-trip")
{
    for (Scheme s : {Scheme::Joint, Scheme::PrecodingOnly, Scheme::AllocationOnly})
        CHECK(parse_scheme(to_string(s)) == s);
    CHECK_THROWS_AS(parse_scheme("greedy"), std::invalid_argument);
}

TEST_CASE("range parsing")
{
    CHECK(parse_range("10:30:5") == std::vector<double>{10, 15, 20, 25, 30});
    CHECK(parse_range("0:1:0.25").size() == 5);
    CHECK(parse_range("20") == std::vector<double>{20});
    CHECK_THROWS(parse_range("10:0:5"));
    CHECK_THROWS(parse_range("0:10:0"));
    CHECK_THROWS(parse_range("a:b:c"));
}

TEST_CASE("presets")
{
    const ExperimentConfig sym = preset("symmetric");
    CHECK(sym.params.n_antennas == 4);
    CHECK(sym.pr_dbm == std::vector<double>{15, 20, 25});
    CHECK(sym.params.distances == NodePair{1.0, 1.0});
    const ExperimentConfig asym = preset("asymmetric");
    CHECK(asym.params.distances == NodePair{1.0, 2.0});
    CHECK(asym.strategies == std::vector<RelayStrategy>{RelayStrategy::DF_XOR});
    CHECK(preset("af-net").pr_dbm.front() < preset("af-net").pr_dbm.back());
    CHECK_THROWS(preset("nonsense"));
}

TEST_CASE("target SINR follows gamma at every sweep point")
{
    ExperimentConfig cfg = preset("symmetric");
    const SystemParams p = sweep_point_params(cfg, 20.0);
    CHECK_THAT(p.p_relay, WithinRel(100.0, 1e-12));
    CHECK_THAT(p.tau[0], WithinRel(std::pow(1.0 + p.p_max[0], 0.1) - 1.0, 1e-12));
    cfg.gamma.reset();
    cfg.params.tau = {0.3, 0.4};
    CHECK(sweep_point_params(cfg, 20.0).tau == NodePair{0.3, 0.4});
}

TEST_CASE("config overlay")
{
    const ExperimentConfig cfg = experiment_from_config(parse(
        "preset = quick\ntrials = 7\nstrategies = xor, sup\nschemes = joint, precoding\n"
        "pr_dbm_range = 10:20:5\ngamma = none\ntau = 0.2\nn_antennas = 3\nmax_iters = 9\n"));
    CHECK(cfg.trials == 7);
    CHECK(cfg.strategies.size() == 2);
    CHECK(cfg.schemes == std::vector<Scheme>{Scheme::Joint, Scheme::PrecodingOnly});
    CHECK(cfg.pr_dbm.size() == 3);
    CHECK_FALSE(cfg.gamma.has_value());
    CHECK(cfg.params.tau == NodePair{0.2, 0.2});
    CHECK(cfg.params.n_antennas == 3);
    CHECK(cfg.opts.max_iters == 9);

    CHECK_THROWS_AS(experiment_from_config(parse("trails = 3\n")), ConfigError);
    CHECK_THROWS_AS(experiment_from_config(parse("trials = 0\n")), ConfigError);
    CHECK_THROWS_AS(experiment_from_config(parse("strategies = df\n")), ConfigError);
    CHECK_THROWS_AS(experiment_from_config(parse("weights_1 = 0.9\n")), ConfigError);
}

TEST_CASE("record cardinality and ordering")
{
    const ExperimentConfig cfg = tiny_config();
    const auto recs = run_experiment(cfg);
    REQUIRE(recs.size() == 2u * 3u * 3u * 2u);
    std::set<std::uint64_t> seeds;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        seeds.insert(recs[i].seed);
        if (i > 0) {
            CHECK(recs[i].pr_dbm >= recs[i - 1].pr_dbm);
            if (recs[i].pr_dbm == recs[i - 1].pr_dbm)
                CHECK(recs[i].seed >= recs[i - 1].seed);
        }
    }
    CHECK(seeds == std::set<std::uint64_t>{1, 2, 3});
}

TEST_CASE("strategies share a channel per seed")
{
    const auto recs = run_experiment(tiny_config());
    for (const auto& a : recs)
        for (const auto& b : recs)
            if (a.seed == b.seed)
                CHECK(a.channel_hash == b.channel_hash);
    CHECK(recs.front().channel_hash != recs.back().channel_hash);
}

TEST_CASE("parallel and serial runs agree bit for bit")
{
    const ExperimentConfig cfg = tiny_config();
    std::ostringstream a, b;
    write_records_csv(run_experiment(cfg), a);
    write_records_csv(run_experiment_serial(cfg), b);
    CHECK(a.str() == b.str());
    std::ostringstream c;
    write_records_csv(run_experiment(cfg), c);
    CHECK(a.str() == c.str());
}

TEST_CASE("CSV layout")
{
    ExperimentConfig cfg = tiny_config();
    cfg.pr_dbm = {20.0};
    cfg.trials = 1;
    std::ostringstream out;
    write_records_csv(run_experiment(cfg), out);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    for (const char* col : {"seed", "strategy", "scheme", "P_r", "objective", "E1", "E2",
                            "P1", "P2", "rho", "sinr1", "sinr2", "iterations", "status"})
        CHECK(header.find(col) != std::string::npos);
    int lines = 0;
    for (std::string line; std::getline(in, line);)
        ++lines;
    CHECK(lines == 6);
}

TEST_CASE("unwritable output path is an error")
{
    ExperimentConfig cfg = tiny_config();
    cfg.output_path = "/nonexistent-dir/records.csv";
    CHECK_THROWS_AS(run_experiment(cfg), std::runtime_error);
}

TEST_CASE("mean and standard error")
{
    const MeanStderr one = mean_stderr({4.0});
    CHECK(one.mean == 4.0);
    CHECK(one.stderr_ == 0.0);
    const MeanStderr m = mean_stderr({1.0, 2.0, 3.0, 4.0});
    CHECK_THAT(m.mean, WithinAbs(2.5, 1e-15));
    // Sample standard deviation sqrt(5/3) over sqrt(4).
    CHECK_THAT(m.stderr_, WithinRel(std::sqrt(5.0 / 3.0) / 2.0, 1e-14));
}

TEST_CASE("summary of a single record")
{
    TrialRecord r;
    r.status = OptimizeStatus::Converged;
    r.objective = 2.0;
    r.e1 = 1.0;
    r.e2 = 3.0;
    const auto rows = summarize({r});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].trials == 1);
    CHECK(rows[0].feasible == 1);
    CHECK(rows[0].objective.mean == 2.0);
    CHECK_THAT(rows[0].share2.mean, WithinAbs(0.75, 1e-15));
    CHECK(rows[0].feasibility_rate == 1.0);
    CHECK_THROWS(summarize({}));

    TrialRecord bad = r;
    bad.status = OptimizeStatus::Infeasible;
    bad.objective = -100.0;
    const auto mixed = summarize({r, bad});
    CHECK(mixed[0].objective.mean == 2.0);
    CHECK(mixed[0].feasibility_rate == 0.5);

    std::ostringstream table, csv;
    write_summary_table(rows, table);
    write_summary_csv(rows, csv);
    CHECK_FALSE(table.str().empty());
    CHECK(csv.str().find("share2_mean") != std::string::npos);
}

TEST_CASE("symmetric geometry splits the energy evenly")
{
    ExperimentConfig cfg = preset("symmetric");
    cfg.strategies = {RelayStrategy::DF_XOR};
    cfg.pr_dbm = {20.0};
    // The share has a standard error near 0.02 at 200 trials, so 2000 keep
    // the 0.03 band well clear of sampling noise.
    cfg.trials = 2000;
    const auto rows = summarize(run_experiment(cfg));
    REQUIRE(rows.size() == 1);
    const SummaryRow& r = rows[0];
    CHECK(r.feasible >= 1900);
    CHECK_THAT(r.e1.mean, WithinRel(r.e2.mean, 0.05));
    CHECK_THAT(r.share2.mean, WithinAbs(0.5, 0.03));
    CHECK(r.share2.mean >= 0.0);
    CHECK(r.share2.mean <= 1.0);
}
