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

#ifndef SWIPT_EXPERIMENT_HPP
#define SWIPT_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swipt/config.hpp"
#include "swipt/optimizers.hpp"

namespace swipt {

enum class Scheme { Joint, PrecodingOnly, AllocationOnly };

/// "joint", "precoding", "allocation".
std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& name);

struct ExperimentConfig {
    SystemParams params;
    std::vector<RelayStrategy> strategies{RelayStrategy::AF, RelayStrategy::DF_XOR,
                                          RelayStrategy::DF_SUP};
    std::vector<Scheme> schemes{Scheme::Joint};
    /// Relay power sweep in dBm.
    std::vector<double> pr_dbm{15.0, 20.0, 25.0};
    int trials = 100;
    /// When set, tau_i = 2^(2 gamma R_max,i) - 1 with R_max,i = log2(1 + P_max,i / sigma_d,i) / 2.
    std::optional<double> gamma = 0.1;
    std::uint64_t base_seed = 1;
    /// CSV destination; empty means no file.
    std::string output_path;
    OptimizeOptions opts;

    void validate() const;
};

/// Parses "lo:hi:step" (inclusive of hi within half a step).
std::vector<double> parse_range(const std::string& text);

/// Named presets: "symmetric", "asymmetric", "af-net", "quick".
ExperimentConfig preset(const std::string& name);

/// Experiment keys (preset, strategies, schemes, pr_dbm_range, trials, gamma,
/// base_seed, output, max_iters, rel_tol) plus every system key.
ExperimentConfig experiment_from_config(const KeyValueConfig& cfg);

/// SystemParams of one sweep point: p_relay from dBm, tau from gamma.
SystemParams sweep_point_params(const ExperimentConfig& cfg, double pr_dbm);

struct TrialRecord {
    std::uint64_t seed = 0;
    RelayStrategy strategy = RelayStrategy::AF;
    Scheme scheme = Scheme::Joint;
    double pr_dbm = 0.0;
    double objective = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double rho = 0.0;
    double sinr1 = 0.0;
    double sinr2 = 0.0;
    int iterations = 0;
    OptimizeStatus status = OptimizeStatus::Infeasible;
    std::uint64_t channel_hash = 0;
    double net1 = 0.0;
    double net2 = 0.0;

    bool ok() const
    {
        return status == OptimizeStatus::Converged || status == OptimizeStatus::MaxIters;
    }
};

/// Runs one (strategy, scheme) pair on one channel.
OptimizeResult run_scheme(const ChannelRealization& ch, const SystemParams& params,
                          RelayStrategy strategy, Scheme scheme, const OptimizeOptions& opts);

/// Trials in parallel (OpenMP). Records are ordered by (sweep point, seed,
/// strategy, scheme) and the CSV is written when output_path is set.
/// Throws std::runtime_error when the output path cannot be opened.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg);

/// Serial reference of run_experiment; produces identical records.
std::vector<TrialRecord> run_experiment_serial(const ExperimentConfig& cfg);

void write_records_csv(const std::vector<TrialRecord>& records, std::ostream& out);

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
};

MeanStderr mean_stderr(const std::vector<double>& xs);

struct SummaryRow {
    RelayStrategy strategy = RelayStrategy::AF;
    Scheme scheme = Scheme::Joint;
    double pr_dbm = 0.0;
    int trials = 0;
    int feasible = 0;
    MeanStderr objective, e1, e2, net1, net2, share2;
    double feasibility_rate = 0.0;
};

/// Groups by (strategy, scheme, P_r) in first-seen order; infeasible trials
/// only count toward the feasibility rate. Throws on empty input.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

void write_summary_table(const std::vector<SummaryRow>& rows, std::ostream& out);
void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);

}  // namespace swipt

#endif  // SWIPT_EXPERIMENT_HPP
