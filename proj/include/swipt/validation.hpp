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

#ifndef SWIPT_VALIDATION_HPP
#define SWIPT_VALIDATION_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "swipt/ps_solver.hpp"

namespace swipt {

/// Random AF power-allocation instance built from a random channel and a
/// random relay design. The relay budget, SINR targets and weights are also
/// drawn, so every closed-form case shows up across seeds. Not every draw is
/// feasible.
PsCoefficients random_ps_coefficients(std::uint64_t seed);

/// Random complex matrix with i.i.d. CN(0, 1) entries.
CMatrix random_cmatrix(CounterRng& rng, int rows, int cols);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Tr(ABCD) identity on `count` random conformable quadruples.
CheckResult check_trace_identity(int count, std::uint64_t seed);

/// Closed form against the grid oracle on `count` feasible random instances.
CheckResult check_ps_oracle(int count, int resolution, std::uint64_t seed);

/// Share of AF relaxations at N antennas with lambda_2 / lambda_1 <= 1e-4.
CheckResult check_rank_census(int count, int n, std::uint64_t seed);

/// Trace-ball and diagonal-LP programs with known optima.
CheckResult check_sdp_analytic();

void print_checks(const std::vector<CheckResult>& checks, std::ostream& out);

}  // namespace swipt

#endif  // SWIPT_VALIDATION_HPP
