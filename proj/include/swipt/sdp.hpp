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

#ifndef SWIPT_SDP_HPP
#define SWIPT_SDP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "swipt/linalg.hpp"

namespace swipt {

/*
 * Small dense semidefinite programs over complex Hermitian PSD blocks:
 *
 *     maximize    sum_b Tr(C_b X_b)
 *     subject to  sum_b Tr(A_ib X_b)  {<=, >=, =}  bound_i,   X_b >= 0.
 *
 * Inequalities get a nonnegative slack each, and the result is solved with an
 * infeasible-start primal-dual interior-point method (HKM search direction,
 * Mehrotra predictor-corrector). Real symmetric problems are the special case
 * of zero imaginary parts.
 */

enum class ConstraintSense { LessEqual, GreaterEqual, Equal };

struct SdpBlock {
    std::string name;
    int dim = 0;
};

struct SdpConstraint {
    std::string label;
    /// One Hermitian coefficient per block. A 0x0 matrix stands for zero.
    std::vector<CMatrix> coeffs;
    ConstraintSense sense = ConstraintSense::LessEqual;
    double bound = 0.0;
};

struct SdpProblem {
    std::vector<SdpBlock> blocks;
    /// Per-block objective coefficient; a 0x0 matrix stands for zero.
    std::vector<CMatrix> objective;
    std::vector<SdpConstraint> constraints;

    /// Throws std::invalid_argument on dimension mismatch or non-Hermitian data (tol 1e-12).
    void validate() const;

    double objective_at(const std::vector<CMatrix>& x) const;
    double constraint_lhs(std::size_t i, const std::vector<CMatrix>& x) const;
    /// Largest violation over all constraints, relative to 1 + |bound|.
    double max_violation(const std::vector<CMatrix>& x) const;
};

struct SdpTolerances {
    double gap_tol = 1e-7;
    double feas_tol = 1e-7;
    int max_iters = 150;
};

enum class SdpStatus { Optimal, Infeasible, NumericalFailure };

std::string to_string(SdpStatus s);

struct SdpSolution {
    SdpStatus status = SdpStatus::NumericalFailure;
    std::vector<CMatrix> blocks;
    double objective_value = 0.0;
    double dual_objective = 0.0;
    /// |primal - dual| / (1 + |primal| + |dual|).
    double duality_gap = 0.0;
    double max_constraint_violation = 0.0;
    /// Sum over blocks of |Tr(Z_b X_b)| in the original problem scaling.
    double complementarity = 0.0;
    /// Lagrange multipliers, one per constraint, original scaling.
    std::vector<double> multipliers;
    /// Dual slack matrices Z_b, original scaling.
    std::vector<CMatrix> dual_slack;
    int iterations = 0;
};

SdpSolution solve_sdp(const SdpProblem& problem, const SdpTolerances& tol = {});

/// The same program over real symmetric blocks [[Re, -Im], [Im, Re]] of twice
/// the size. Objective and constraint values are doubled by the embedding, so
/// every coefficient is halved to keep optimal values identical.
SdpProblem realify(const SdpProblem& problem);

/// Maps a real-embedded block back to its complex Hermitian counterpart.
CMatrix complex_from_embedding(const CMatrix& real_block);

/// Writes a plain-text dump: blocks, then one `row col re im` entry list per
/// coefficient matrix, in a matrix-market-like layout.
void dump_problem(const SdpProblem& problem, std::ostream& out);

}  // namespace swipt

#endif  // SWIPT_SDP_HPP
