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

#include "swipt/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace swipt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Re Tr(A T) for Hermitian A and arbitrary T.
double hdot(const CMatrix& a, const CMatrix& t)
{
    return a.real().cwiseProduct(t.real()).sum() + a.imag().cwiseProduct(t.imag()).sum();
}

CMatrix herm(const CMatrix& m)
{
    return 0.5 * (m + m.adjoint());
}

// Block-diagonal iterate: dense Hermitian blocks plus the slack (LP) vector.
struct BlockVar {
    std::vector<CMatrix> mats;
    Eigen::VectorXd lp;
};

double inner(const BlockVar& u, const BlockVar& v)
{
    double s = u.lp.dot(v.lp);
    for (std::size_t b = 0; b < u.mats.size(); ++b)
        s += hdot(u.mats[b], v.mats[b]);
    return s;
}

double frob(const BlockVar& u)
{
    return std::sqrt(std::max(0.0, inner(u, u)));
}

// Standard form: min <C, X>  s.t.  <A_i, X> = b_i,  X >= 0 (blockwise).
struct StandardForm {
    std::vector<int> dims;
    int m = 0;
    std::vector<std::vector<CMatrix>> a;  // a[i][b]; 0x0 means zero
    Eigen::MatrixXd lp_a;                 // m x n_slack
    Eigen::VectorXd b;
    BlockVar c;
    int total_dim = 0;

    Eigen::VectorXd apply(const BlockVar& x) const
    {
        Eigen::VectorXd out = lp_a * x.lp;
        for (int i = 0; i < m; ++i)
            for (std::size_t blk = 0; blk < dims.size(); ++blk)
                if (a[i][blk].size() != 0)
                    out(i) += hdot(a[i][blk], x.mats[blk]);
        return out;
    }

    BlockVar adjoint(const Eigen::VectorXd& y) const
    {
        BlockVar out;
        out.lp = lp_a.transpose() * y;
        for (std::size_t blk = 0; blk < dims.size(); ++blk) {
            CMatrix s = CMatrix::Zero(dims[blk], dims[blk]);
            for (int i = 0; i < m; ++i)
                if (a[i][blk].size() != 0)
                    s += y(i) * a[i][blk];
            out.mats.push_back(std::move(s));
        }
        return out;
    }
};

// Largest alpha with x + alpha dx >= 0 (infinity when unbounded).
double max_step_psd(const CMatrix& x, const CMatrix& dx)
{
    Eigen::LLT<CMatrix> llt(x);
    if (llt.info() != Eigen::Success)
        return 0.0;
    const auto l = llt.matrixL();
    CMatrix s = l.solve(dx);
    s = l.solve(s.adjoint()).adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm(s), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues()(0);
    return lmin >= 0.0 ? kInf : -1.0 / lmin;
}

double max_step_lp(const Eigen::VectorXd& x, const Eigen::VectorXd& dx)
{
    double step = kInf;
    for (Eigen::Index k = 0; k < x.size(); ++k)
        if (dx(k) < 0.0)
            step = std::min(step, -x(k) / dx(k));
    return step;
}

double max_step(const BlockVar& x, const BlockVar& dx)
{
    double step = max_step_lp(x.lp, dx.lp);
    for (std::size_t b = 0; b < x.mats.size(); ++b)
        step = std::min(step, max_step_psd(x.mats[b], dx.mats[b]));
    return step;
}

bool invert_pd(const CMatrix& z, CMatrix& out)
{
    Eigen::LLT<CMatrix> llt(z);
    if (llt.info() != Eigen::Success)
        return false;
    out = herm(llt.solve(CMatrix::Identity(z.rows(), z.cols())));
    return true;
}

double max_eig(const CMatrix& m)
{
    if (m.size() == 0)
        return -kInf;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(es.eigenvalues().size() - 1);
}

}  // namespace

std::string to_string(SdpStatus s)
{
    switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::Infeasible: return "infeasible";
    case SdpStatus::NumericalFailure: return "numerical_failure";
    }
    return "?";
}

void SdpProblem::validate() const
{
    const std::size_t nb = blocks.size();
    if (nb == 0)
        throw std::invalid_argument("SdpProblem: no variable blocks");
    auto check = [&](const CMatrix& m, std::size_t b, const std::string& where) {
        if (m.size() == 0)
            return;
        if (m.rows() != blocks[b].dim || m.cols() != blocks[b].dim)
            throw std::invalid_argument("SdpProblem: " + where + " has wrong dimension for block " +
                                        blocks[b].name);
        if (!m.allFinite())
            throw std::invalid_argument("SdpProblem: " + where + " has non-finite entries");
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
            throw std::invalid_argument("SdpProblem: " + where + " is not Hermitian");
    };
    for (const auto& blk : blocks)
        if (blk.dim < 1)
            throw std::invalid_argument("SdpProblem: block " + blk.name + " has no dimension");
    if (objective.size() != nb)
        throw std::invalid_argument("SdpProblem: objective needs one coefficient per block");
    for (std::size_t b = 0; b < nb; ++b)
        check(objective[b], b, "objective");
    for (const auto& con : constraints) {
        if (con.coeffs.size() != nb)
            throw std::invalid_argument("SdpProblem: constraint " + con.label +
                                        " needs one coefficient per block");
        if (!std::isfinite(con.bound))
            throw std::invalid_argument("SdpProblem: constraint " + con.label + " bound");
        for (std::size_t b = 0; b < nb; ++b)
            check(con.coeffs[b], b, "constraint " + con.label);
    }
}

double SdpProblem::objective_at(const std::vector<CMatrix>& x) const
{
    double s = 0.0;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (objective[b].size() != 0)
            s += hdot(objective[b], x[b]);
    return s;
}

double SdpProblem::constraint_lhs(std::size_t i, const std::vector<CMatrix>& x) const
{
    double s = 0.0;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (constraints[i].coeffs[b].size() != 0)
            s += hdot(constraints[i].coeffs[b], x[b]);
    return s;
}

double SdpProblem::max_violation(const std::vector<CMatrix>& x) const
{
    double worst = 0.0;
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const double lhs = constraint_lhs(i, x);
        const double b = constraints[i].bound;
        double v = 0.0;
        switch (constraints[i].sense) {
        case ConstraintSense::LessEqual: v = std::max(0.0, lhs - b); break;
        case ConstraintSense::GreaterEqual: v = std::max(0.0, b - lhs); break;
        case ConstraintSense::Equal: v = std::abs(lhs - b); break;
        }
        worst = std::max(worst, v / (1.0 + std::abs(b)));
    }
    for (const auto& blk : x) {
        if (blk.size() == 0)
            continue;
        const double tr = std::max(1.0, std::abs(blk.trace().real()));
        worst = std::max(worst, std::max(0.0, -min_eigenvalue(blk)) / tr);
    }
    return worst;
}

SdpSolution solve_sdp(const SdpProblem& problem, const SdpTolerances& tol)
{
    problem.validate();

    const std::size_t nb = problem.blocks.size();
    const int m = static_cast<int>(problem.constraints.size());

    // Build the scaled standard form.
    StandardForm sf;
    sf.m = m;
    for (const auto& blk : problem.blocks)
        sf.dims.push_back(blk.dim);
    int n_slack = 0;
    for (const auto& con : problem.constraints)
        if (con.sense != ConstraintSense::Equal)
            ++n_slack;

    sf.lp_a = Eigen::MatrixXd::Zero(m, n_slack);
    sf.b.resize(m);
    sf.a.assign(m, std::vector<CMatrix>(nb));
    Eigen::VectorXd row_scale(m);
    {
        int k = 0;
        for (int i = 0; i < m; ++i) {
            const auto& con = problem.constraints[i];
            double norm2 = 0.0;
            for (std::size_t b = 0; b < nb; ++b)
                if (con.coeffs[b].size() != 0)
                    norm2 += con.coeffs[b].squaredNorm();
            const double r = norm2 > 0.0 ? 1.0 / std::sqrt(norm2) : 1.0;
            row_scale(i) = r;
            for (std::size_t b = 0; b < nb; ++b)
                if (con.coeffs[b].size() != 0 && con.coeffs[b].squaredNorm() > 0.0)
                    sf.a[i][b] = r * con.coeffs[b];
            if (con.sense == ConstraintSense::LessEqual)
                sf.lp_a(i, k++) = r;
            else if (con.sense == ConstraintSense::GreaterEqual)
                sf.lp_a(i, k++) = -r;
            sf.b(i) = r * con.bound;
        }
    }
    const double b_scale = std::max(1.0, sf.b.size() ? sf.b.cwiseAbs().maxCoeff() : 0.0);
    sf.b /= b_scale;

    double c_norm2 = 0.0;
    for (const auto& c : problem.objective)
        if (c.size() != 0)
            c_norm2 += c.squaredNorm();
    const double c_scale = c_norm2 > 0.0 ? 1.0 / std::sqrt(c_norm2) : 1.0;
    sf.c.lp = Eigen::VectorXd::Zero(n_slack);
    for (std::size_t b = 0; b < nb; ++b) {
        const int d = sf.dims[b];
        sf.c.mats.push_back(problem.objective[b].size() != 0 ? CMatrix(-c_scale * problem.objective[b])
                                                              : CMatrix(CMatrix::Zero(d, d)));
    }
    sf.total_dim = n_slack;
    for (int d : sf.dims)
        sf.total_dim += d;

    // Initial point in the style of SDPT3.
    BlockVar x, z;
    x.lp = Eigen::VectorXd::Constant(n_slack, 10.0);
    z.lp = Eigen::VectorXd::Constant(n_slack, 10.0);
    for (std::size_t b = 0; b < nb; ++b) {
        const double n = sf.dims[b];
        double xi = std::max(10.0, std::sqrt(n));
        double zeta = std::max({10.0, std::sqrt(n), sf.c.mats[b].norm()});
        for (int i = 0; i < m; ++i) {
            const double an = sf.a[i][b].size() ? sf.a[i][b].norm() : 0.0;
            xi = std::max(xi, n * (1.0 + std::abs(sf.b(i))) / (1.0 + an));
            zeta = std::max(zeta, an);
        }
        x.mats.push_back(xi * CMatrix::Identity(sf.dims[b], sf.dims[b]));
        z.mats.push_back(zeta * CMatrix::Identity(sf.dims[b], sf.dims[b]));
    }
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

    const double b_norm = sf.b.norm();
    const double c_norm = frob(sf.c);
    const double to_orig = b_scale / c_scale;

    SdpSolution sol;
    auto export_point = [&]() {
        sol.blocks.clear();
        sol.dual_slack.clear();
        for (std::size_t b = 0; b < nb; ++b) {
            sol.blocks.push_back(herm(b_scale * x.mats[b]));
            sol.dual_slack.push_back(herm(z.mats[b] / c_scale));
        }
        sol.multipliers.resize(m);
        for (int i = 0; i < m; ++i)
            sol.multipliers[i] = -y(i) * row_scale(i) * b_scale / c_scale / b_scale;
        const double pobj = inner(sf.c, x);
        const double dobj = sf.b.dot(y);
        sol.objective_value = -pobj * to_orig;
        sol.dual_objective = -dobj * to_orig;
        sol.duality_gap = std::abs(sol.objective_value - sol.dual_objective) /
                          (1.0 + std::abs(sol.objective_value) + std::abs(sol.dual_objective));
        sol.max_constraint_violation = problem.max_violation(sol.blocks);
        double comp = 0.0;
        for (std::size_t b = 0; b < nb; ++b)
            comp += std::abs(hdot(x.mats[b], z.mats[b]));
        comp += std::abs(x.lp.dot(z.lp));
        sol.complementarity = comp * to_orig;
    };

    int stalled = 0;
    double prev_pinf = kInf;
    sol.status = SdpStatus::NumericalFailure;

    for (int iter = 0; iter < tol.max_iters; ++iter) {
        sol.iterations = iter;

        const Eigen::VectorXd rp = sf.b - sf.apply(x);
        BlockVar rd = sf.adjoint(y);
        rd.lp = sf.c.lp - rd.lp - z.lp;
        for (std::size_t b = 0; b < nb; ++b)
            rd.mats[b] = sf.c.mats[b] - rd.mats[b] - z.mats[b];

        const double pinf = rp.norm() / (1.0 + b_norm);
        const double dinf = frob(rd) / (1.0 + c_norm);
        const double mu = inner(x, z) / sf.total_dim;

        export_point();
        if (sol.duality_gap <= tol.gap_tol && sol.max_constraint_violation <= tol.feas_tol &&
            pinf <= tol.feas_tol && dinf <= tol.feas_tol) {
            sol.status = SdpStatus::Optimal;
            return sol;
        }

        // Primal infeasibility: b^T y diverging along a ray with A^T y <= 0.
        const double dobj = sf.b.dot(y);
        if (dobj > 1.0 / tol.feas_tol) {
            const Eigen::VectorXd yhat = y / dobj;
            const BlockVar ray = sf.adjoint(yhat);
            double worst = ray.lp.size() ? ray.lp.maxCoeff() : -kInf;
            for (const auto& mat : ray.mats)
                worst = std::max(worst, max_eig(mat));
            if (worst <= 1e-6) {
                sol.status = SdpStatus::Infeasible;
                return sol;
            }
        }

        // Schur complement M_ij = <A_i, X A_j Z^-1> (+ slack terms).
        std::vector<CMatrix> zinv(nb);
        bool ok = true;
        for (std::size_t b = 0; b < nb && ok; ++b)
            ok = invert_pd(z.mats[b], zinv[b]);
        if (!ok)
            break;
        const Eigen::VectorXd xz = x.lp.cwiseQuotient(z.lp);

        Eigen::MatrixXd schur = sf.lp_a * xz.asDiagonal() * sf.lp_a.transpose();
        for (std::size_t b = 0; b < nb; ++b) {
            for (int j = 0; j < m; ++j) {
                if (sf.a[j][b].size() == 0)
                    continue;
                const CMatrix t = x.mats[b] * sf.a[j][b] * zinv[b];
                for (int i = 0; i < m; ++i)
                    if (sf.a[i][b].size() != 0)
                        schur(i, j) += hdot(sf.a[i][b], t);
            }
        }
        schur = 0.5 * (schur + schur.transpose()).eval();
        Eigen::LDLT<Eigen::MatrixXd> ldlt(schur);
        if (ldlt.info() != Eigen::Success)
            break;

        // A(X Rd Z^-1), shared by predictor and corrector.
        Eigen::VectorXd a_xrdz = sf.lp_a * x.lp.cwiseProduct(rd.lp).cwiseQuotient(z.lp);
        for (std::size_t b = 0; b < nb; ++b) {
            const CMatrix t = x.mats[b] * rd.mats[b] * zinv[b];
            for (int i = 0; i < m; ++i)
                if (sf.a[i][b].size() != 0)
                    a_xrdz(i) += hdot(sf.a[i][b], t);
        }

        // Solves the Newton system for the complementarity target G (blocks) / g (slacks).
        auto direction = [&](const BlockVar& g, BlockVar& dx, Eigen::VectorXd& dy, BlockVar& dz) {
            const Eigen::VectorXd rhs = rp - sf.apply(g) + a_xrdz;
            dy = ldlt.solve(rhs);
            dz = sf.adjoint(dy);
            dz.lp = rd.lp - dz.lp;
            dx.lp = g.lp - x.lp.cwiseProduct(dz.lp).cwiseQuotient(z.lp);
            dx.mats.resize(nb);
            for (std::size_t b = 0; b < nb; ++b) {
                dz.mats[b] = rd.mats[b] - dz.mats[b];
                dx.mats[b] = g.mats[b] - herm(x.mats[b] * dz.mats[b] * zinv[b]);
            }
        };

        // Predictor (affine scaling).
        BlockVar g;
        g.lp = -x.lp;
        for (std::size_t b = 0; b < nb; ++b)
            g.mats.push_back(-x.mats[b]);
        BlockVar dxa, dza;
        Eigen::VectorXd dya;
        direction(g, dxa, dya, dza);
        const double ap_a = std::min(1.0, max_step(x, dxa));
        const double ad_a = std::min(1.0, max_step(z, dza));

        BlockVar xa = x, za = z;
        xa.lp += ap_a * dxa.lp;
        za.lp += ad_a * dza.lp;
        for (std::size_t b = 0; b < nb; ++b) {
            xa.mats[b] += ap_a * dxa.mats[b];
            za.mats[b] += ad_a * dza.mats[b];
        }
        const double mu_aff = inner(xa, za) / sf.total_dim;
        const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

        // Corrector with the second-order term.
        g.lp = (sigma * mu) * z.lp.cwiseInverse() - x.lp -
               dxa.lp.cwiseProduct(dza.lp).cwiseQuotient(z.lp);
        for (std::size_t b = 0; b < nb; ++b)
            g.mats[b] = (sigma * mu) * zinv[b] - x.mats[b] - herm(dxa.mats[b] * dza.mats[b] * zinv[b]);
        BlockVar dx, dz;
        Eigen::VectorXd dy;
        direction(g, dx, dy, dz);

        const double gamma = 0.98;
        const double ap = std::min(1.0, gamma * max_step(x, dx));
        const double ad = std::min(1.0, gamma * max_step(z, dz));
        if (!(ap > 0.0) || !(ad > 0.0))
            break;

        x.lp += ap * dx.lp;
        z.lp += ad * dz.lp;
        for (std::size_t b = 0; b < nb; ++b) {
            x.mats[b] = herm(x.mats[b] + ap * dx.mats[b]);
            z.mats[b] = herm(z.mats[b] + ad * dz.mats[b]);
        }
        y += ad * dy;

        stalled = (std::max(ap, ad) < 1e-8 || pinf > 0.999 * prev_pinf) ? stalled + 1 : 0;
        prev_pinf = pinf;
        if (stalled > 25)
            break;
    }

    export_point();
    const double pinf = (sf.b - sf.apply(x)).norm() / (1.0 + b_norm);
    sol.status = pinf > tol.feas_tol ? SdpStatus::Infeasible : SdpStatus::NumericalFailure;
    return sol;
}

SdpProblem realify(const SdpProblem& problem)
{
    problem.validate();
    auto embed = [](const CMatrix& m) -> CMatrix {
        if (m.size() == 0)
            return m;
        return (0.5 * real_embedding(m)).cast<cdouble>();
    };
    SdpProblem out;
    for (const auto& blk : problem.blocks)
        out.blocks.push_back({blk.name, 2 * blk.dim});
    for (const auto& c : problem.objective)
        out.objective.push_back(embed(c));
    for (const auto& con : problem.constraints) {
        SdpConstraint rc{con.label, {}, con.sense, con.bound};
        for (const auto& c : con.coeffs)
            rc.coeffs.push_back(embed(c));
        out.constraints.push_back(std::move(rc));
    }
    return out;
}

CMatrix complex_from_embedding(const CMatrix& real_block)
{
    if (real_block.rows() != real_block.cols() || real_block.rows() % 2 != 0)
        throw std::invalid_argument("complex_from_embedding: block must be square with even size");
    const Eigen::Index n = real_block.rows() / 2;
    const Eigen::MatrixXd y = real_block.real();
    CMatrix out(n, n);
    out.real() = 0.5 * (y.topLeftCorner(n, n) + y.bottomRightCorner(n, n));
    out.imag() = 0.5 * (y.bottomLeftCorner(n, n) - y.topRightCorner(n, n));
    return out;
}

void dump_problem(const SdpProblem& problem, std::ostream& out)
{
    auto matrix = [&out](const CMatrix& m) {
        int nnz = 0;
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                if (m(i, j) != cdouble(0.0, 0.0))
                    ++nnz;
        out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                if (m(i, j) != cdouble(0.0, 0.0))
                    out << i + 1 << ' ' << j + 1 << ' ' << m(i, j).real() << ' ' << m(i, j).imag()
                        << '\n';
    };
    out.precision(17);
    out << "%%SdpProblem complex hermitian\n";
    out << problem.blocks.size() << ' ' << problem.constraints.size() << '\n';
    for (const auto& blk : problem.blocks)
        out << "block " << blk.name << ' ' << blk.dim << '\n';
    for (std::size_t b = 0; b < problem.blocks.size(); ++b) {
        out << "objective " << problem.blocks[b].name << '\n';
        matrix(problem.objective[b]);
    }
    for (const auto& con : problem.constraints) {
        const char* sense = con.sense == ConstraintSense::LessEqual      ? "<="
                            : con.sense == ConstraintSense::GreaterEqual ? ">="
                                                                         : "=";
        out << "constraint " << con.label << ' ' << sense << ' ' << con.bound << '\n';
        for (std::size_t b = 0; b < problem.blocks.size(); ++b)
            matrix(con.coeffs[b]);
    }
}

}  // namespace swipt
