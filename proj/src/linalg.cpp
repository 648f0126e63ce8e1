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

#include "swipt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swipt {

CVector vec(const CMatrix& m)
{
    return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix unvec(const CVector& v, int rows, int cols)
{
    if (rows < 0 || cols < 0 || v.size() != static_cast<Eigen::Index>(rows) * cols)
        throw std::invalid_argument("unvec: vector length does not match rows * cols");
    return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

CMatrix kron(const CMatrix& a, const CMatrix& b)
{
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

bool trace_identity_check(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                          const CMatrix& d, double tol)
{
    if (a.cols() != b.rows() || b.cols() != c.rows() || c.cols() != d.rows() ||
        d.cols() != a.rows())
        throw std::invalid_argument("trace_identity_check: nonconformable matrices");

    const cdouble lhs = (a * b * c * d).trace();
    const CVector vd = vec(d.transpose());
    const cdouble rhs = (vd.transpose() * (kron(c.transpose(), a) * vec(b)))(0, 0);

    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return std::abs(lhs - rhs) <= tol * scale;
}

double quad_form(const CVector& g, const CMatrix& q)
{
    return (g.transpose() * q * g.conjugate())(0, 0).real();
}

CMatrix conj_outer(const CVector& x)
{
    return x.conjugate() * x.transpose();
}

CMatrix hermitian_part(const CMatrix& m)
{
    return 0.5 * (m + m.adjoint());
}

bool is_hermitian(const CMatrix& m, double tol)
{
    if (m.rows() != m.cols())
        return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

double min_eigenvalue(const CMatrix& hermitian)
{
    if (hermitian.size() == 0)
        return 0.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(hermitian), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

CMatrix project_psd(const CMatrix& m)
{
    if (m.size() == 0)
        return m;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
    const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXd real_embedding(const CMatrix& m)
{
    const Eigen::Index r = m.rows();
    const Eigen::Index c = m.cols();
    Eigen::MatrixXd out(2 * r, 2 * c);
    out.topLeftCorner(r, c) = m.real();
    out.topRightCorner(r, c) = -m.imag();
    out.bottomLeftCorner(r, c) = m.imag();
    out.bottomRightCorner(r, c) = m.real();
    return out;
}

}  // namespace swipt
