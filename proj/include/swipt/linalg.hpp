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

#ifndef SWIPT_LINALG_HPP
#define SWIPT_LINALG_HPP

#include <complex>

#include <Eigen/Dense>

namespace swipt {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Column-stacking vectorization.
CVector vec(const CMatrix& m);

/// Inverse of vec. Throws std::invalid_argument unless v.size() == rows * cols.
CMatrix unvec(const CVector& v, int rows, int cols);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Compares Tr(ABCD) against vec(D^T)^T (C^T kron A) vec(B).
/// Throws std::invalid_argument when the product ABCD is not square.
bool trace_identity_check(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                          const CMatrix& d, double tol = 1e-10);

/// g^T Q g^*, real for Hermitian Q.
double quad_form(const CVector& g, const CMatrix& q);

/// x^* x^T, the conjugate outer product used by every Gram term.
CMatrix conj_outer(const CVector& x);

CMatrix hermitian_part(const CMatrix& m);

bool is_hermitian(const CMatrix& m, double tol);

double min_eigenvalue(const CMatrix& hermitian);

/// Hermitian part with negative eigenvalues clipped to zero.
CMatrix project_psd(const CMatrix& m);

/// Real symmetric embedding [[Re, -Im], [Im, Re]] of a complex matrix.
Eigen::MatrixXd real_embedding(const CMatrix& m);

}  // namespace swipt

#endif  // SWIPT_LINALG_HPP
