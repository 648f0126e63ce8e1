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

#include "swipt/linalg.hpp"
#include "swipt/model.hpp"
#include "swipt/validation.hpp"

using namespace swipt;
using Catch::Matchers::WithinAbs;

TEST_CASE("vec stacks columns")
{
    CMatrix m(2, 2);
    m << 1.0, 3.0, 2.0, 4.0;
    const CVector v = vec(m);
    REQUIRE(v.size() == 4);
    for (int k = 0; k < 4; ++k)
        CHECK(v(k) == cdouble(k + 1.0, 0.0));
}

TEST_CASE("unvec inverts vec")
{
    CounterRng rng(11);
    const CMatrix m = random_cmatrix(rng, 3, 3);
    CHECK((unvec(vec(m), 3, 3) - m).norm() == 0.0);
    const CMatrix r = random_cmatrix(rng, 2, 5);
    CHECK((unvec(vec(r), 2, 5) - r).norm() == 0.0);
    CHECK_THROWS_AS(unvec(vec(m), 2, 4), std::invalid_argument);
}

TEST_CASE("vec of an outer product is a Kronecker product")
{
    CounterRng rng(12);
    const CVector a = random_cmatrix(rng, 2, 1);
    const CVector b = random_cmatrix(rng, 2, 1);
    // Direct expansion: vec(a b^T)_(j*2+i) = b_j a_i.
    const CVector lhs = vec(a * b.transpose());
    CVector expected(4);
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i)
            expected(j * 2 + i) = b(j) * a(i);
    CHECK((lhs - expected).norm() < 1e-15);
    CHECK((lhs - kron(b, a)).norm() < 1e-15);
}

TEST_CASE("trace identity on random quadruples")
{
    const CheckResult r = check_trace_identity(1000, 99);
    INFO(r.detail);
    CHECK(r.passed);
}

TEST_CASE("trace identity trivial cases")
{
    const CMatrix eye = CMatrix::Identity(3, 3);
    CHECK(trace_identity_check(eye, eye, eye, eye));
    // Both sides equal the dimension for identities.
    const cdouble lhs = (eye * eye * eye * eye).trace();
    CHECK_THAT(lhs.real(), WithinAbs(3.0, 1e-15));

    CounterRng rng(5);
    const CMatrix b = random_cmatrix(rng, 3, 3);
    CHECK(trace_identity_check(CMatrix::Zero(3, 3), b, b, b));
}

TEST_CASE("trace identity rejects nonconformable input")
{
    CounterRng rng(6);
    const CMatrix a = random_cmatrix(rng, 2, 3);
    const CMatrix b = random_cmatrix(rng, 2, 2);
    CHECK_THROWS_AS(trace_identity_check(a, b, b, b), std::invalid_argument);
}

TEST_CASE("quad_form and conj_outer agree")
{
    CounterRng rng(8);
    const CVector g = random_cmatrix(rng, 4, 1);
    const CMatrix q = random_cmatrix(rng, 4, 4);
    const CMatrix h = q * q.adjoint();
    const double direct = (g.transpose() * h * g.conjugate())(0, 0).real();
    CHECK_THAT(quad_form(g, h), WithinAbs(direct, 1e-12));
    CHECK_THAT((conj_outer(g) * h).trace().real(), WithinAbs(direct, 1e-12));
}

TEST_CASE("PSD projection clips negative eigenvalues")
{
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = -1.0;
    const CMatrix p = project_psd(m);
    CHECK_THAT(p(0, 0).real(), WithinAbs(2.0, 1e-14));
    CHECK_THAT(p(1, 1).real(), WithinAbs(0.0, 1e-14));
    CHECK(min_eigenvalue(p) >= -1e-14);
}

TEST_CASE("real embedding preserves the spectrum twice")
{
    CounterRng rng(9);
    const CMatrix a = random_cmatrix(rng, 3, 3);
    const CMatrix h = a * a.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> ec(h, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> er(real_embedding(h), Eigen::EigenvaluesOnly);
    for (int k = 0; k < 3; ++k) {
        CHECK_THAT(er.eigenvalues()(2 * k), WithinAbs(ec.eigenvalues()(k), 1e-10));
        CHECK_THAT(er.eigenvalues()(2 * k + 1), WithinAbs(ec.eigenvalues()(k), 1e-10));
    }
}
