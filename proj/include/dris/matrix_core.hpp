// SPDX-License-Identifier: Apache-2.0
//
// dris - double-RIS multiuser MISO link simulation and analytics
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

#ifndef DRIS_MATRIX_CORE_HPP
#define DRIS_MATRIX_CORE_HPP

#include <Eigen/Dense>
#include <complex>

#include "dris/error.hpp"

namespace dris
{

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Default relative tolerance for Hermitian symmetry checks.
inline constexpr double hermitian_tol = 1e-12;

// True if |A(i,j) - conj(A(j,i))| <= rel_tol * max(1, max|A|) for all entries.
bool is_hermitian(const CMatrix &A, double rel_tol = hermitian_tol);

// Hermitian PSD square root via eigendecomposition. Eigenvalues in
// [-clamp_tol, 0) are clamped to zero; anything more negative is rejected.
// clamp_tol < 0 selects the default 1e-10 * (largest eigenvalue magnitude).
CMatrix hermitian_psd_sqrt(const CMatrix &R, double clamp_tol = -1.0);

// tr(A * B) as a sum of entrywise products, without forming A * B.
cdouble trace_product(const CMatrix &A, const CMatrix &B);

// Relative Frobenius distance ||A - B||_F / ||B||_F.
double relative_frobenius_error(const CMatrix &A, const CMatrix &B);

} // namespace dris

#endif
