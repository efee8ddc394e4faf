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

#include "dris/matrix_core.hpp"

#include <algorithm>
#include <cmath>

namespace dris
{

std::string_view to_string(ErrorCode code)
{
    switch (code)
    {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::IndefiniteMatrix: return "IndefiniteMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidCorrelation: return "InvalidCorrelation";
    case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    case ErrorCode::InvalidKappa: return "InvalidKappa";
    case ErrorCode::InvalidDistance: return "InvalidDistance";
    case ErrorCode::CoincidentNodes: return "CoincidentNodes";
    case ErrorCode::InvalidCf: return "InvalidCf";
    case ErrorCode::DegenerateEta: return "DegenerateEta";
    case ErrorCode::SingularCovariance: return "SingularCovariance";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

bool is_hermitian(const CMatrix &A, double rel_tol)
{
    if (A.rows() != A.cols())
        return false;
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    const double tol = rel_tol * scale;
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = i; j < A.cols(); ++j)
            if (std::abs(A(i, j) - std::conj(A(j, i))) > tol)
                return false;
    return true;
}

CMatrix hermitian_psd_sqrt(const CMatrix &R, double clamp_tol)
{
    if (R.rows() != R.cols())
        throw Error(ErrorCode::DimensionMismatch, "square root requires a square matrix");
    if (R.size() == 0)
        return R;
    if (!is_hermitian(R))
        throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");

    // Solve on the exactly symmetrized matrix so round-off asymmetry does not leak in.
    const CMatrix sym = 0.5 * (R + R.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(sym);
    if (eig.info() != Eigen::Success)
        throw Error(ErrorCode::IndefiniteMatrix, "eigendecomposition did not converge");

    RVector lambda = eig.eigenvalues();
    const double largest = lambda.cwiseAbs().maxCoeff();
    const double tol = clamp_tol < 0.0 ? 1e-10 * largest : clamp_tol;
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
    {
        if (lambda(i) < -tol)
            throw Error(ErrorCode::IndefiniteMatrix,
                        "eigenvalue " + std::to_string(lambda(i)) + " below -clamp_tol");
        lambda(i) = lambda(i) < 0.0 ? 0.0 : std::sqrt(lambda(i));
    }

    const CMatrix &V = eig.eigenvectors();
    CMatrix S = V * lambda.asDiagonal() * V.adjoint();
    return 0.5 * (S + S.adjoint());
}

cdouble trace_product(const CMatrix &A, const CMatrix &B)
{
    if (A.rows() != B.cols() || A.cols() != B.rows())
        throw Error(ErrorCode::DimensionMismatch, "trace_product needs A m-by-n and B n-by-m");
    // tr(AB) = sum_ij A(i,j) B(j,i)
    return (A.array() * B.transpose().array()).sum();
}

double relative_frobenius_error(const CMatrix &A, const CMatrix &B)
{
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw Error(ErrorCode::DimensionMismatch, "relative_frobenius_error shape mismatch");
    const double ref = B.norm();
    return ref > 0.0 ? (A - B).norm() / ref : (A - B).norm();
}

} // namespace dris
