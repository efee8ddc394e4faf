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

#include "dris/correlation.hpp"

#include <cmath>
#include <numbers>

namespace dris
{

double sinc(double x)
{
    if (x == 0.0)
        return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

CMatrix build_bs_correlation(const BsCorrelationSpec &spec)
{
    if (spec.antennas < 1)
        throw Error(ErrorCode::InvalidCorrelation, "BS antenna count must be positive");
    if (!(spec.rho_magnitude >= 0.0 && spec.rho_magnitude <= 1.0) || !std::isfinite(spec.rho_phase))
        throw Error(ErrorCode::InvalidCorrelation, "|rho| must lie in [0, 1]");

    const int M = spec.antennas;
    CMatrix R(M, M);
    for (int i = 0; i < M; ++i)
    {
        R(i, i) = 1.0;
        for (int j = i + 1; j < M; ++j)
        {
            const int d = j - i;
            R(i, j) = std::polar(std::pow(spec.rho_magnitude, d), d * spec.rho_phase);
            R(j, i) = std::conj(R(i, j));
        }
    }
    return R;
}

CMatrix build_ris_correlation(const RisGeometry &geom)
{
    if (geom.n_vertical < 1 || geom.n_horizontal < 1)
        throw Error(ErrorCode::InvalidGeometry, "RIS grid dimensions must be positive");
    if (!(geom.element_spacing > 0.0) || !(geom.wavelength > 0.0))
        throw Error(ErrorCode::InvalidGeometry, "element spacing and wavelength must be positive");
    if (!std::isfinite(geom.element_spacing) || !std::isfinite(geom.wavelength))
        throw Error(ErrorCode::InvalidGeometry, "non-finite geometry");

    const int N = geom.elements();
    const int NV = geom.n_vertical;
    CMatrix R(N, N);
    for (int l = 0; l < N; ++l)
    {
        R(l, l) = 1.0;
        const int vl = l % NV, hl = l / NV;
        for (int m = l + 1; m < N; ++m)
        {
            const int vm = m % NV, hm = m / NV;
            const double dist = geom.element_spacing * std::hypot(double(hl - hm), double(vl - vm));
            const double r = sinc(2.0 * dist / geom.wavelength);
            R(l, m) = r;
            R(m, l) = r;
        }
    }
    return R;
}

CMatrix all_ones_correlation(int n)
{
    if (n < 1)
        throw Error(ErrorCode::InvalidGeometry, "matrix size must be positive");
    return CMatrix::Ones(n, n);
}

double phase_weighted_trace(const CMatrix &R, const std::vector<double> &theta)
{
    const Eigen::Index N = R.rows();
    if (R.cols() != N || static_cast<Eigen::Index>(theta.size()) != N)
        throw Error(ErrorCode::DimensionMismatch, "phase vector length must match R");

    CVector e(N);
    for (Eigen::Index n = 0; n < N; ++n)
        e(n) = std::polar(1.0, theta[n]);

    // sum_n conj(e_n) * sum_l |R(n,l)|^2 e_l
    const Eigen::MatrixXd P = R.cwiseAbs2();
    const CVector Pe = P * e;
    const cdouble v = e.dot(Pe); // Eigen's dot conjugates the first argument

    const double scale = std::max(1.0, P.sum());
    if (std::abs(v.imag()) > 1e-9 * scale)
        throw Error(ErrorCode::NotHermitian, "phase-weighted trace is not real; R is not Hermitian");
    return v.real();
}

CorrelationSet make_correlation_set(const CMatrix &R_B, const CMatrix &R_1, const CMatrix &R_2)
{
    CorrelationSet set;
    set.R_B = R_B;
    set.R_1 = R_1;
    set.R_2 = R_2;
    set.sqrt_B = hermitian_psd_sqrt(R_B);
    set.sqrt_1 = hermitian_psd_sqrt(R_1);
    set.sqrt_2 = hermitian_psd_sqrt(R_2);
    set.tr_RB2 = trace_product(R_B, R_B).real();
    set.tr_R1sq = trace_product(R_1, R_1).real();
    set.tr_R2sq = trace_product(R_2, R_2).real();
    return set;
}

CorrelationSet make_correlation_set(const BsCorrelationSpec &bs, const RisGeometry &ris1,
                                    const RisGeometry &ris2)
{
    return make_correlation_set(build_bs_correlation(bs), build_ris_correlation(ris1),
                                build_ris_correlation(ris2));
}

} // namespace dris
