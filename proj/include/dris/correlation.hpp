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

#ifndef DRIS_CORRELATION_HPP
#define DRIS_CORRELATION_HPP

#include <vector>

#include "dris/matrix_core.hpp"

namespace dris
{

// Exponential (Kronecker-style) correlation of a uniform linear array.
struct BsCorrelationSpec
{
    int antennas = 1;           // M
    double rho_magnitude = 0.0; // |rho| in [0, 1]
    double rho_phase = 0.0;     // arg(rho) in radians
};

// Planar N_V x N_H surface. Elements sit on a square grid with pitch
// element_spacing; element_height * element_width is the per-element area.
struct RisGeometry
{
    int n_vertical = 1;
    int n_horizontal = 1;
    double element_spacing = 0.025; // meters
    double wavelength = 0.1;        // meters
    double element_height = 0.025;  // meters
    double element_width = 0.025;   // meters

    int elements() const { return n_vertical * n_horizontal; }
    double element_area() const { return element_height * element_width; }
};

// Normalized sinc: sin(pi x) / (pi x), sinc(0) = 1.
double sinc(double x);

// [R_B](i,j) = rho^(j-i) for i <= j, completed by conjugate symmetry.
CMatrix build_bs_correlation(const BsCorrelationSpec &spec);

// Element l sits at (h * spacing, v * spacing) with l = v + h * n_vertical,
// i.e. column-major over the grid with the vertical index fastest.
// [R](l,m) = sinc(2 |u_l - u_m| / wavelength).
CMatrix build_ris_correlation(const RisGeometry &geom);

// Hypothetical fully correlated surface (every entry 1). Not physically
// realizable; only used to probe the tr(R^2) = N^2 extreme.
CMatrix all_ones_correlation(int n);

// tr(R Theta R Theta^H) with Theta = diag(exp(j theta)), evaluated as
// sum_{n,l} |R(n,l)|^2 exp(j(theta_l - theta_n)). Throws if the result has
// a non-negligible imaginary part.
double phase_weighted_trace(const CMatrix &R, const std::vector<double> &theta);

// Correlation matrices for the BS and both surfaces, their PSD square roots
// and the tr(X^2) statistics reused by every closed-form evaluation.
struct CorrelationSet
{
    CMatrix R_B, R_1, R_2;
    CMatrix sqrt_B, sqrt_1, sqrt_2;
    double tr_RB2 = 0.0;
    double tr_R1sq = 0.0;
    double tr_R2sq = 0.0;

    int antennas() const { return static_cast<int>(R_B.rows()); }
    int n1() const { return static_cast<int>(R_1.rows()); }
    int n2() const { return static_cast<int>(R_2.rows()); }
};

CorrelationSet make_correlation_set(const CMatrix &R_B, const CMatrix &R_1, const CMatrix &R_2);

CorrelationSet make_correlation_set(const BsCorrelationSpec &bs, const RisGeometry &ris1,
                                    const RisGeometry &ris2);

} // namespace dris

#endif
