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

#include "dris/analytics.hpp"

#include <cmath>
#include <numeric>

#include "dris/correlation.hpp"

namespace dris
{

namespace
{

void check_inputs(const EtaInputs &in)
{
    if (!(in.varphi >= 0.0 && in.varphi <= 1.0))
        throw Error(ErrorCode::InvalidCf, "characteristic-function value must lie in [0, 1]");
    for (double b : {in.beta_B1, in.beta_B2, in.beta_1k, in.beta_2k, in.beta_G})
        if (!(b >= 0.0) || !std::isfinite(b))
            throw Error(ErrorCode::InvalidConfig, "path gains must be finite and non-negative");
    if (in.N1 < 1 || in.N2 < 1)
        throw Error(ErrorCode::InvalidConfig, "surface sizes must be positive");
}

} // namespace

EtaTerms eta_terms(const EtaInputs &in)
{
    check_inputs(in);
    const double p2 = in.varphi * in.varphi;
    const double p4 = p2 * p2;
    const double N1 = in.N1, N2 = in.N2;

    EtaTerms t;
    t.double_reflection = in.beta_B1 * in.beta_2k * in.beta_G *
                          (in.v2 * (p4 * in.v1 + (p2 - p4) * N1) +
                           N2 * ((p2 - p4) * in.v1 + (1.0 - p2) * (1.0 - p2) * N1));
    t.via_ris1 = in.beta_B1 * in.beta_1k * (p2 * in.v1 + (1.0 - p2) * N1);
    t.via_ris2 = in.beta_B2 * in.beta_2k * (p2 * in.v2 + (1.0 - p2) * N2);
    return t;
}

double eta_k(const EtaInputs &in) { return eta_terms(in).total(); }

double eta_k_optimal(EtaInputs in, double tr_R1sq, double tr_R2sq)
{
    in.v1 = tr_R1sq;
    in.v2 = tr_R2sq;
    return eta_k(in);
}

double sinr_lower_bound(double p_k, double total_user_power, int M, double tr_RB2, double noise_power,
                        double eta)
{
    if (!(eta > 0.0))
        throw Error(ErrorCode::DegenerateEta, "eta_k must be positive");
    if (M < 1)
        throw Error(ErrorCode::InvalidConfig, "M must be >= 1");
    const double Md = M;
    return p_k * Md * Md / (tr_RB2 * total_user_power + Md * noise_power / eta);
}

double achievable_rate(double sinr) { return std::log2(1.0 + sinr); }

namespace
{

EtaInputs inputs_from_traces(const Scenario &s, double v1, double v2, int k)
{
    if (k < 0 || k >= s.users())
        throw Error(ErrorCode::DimensionMismatch, "user index out of range");
    EtaInputs in;
    in.beta_B1 = s.gains.B1;
    in.beta_B2 = s.gains.B2;
    in.beta_G = s.gains.G;
    in.beta_1k = s.gains.k1[k];
    in.beta_2k = s.gains.k2[k];
    in.varphi = s.noise.varphi();
    in.N1 = s.corr.n1();
    in.N2 = s.corr.n2();
    in.v1 = v1;
    in.v2 = v2;
    return in;
}

} // namespace

EtaInputs eta_inputs(const Scenario &s, const PhaseConfig &phases, int k)
{
    return inputs_from_traces(s, phase_weighted_trace(s.corr.R_1, phases.theta_1),
                              phase_weighted_trace(s.corr.R_2, phases.theta_2), k);
}

CMatrix channel_covariance(const Scenario &s, const PhaseConfig &phases, int k)
{
    return eta_k(eta_inputs(s, phases, k)) * s.corr.R_B;
}

double general_hardening_sinr(const std::vector<CMatrix> &psi, const std::vector<double> &powers,
                              double noise_power, int k)
{
    if (psi.size() != powers.size() || k < 0 || k >= static_cast<int>(psi.size()))
        throw Error(ErrorCode::DimensionMismatch, "covariance / power lists inconsistent");
    const CMatrix &psi_k = psi[k];
    double interference = 0.0;
    for (std::size_t l = 0; l < psi.size(); ++l)
    {
        const double tr_l = psi[l].trace().real();
        if (!(tr_l > 0.0))
            throw Error(ErrorCode::SingularCovariance, "covariance with zero trace");
        interference += powers[l] * trace_product(psi_k, psi[l]).real() / tr_l;
    }
    return powers[k] * psi_k.trace().real() / (interference + noise_power);
}

double double_reflection_A(const EtaInputs &in)
{
    check_inputs(in);
    const double p2 = in.varphi * in.varphi;
    return in.beta_B1 * in.beta_G * in.v2 * (p2 * in.v1 + (1.0 - p2) * in.N1);
}

double double_reflection_B(const EtaInputs &in)
{
    check_inputs(in);
    const double p2 = in.varphi * in.varphi;
    // tr(R_2) = N2
    return in.beta_B1 * in.beta_G * in.N2 * (p2 * in.v1 + (1.0 - p2) * in.N1);
}

double double_reflection_scalar(const EtaInputs &in)
{
    const double p2 = in.varphi * in.varphi;
    return in.beta_2k * (p2 * double_reflection_A(in) + (1.0 - p2) * double_reflection_B(in));
}

double single_reflection_scalar(const EtaInputs &in, int ris)
{
    check_inputs(in);
    const double p2 = in.varphi * in.varphi;
    if (ris == 1)
        return in.beta_B1 * in.beta_1k * (p2 * in.v1 + (1.0 - p2) * in.N1);
    if (ris == 2)
        return in.beta_B2 * in.beta_2k * (p2 * in.v2 + (1.0 - p2) * in.N2);
    throw Error(ErrorCode::InvalidConfig, "surface index must be 1 or 2");
}

std::vector<ClosedFormUser> closed_form_rates(const Scenario &s, const PhaseConfig &phases)
{
    const double total = std::accumulate(s.powers.begin(), s.powers.end(), 0.0);
    const double v1 = phase_weighted_trace(s.corr.R_1, phases.theta_1);
    const double v2 = phase_weighted_trace(s.corr.R_2, phases.theta_2);

    std::vector<ClosedFormUser> out(s.users());
    for (int k = 0; k < s.users(); ++k)
    {
        out[k].eta = eta_k(inputs_from_traces(s, v1, v2, k));
        out[k].sinr = sinr_lower_bound(s.powers[k], total, s.antennas(), s.corr.tr_RB2, s.noise_power, out[k].eta);
        out[k].rate = achievable_rate(out[k].sinr);
    }
    return out;
}

double sum_rate(const std::vector<ClosedFormUser> &users)
{
    double sum = 0.0;
    for (const auto &u : users)
        sum += u.rate;
    return sum;
}

} // namespace dris
