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

#include "dris/rbd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dris
{

PhaseConfig optimal_phase_config(int n1, int n2, double c)
{
    if (n1 < 0 || n2 < 0)
        throw Error(ErrorCode::DimensionMismatch, "surface sizes must be non-negative");
    return {std::vector<double>(n1, c), std::vector<double>(n2, c)};
}

PhaseConfig random_phase_config(int n1, int n2, SeededRng &rng)
{
    constexpr double pi = std::numbers::pi;
    PhaseConfig p{std::vector<double>(n1), std::vector<double>(n2)};
    for (auto &x : p.theta_1)
        x = pi * (2.0 * rng.uniform() - 1.0);
    for (auto &x : p.theta_2)
        x = pi * (2.0 * rng.uniform() - 1.0);
    return p;
}

EtaCoefficients eta_coefficients(const EtaInputs &in)
{
    const double p2 = in.varphi * in.varphi;
    const double p4 = p2 * p2;
    const double dbl = in.beta_B1 * in.beta_2k * in.beta_G;
    const double s1 = in.beta_B1 * in.beta_1k;
    const double s2 = in.beta_B2 * in.beta_2k;
    const double N1 = in.N1, N2 = in.N2;

    EtaCoefficients e;
    e.c[0] = dbl * p4;
    e.c[1] = dbl * N2 * (p2 - p4) + s1 * p2;
    e.c[2] = dbl * N1 * (p2 - p4) + s2 * p2;
    e.c[3] = dbl * N1 * N2 * (1.0 - p2) * (1.0 - p2) + s1 * (1.0 - p2) * N1 + s2 * (1.0 - p2) * N2;
    return e;
}

DesignEvaluation evaluate_design(const Scenario &s, const PhaseConfig &phases)
{
    DesignEvaluation d;
    d.v1 = phase_weighted_trace(s.corr.R_1, phases.theta_1);
    d.v2 = phase_weighted_trace(s.corr.R_2, phases.theta_2);

    const auto users = closed_form_rates(s, phases);
    for (int k = 0; k < s.users(); ++k)
    {
        const EtaInputs in = eta_inputs(s, phases, k);
        const EtaCoefficients coef = eta_coefficients(in);
        d.coefficients.push_back(coef);
        d.eta.push_back(users[k].eta);
        d.rate.push_back(users[k].rate);
        d.sum_rate += users[k].rate;
        for (double c : coef.c)
            d.coefficients_nonnegative = d.coefficients_nonnegative && c >= 0.0;
        const double mismatch = std::abs(coef.evaluate(d.v1, d.v2) - users[k].eta) / users[k].eta;
        d.affine_mismatch = std::max(d.affine_mismatch, mismatch);
    }
    return d;
}

RbdCheckReport rbd_check(const Scenario &s, std::size_t samples, std::uint64_t seed)
{
    const int n1 = s.corr.n1(), n2 = s.corr.n2();
    RbdCheckReport r;
    r.samples = samples;
    r.tr_R1sq = s.corr.tr_R1sq;
    r.tr_R2sq = s.corr.tr_R2sq;
    r.max_v1_excess = -std::numeric_limits<double>::infinity();
    r.max_v2_excess = -std::numeric_limits<double>::infinity();
    r.max_random_sum_rate = -std::numeric_limits<double>::infinity();

    const DesignEvaluation best = evaluate_design(s, optimal_phase_config(n1, n2, 0.0));
    r.optimal_sum_rate = best.sum_rate;

    for (double c : {0.0, 1.0, std::numbers::pi, -2.5})
    {
        const PhaseConfig p = optimal_phase_config(n1, n2, c);
        const double dv1 = std::abs(phase_weighted_trace(s.corr.R_1, p.theta_1) - r.tr_R1sq);
        const double dv2 = std::abs(phase_weighted_trace(s.corr.R_2, p.theta_2) - r.tr_R2sq);
        r.max_constant_deviation = std::max({r.max_constant_deviation, dv1, dv2});
    }

    for (std::size_t i = 0; i < samples; ++i)
    {
        SeededRng rng(seed, i);
        const DesignEvaluation d = evaluate_design(s, random_phase_config(n1, n2, rng));
        r.max_v1_excess = std::max(r.max_v1_excess, d.v1 - r.tr_R1sq);
        r.max_v2_excess = std::max(r.max_v2_excess, d.v2 - r.tr_R2sq);
        r.max_random_sum_rate = std::max(r.max_random_sum_rate, d.sum_rate);
    }

    r.passed = r.max_v1_excess <= 1e-9 && r.max_v2_excess <= 1e-9 && r.max_random_sum_rate <= r.optimal_sum_rate &&
               r.max_constant_deviation <= 1e-9;
    if (samples == 0)
        r.passed = r.max_constant_deviation <= 1e-9;
    return r;
}

} // namespace dris
