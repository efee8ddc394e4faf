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

#ifndef DRIS_ANALYTICS_HPP
#define DRIS_ANALYTICS_HPP

#include <vector>

#include "dris/channel_model.hpp"

namespace dris
{

// Scalars entering the channel-strength statistic eta_k of one user.
// v1 = tr(R1 Th1 R1 Th1^H), v2 likewise.
struct EtaInputs
{
    double beta_B1 = 0.0;
    double beta_B2 = 0.0;
    double beta_1k = 0.0;
    double beta_2k = 0.0;
    double beta_G = 0.0;
    double varphi = 0.0;
    int N1 = 0;
    int N2 = 0;
    double v1 = 0.0;
    double v2 = 0.0;
};

// Per-link contributions to eta_k; their sum is eta_k.
struct EtaTerms
{
    double double_reflection = 0.0;
    double via_ris1 = 0.0;
    double via_ris2 = 0.0;

    double total() const { return double_reflection + via_ris1 + via_ris2; }
};

EtaTerms eta_terms(const EtaInputs &in);

// Closed-form eta_k: E{h h^H} = eta_k R_B.
double eta_k(const EtaInputs &in);

// eta_k under the equal-phase design, i.e. with v_i = tr(R_i^2).
double eta_k_optimal(EtaInputs in, double tr_R1sq, double tr_R2sq);

// p_k M^2 / (tr(R_B^2) sum_l p_l + M sigma^2 / eta_k)
double sinr_lower_bound(double p_k, double total_user_power, int M, double tr_RB2, double noise_power,
                        double eta);

double achievable_rate(double sinr);

EtaInputs eta_inputs(const Scenario &s, const PhaseConfig &phases, int k);

// Psi_k = eta_k R_B.
CMatrix channel_covariance(const Scenario &s, const PhaseConfig &phases, int k);

// Hardening bound from arbitrary covariances (MRT form):
//   p_k tr(Psi_k) / (sum_l p_l tr(Psi_k Psi_l) / tr(Psi_l) + sigma^2)
double general_hardening_sinr(const std::vector<CMatrix> &psi, const std::vector<double> &powers,
                              double noise_power, int k);

// Scalar multipliers of R_B for the pieces of the double-reflection
// covariance, built step by step rather than from the collapsed eta_k:
//   A: E{H_B1 Th1~ G R2bar G^H Th1~^H H_B1^H} = A * R_B
//   B: E{H_B1 Th1~ G G^H Th1~^H H_B1^H}       = B * R_B
// so the double-reflection covariance is beta_2k (phi^2 A + (1 - phi^2) B) R_B.
double double_reflection_A(const EtaInputs &in);
double double_reflection_B(const EtaInputs &in);
double double_reflection_scalar(const EtaInputs &in);
// Single-hop pieces: beta_Bi beta_ik (phi^2 v_i + (1 - phi^2) N_i).
double single_reflection_scalar(const EtaInputs &in, int ris);

struct ClosedFormUser
{
    double eta = 0.0;
    double sinr = 0.0;
    double rate = 0.0;
};

std::vector<ClosedFormUser> closed_form_rates(const Scenario &s, const PhaseConfig &phases);

double sum_rate(const std::vector<ClosedFormUser> &users);

} // namespace dris

#endif
