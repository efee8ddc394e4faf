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

#ifndef DRIS_RBD_HPP
#define DRIS_RBD_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "dris/analytics.hpp"

namespace dris
{

// Equal phases theta_i = c * 1 on both surfaces; maximizes tr(R_i Th_i R_i Th_i^H).
PhaseConfig optimal_phase_config(int n1, int n2, double c = 0.0);

// i.i.d. uniform phases on [-pi, pi].
PhaseConfig random_phase_config(int n1, int n2, SeededRng &rng);

// eta_k expressed as c0 v1 v2 + c1 v1 + c2 v2 + c3.
struct EtaCoefficients
{
    std::array<double, 4> c{};

    double evaluate(double v1, double v2) const { return c[0] * v1 * v2 + c[1] * v1 + c[2] * v2 + c[3]; }
};

EtaCoefficients eta_coefficients(const EtaInputs &in);

struct DesignEvaluation
{
    double v1 = 0.0;
    double v2 = 0.0;
    std::vector<double> eta;
    std::vector<double> rate;
    std::vector<EtaCoefficients> coefficients;
    double sum_rate = 0.0;
    bool coefficients_nonnegative = true;
    // max_k |eta_k - affine form| / eta_k
    double affine_mismatch = 0.0;
};

DesignEvaluation evaluate_design(const Scenario &s, const PhaseConfig &phases);

struct RbdCheckReport
{
    std::size_t samples = 0;
    double tr_R1sq = 0.0;
    double tr_R2sq = 0.0;
    double max_v1_excess = 0.0;       // max over samples of v1 - tr(R1^2)
    double max_v2_excess = 0.0;
    double optimal_sum_rate = 0.0;
    double max_random_sum_rate = 0.0;
    double max_constant_deviation = 0.0; // across c in {0, 1, pi, -2.5}
    bool passed = false;
};

// Compares the equal-phase design against random configurations.
RbdCheckReport rbd_check(const Scenario &s, std::size_t samples, std::uint64_t seed);

} // namespace dris

#endif
