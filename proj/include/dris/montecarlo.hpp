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

#ifndef DRIS_MONTECARLO_HPP
#define DRIS_MONTECARLO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dris/analytics.hpp"

namespace dris
{

// w_k = conj(h_k) / sqrt(M eta_k). The normalizer is the statistical
// E{||h_k||^2} = tr(Psi_k), not the instantaneous norm.
CVector mrt_precoder(const CVector &h, double eta, int M);

// channels / precoders hold one user per column (M x K).
// SINR_k = p_k |h_k^T w_k|^2 / (sum_{l != k} p_l |h_k^T w_l|^2 + sigma^2)
double instantaneous_sinr(const CMatrix &channels, const CMatrix &precoders, const std::vector<double> &powers,
                          double noise_power, int k);

struct TrialResult
{
    std::size_t trial = 0;
    std::vector<double> sinr;
    std::vector<double> rate;
};

struct MonteCarloOptions
{
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    bool collect_covariance = false;
};

// Effective channels of trial t (M x K). Equal to effective_channel() on
// draw_channels() and two sample_von_mises() calls from SeededRng(seed, t).
CMatrix trial_channel_matrix(const Scenario &s, const PhaseConfig &phases, std::size_t trial, std::uint64_t seed);

// Trial t draws channels and phase noise from SeededRng(seed, t).
TrialResult run_trial(const Scenario &s, const PhaseConfig &phases, const std::vector<double> &eta,
                      std::size_t trial, std::uint64_t seed);

// Sample moments gathered in a single pass over the trials. Trials are
// reduced in fixed-size blocks in index order, so the result is identical
// for any thread count.
struct MonteCarloSummary
{
    std::size_t trials = 0;
    std::vector<double> eta; // normalizers used by the precoders

    std::vector<double> rate_mean;
    std::vector<double> rate_stderr;

    std::vector<cdouble> mean_gain;       // E{h_k^T w_k}
    Eigen::MatrixXd mean_cross_power;     // (k, l): E{|h_k^T w_l|^2}

    std::vector<double> norm2_mean;       // E{||h_k||^2}
    std::vector<double> norm2_stderr;
    std::vector<double> precoder_norm2_mean; // E{||w_k||^2}
    std::vector<double> precoder_norm2_stderr;

    std::vector<CMatrix> covariance;      // E{h_k h_k^H}, when collected
};

MonteCarloSummary run_monte_carlo(const Scenario &s, const PhaseConfig &phases, const MonteCarloOptions &opts);

struct ErgodicEstimate
{
    std::vector<double> rate;
    std::vector<double> standard_error;
    std::size_t trials = 0;
};

// Requires trials >= 100.
ErgodicEstimate ergodic_rate_estimate(const Scenario &s, const PhaseConfig &phases, const MonteCarloOptions &opts);

struct MomentBound
{
    std::vector<double> sinr;
    std::vector<double> rate;
    std::vector<bool> negative_denominator; // sampling noise drove the denominator <= 0
};

// Hardening bound with sample moments plugged in:
//   p_k |E{h_k^T w_k}|^2 / (sum_l p_l E{|h_k^T w_l|^2} - p_k |E{h_k^T w_k}|^2 + sigma^2)
MomentBound moment_bound_from_summary(const MonteCarloSummary &sum, const std::vector<double> &powers,
                                      double noise_power);

// Requires trials >= 1000.
MomentBound moment_bound_estimate(const Scenario &s, const PhaseConfig &phases, const MonteCarloOptions &opts);

struct CovarianceEstimate
{
    CMatrix psi;
    double trace_mean = 0.0;
    double trace_stderr = 0.0;
};

// Requires trials >= 1000.
CovarianceEstimate covariance_estimate(const Scenario &s, const PhaseConfig &phases, const MonteCarloOptions &opts,
                                       int k);

struct RateReport
{
    std::vector<double> closed_form_rate;
    std::vector<double> mc_rate;
    std::vector<double> mc_stderr;
    std::vector<double> moment_bound_rate;
    std::vector<bool> moment_bound_flagged;
    std::size_t trials = 0;
    std::string config_digest;
};

RateReport rate_report(const Scenario &s, const PhaseConfig &phases, const MonteCarloOptions &opts,
                       const std::string &config_digest);

} // namespace dris

#endif
