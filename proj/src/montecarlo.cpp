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

#include "dris/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace dris
{

namespace
{

constexpr std::size_t block_size = 128;

std::vector<double> closed_form_eta(const Scenario &s, const PhaseConfig &phases)
{
    std::vector<double> eta;
    for (const auto &u : closed_form_rates(s, phases))
        eta.push_back(u.eta);
    return eta;
}

struct Channels
{
    CMatrix h; // M x K
    CMatrix w; // M x K
};

// Same draws, in the same order, as draw_channels followed by the two
// phase-noise vectors. The correlation square roots are applied to the
// K user columns instead of forming H_B1, H_B2 and G, which drops the
// per-trial cost from O(N^3) to O(N^2 K).
Channels trial_channels(const Scenario &s, const PhaseConfig &phases, const std::vector<double> &eta,
                        std::size_t trial, std::uint64_t seed)
{
    const CorrelationSet &corr = s.corr;
    const PathGains &g = s.gains;
    const int M = s.antennas(), K = s.users();
    const Eigen::Index N1 = corr.n1(), N2 = corr.n2();
    if (static_cast<Eigen::Index>(phases.theta_1.size()) != N1 ||
        static_cast<Eigen::Index>(phases.theta_2.size()) != N2)
        throw Error(ErrorCode::DimensionMismatch, "phase vector length does not match the surface");

    SeededRng rng(seed, trial);
    const CMatrix x_b1 = sample_complex_gaussian(M, N1, rng);
    const CMatrix x_b2 = sample_complex_gaussian(M, N2, rng);
    const CMatrix x_g = sample_complex_gaussian(N1, N2, rng);
    CMatrix z1(N1, K), z2(N2, K);
    for (int k = 0; k < K; ++k)
    {
        z1.col(k) = std::sqrt(g.k1[k]) * sample_complex_gaussian_vector(N1, rng);
        z2.col(k) = std::sqrt(g.k2[k]) * sample_complex_gaussian_vector(N2, rng);
    }
    const auto noise_1 = sample_von_mises(s.noise, N1, rng);
    const auto noise_2 = sample_von_mises(s.noise, N2, rng);

    CVector d1(N1), d2(N2);
    for (Eigen::Index i = 0; i < N1; ++i)
        d1(i) = std::polar(1.0, phases.theta_1[i] + noise_1[i]);
    for (Eigen::Index i = 0; i < N2; ++i)
        d2(i) = std::polar(1.0, phases.theta_2[i] + noise_2[i]);

    const CMatrix x2 = d2.asDiagonal() * (corr.sqrt_2 * z2);
    const CMatrix r2x2 = corr.sqrt_2 * x2;
    const CMatrix at_ris1 =
        d1.asDiagonal() * (std::sqrt(g.G) * (corr.sqrt_1 * (x_g * r2x2)) + corr.sqrt_1 * z1);

    Channels c{CMatrix(M, K), CMatrix(M, K)};
    c.h = corr.sqrt_B * (std::sqrt(g.B1) * (x_b1 * (corr.sqrt_1 * at_ris1)) + std::sqrt(g.B2) * (x_b2 * r2x2));
    for (int k = 0; k < K; ++k)
        c.w.col(k) = mrt_precoder(c.h.col(k), eta[k], M);
    return c;
}

double sinr_from_gains(const CMatrix &gains, const std::vector<double> &powers, double noise_power, int k)
{
    double interference = 0.0;
    for (Eigen::Index l = 0; l < gains.cols(); ++l)
        if (l != k)
            interference += powers[l] * std::norm(gains(k, l));
    return powers[k] * std::norm(gains(k, k)) / (interference + noise_power);
}

struct Accumulator
{
    std::size_t count = 0;
    RVector rate, rate_sq;
    CVector gain;
    Eigen::MatrixXd cross;
    RVector norm2, norm2_sq, wnorm2, wnorm2_sq;
    std::vector<CMatrix> cov;

    Accumulator(int M, int K, bool with_cov)
        : rate(RVector::Zero(K)), rate_sq(RVector::Zero(K)), gain(CVector::Zero(K)),
          cross(Eigen::MatrixXd::Zero(K, K)), norm2(RVector::Zero(K)), norm2_sq(RVector::Zero(K)),
          wnorm2(RVector::Zero(K)), wnorm2_sq(RVector::Zero(K))
    {
        if (with_cov)
            cov.assign(K, CMatrix::Zero(M, M));
    }

    void add(const Channels &c, const std::vector<double> &powers, double noise_power)
    {
        const CMatrix gains = c.h.transpose() * c.w; // (k, l) = h_k^T w_l
        const int K = static_cast<int>(gains.rows());
        for (int k = 0; k < K; ++k)
        {
            const double r = achievable_rate(sinr_from_gains(gains, powers, noise_power, k));
            rate(k) += r;
            rate_sq(k) += r * r;
            gain(k) += gains(k, k);
            for (int l = 0; l < K; ++l)
                cross(k, l) += std::norm(gains(k, l));
            const double n2 = c.h.col(k).squaredNorm();
            norm2(k) += n2;
            norm2_sq(k) += n2 * n2;
            const double wn2 = c.w.col(k).squaredNorm();
            wnorm2(k) += wn2;
            wnorm2_sq(k) += wn2 * wn2;
            if (!cov.empty())
                cov[k].noalias() += c.h.col(k) * c.h.col(k).adjoint();
        }
        ++count;
    }

    void merge(const Accumulator &o)
    {
        count += o.count;
        rate += o.rate;
        rate_sq += o.rate_sq;
        gain += o.gain;
        cross += o.cross;
        norm2 += o.norm2;
        norm2_sq += o.norm2_sq;
        wnorm2 += o.wnorm2;
        wnorm2_sq += o.wnorm2_sq;
        for (std::size_t k = 0; k < cov.size(); ++k)
            cov[k] += o.cov[k];
    }
};

void mean_and_stderr(double sum, double sum_sq, std::size_t n, double &mean, double &se)
{
    const double nd = static_cast<double>(n);
    mean = sum / nd;
    if (n < 2)
    {
        se = 0.0;
        return;
    }
    const double var = std::max(0.0, (sum_sq - nd * mean * mean) / (nd - 1.0));
    se = std::sqrt(var / nd);
}

void require_trials(std::size_t trials, std::size_t minimum, const char *what)
{
    if (trials < minimum)
        throw Error(ErrorCode::InvalidConfig,
                    std::string(what) + " needs at least " + std::to_string(minimum) + " trials");
}

} // namespace

CVector mrt_precoder(const CVector &h, double eta, int M)
{
    if (!(eta > 0.0))
        throw Error(ErrorCode::DegenerateEta, "eta_k must be positive for MRT normalization");
    return h.conjugate() / std::sqrt(double(M) * eta);
}

double instantaneous_sinr(const CMatrix &channels, const CMatrix &precoders, const std::vector<double> &powers,
                          double noise_power, int k)
{
    if (channels.rows() != precoders.rows() || channels.cols() != precoders.cols() ||
        static_cast<Eigen::Index>(powers.size()) != channels.cols() || k < 0 || k >= channels.cols())
        throw Error(ErrorCode::DimensionMismatch, "channels, precoders and powers must agree");
    const CMatrix gains = channels.transpose() * precoders;
    return sinr_from_gains(gains, powers, noise_power, k);
}

CMatrix trial_channel_matrix(const Scenario &s, const PhaseConfig &phases, std::size_t trial, std::uint64_t seed)
{
    return trial_channels(s, phases, std::vector<double>(s.users(), 1.0), trial, seed).h;
}

TrialResult run_trial(const Scenario &s, const PhaseConfig &phases, const std::vector<double> &eta,
                      std::size_t trial, std::uint64_t seed)
{
    const Channels c = trial_channels(s, phases, eta, trial, seed);
    const CMatrix gains = c.h.transpose() * c.w;
    TrialResult r;
    r.trial = trial;
    for (int k = 0; k < s.users(); ++k)
    {
        r.sinr.push_back(sinr_from_gains(gains, s.powers, s.noise_power, k));
        r.rate.push_back(achievable_rate(r.sinr.back()));
    }
    return r;
}

MonteCarloSummary run_monte_carlo(const Scenario &s, const PhaseConfig &phases, const MonteCarloOptions &opts)
{
    if (opts.trials < 1)
        throw Error(ErrorCode::InvalidConfig, "trials must be positive");
    const int M = s.antennas(), K = s.users();
    const std::vector<double> eta = closed_form_eta(s, phases);

    const std::size_t blocks = (opts.trials + block_size - 1) / block_size;
    std::vector<Accumulator> partial(blocks, Accumulator(M, K, opts.collect_covariance));

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t b = next++; b < blocks; b = next++)
        {
            const std::size_t first = b * block_size;
            const std::size_t last = std::min(opts.trials, first + block_size);
            for (std::size_t t = first; t < last; ++t)
                partial[b].add(trial_channels(s, phases, eta, t, opts.seed), s.powers, s.noise_power);
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(blocks)));
    if (threads == 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }

    Accumulator total(M, K, opts.collect_covariance);
    for (const auto &p : partial)
        total.merge(p);

    MonteCarloSummary out;
    out.trials = total.count;
    out.eta = eta;
    const double n = static_cast<double>(total.count);
    out.rate_mean.resize(K);
    out.rate_stderr.resize(K);
    out.norm2_mean.resize(K);
    out.norm2_stderr.resize(K);
    out.precoder_norm2_mean.resize(K);
    out.precoder_norm2_stderr.resize(K);
    out.mean_gain.resize(K);
    for (int k = 0; k < K; ++k)
    {
        mean_and_stderr(total.rate(k), total.rate_sq(k), total.count, out.rate_mean[k], out.rate_stderr[k]);
        mean_and_stderr(total.norm2(k), total.norm2_sq(k), total.count, out.norm2_mean[k], out.norm2_stderr[k]);
        mean_and_stderr(total.wnorm2(k), total.wnorm2_sq(k), total.count, out.precoder_norm2_mean[k],
                        out.precoder_norm2_stderr[k]);
        out.mean_gain[k] = total.gain(k) / n;
    }
    out.mean_cross_power = total.cross / n;
    for (auto &c : total.cov)
    {
        CMatrix mean = c / n;
        out.covariance.push_back(0.5 * (mean + mean.adjoint()));
    }
    return out;
}

ErgodicEstimate ergodic_rate_estimate(const Scenario &s, const PhaseConfig &phases, const MonteCarloOptions &opts)
{
    require_trials(opts.trials, 100, "ergodic_rate_estimate");
    MonteCarloOptions o = opts;
    o.collect_covariance = false;
    const MonteCarloSummary sum = run_monte_carlo(s, phases, o);
    return {sum.rate_mean, sum.rate_stderr, sum.trials};
}

MomentBound moment_bound_from_summary(const MonteCarloSummary &sum, const std::vector<double> &powers,
                                      double noise_power)
{
    const int K = static_cast<int>(sum.mean_gain.size());
    MomentBound out;
    for (int k = 0; k < K; ++k)
    {
        const double signal = powers[k] * std::norm(sum.mean_gain[k]);
        double denom = noise_power - signal;
        for (int l = 0; l < K; ++l)
            denom += powers[l] * sum.mean_cross_power(k, l);
        const bool bad = !(denom > 0.0);
        const double sinr = bad ? 0.0 : signal / denom;
        out.sinr.push_back(sinr);
        out.rate.push_back(achievable_rate(sinr));
        out.negative_denominator.push_back(bad);
    }
    return out;
}

MomentBound moment_bound_estimate(const Scenario &s, const PhaseConfig &phases, const MonteCarloOptions &opts)
{
    require_trials(opts.trials, 1000, "moment_bound_estimate");
    MonteCarloOptions o = opts;
    o.collect_covariance = false;
    return moment_bound_from_summary(run_monte_carlo(s, phases, o), s.powers, s.noise_power);
}

CovarianceEstimate covariance_estimate(const Scenario &s, const PhaseConfig &phases, const MonteCarloOptions &opts,
                                       int k)
{
    require_trials(opts.trials, 1000, "covariance_estimate");
    if (k < 0 || k >= s.users())
        throw Error(ErrorCode::DimensionMismatch, "user index out of range");
    MonteCarloOptions o = opts;
    o.collect_covariance = true;
    const MonteCarloSummary sum = run_monte_carlo(s, phases, o);
    return {sum.covariance[k], sum.norm2_mean[k], sum.norm2_stderr[k]};
}

RateReport rate_report(const Scenario &s, const PhaseConfig &phases, const MonteCarloOptions &opts,
                       const std::string &config_digest)
{
    require_trials(opts.trials, 100, "rate_report");
    MonteCarloOptions o = opts;
    o.collect_covariance = false;
    const MonteCarloSummary sum = run_monte_carlo(s, phases, o);
    const MomentBound mb = moment_bound_from_summary(sum, s.powers, s.noise_power);

    RateReport r;
    for (const auto &u : closed_form_rates(s, phases))
        r.closed_form_rate.push_back(u.rate);
    r.mc_rate = sum.rate_mean;
    r.mc_stderr = sum.rate_stderr;
    r.moment_bound_rate = mb.rate;
    r.moment_bound_flagged = mb.negative_denominator;
    r.trials = sum.trials;
    r.config_digest = config_digest;
    return r;
}

} // namespace dris
