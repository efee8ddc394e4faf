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

#include "dris/channel_model.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace dris
{

double distance(const Point2 &a, const Point2 &b) { return std::hypot(a.x - b.x, a.y - b.y); }

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

std::vector<Point2> default_user_positions(int users)
{
    std::vector<Point2> out;
    if (users < 1)
        return out;
    out.reserve(users);
    for (int k = 0; k < users; ++k)
    {
        const double x = users == 1 ? 50.0 : 50.0 + 20.0 * double(k) / double(users - 1);
        out.push_back({x, 0.0});
    }
    return out;
}

std::vector<double> SystemConfig::user_powers() const
{
    if (!user_powers_w.empty())
        return user_powers_w;
    const int K = user_count();
    return std::vector<double>(K, K > 0 ? total_power_w() / K : 0.0);
}

RisGeometry SystemConfig::ris_geometry(int index) const
{
    RisGeometry g = index == 1 ? ris1 : ris2;
    g.wavelength = wavelength;
    return g;
}

BsCorrelationSpec SystemConfig::bs_correlation() const
{
    return {bs_antennas, rho_magnitude, rho_phase};
}

void SystemConfig::validate() const
{
    auto range = [](bool ok, const std::string &what) {
        if (!ok)
            throw Error(ErrorCode::RangeError, what);
    };
    range(bs_antennas >= 1, "bs_antennas must be >= 1");
    range(user_count() >= 1, "at least one user is required");
    for (const RisGeometry *g : {&ris1, &ris2})
    {
        range(g->n_vertical >= 1 && g->n_horizontal >= 1, "RIS grid dimensions must be >= 1");
        range(g->element_spacing > 0.0, "element spacing must be positive");
        range(g->element_height > 0.0 && g->element_width > 0.0, "element size must be positive");
    }
    range(wavelength > 0.0 && std::isfinite(wavelength), "wavelength must be positive");
    range(path_loss_exponent > 0.0 && std::isfinite(path_loss_exponent), "path-loss exponent must be positive");
    range(std::isfinite(noise_power_dbm) && std::isfinite(total_power_dbm), "power levels must be finite");
    range(kappa >= 0.0 && std::isfinite(kappa), "kappa must be finite and >= 0");
    range(rho_magnitude >= 0.0 && rho_magnitude <= 1.0, "|rho| must lie in [0, 1]");
    range(std::isfinite(rho_phase) && std::isfinite(rbd_phase), "phases must be finite");
    range(trials >= 1, "trials must be >= 1");

    if (!user_powers_w.empty())
    {
        if (static_cast<int>(user_powers_w.size()) != user_count())
            throw Error(ErrorCode::InvalidConfig, "user_powers_w must have one entry per user");
        double sum = 0.0;
        for (double p : user_powers_w)
        {
            range(p >= 0.0 && std::isfinite(p), "user powers must be non-negative");
            sum += p;
        }
        range(sum <= total_power_w() * (1.0 + 1e-12), "sum of user powers exceeds the total power");
    }
    (void)derive_geometry(*this);
}

double path_gain(double distance, double alpha, double area)
{
    if (!(distance > 0.0) || !std::isfinite(distance))
        throw Error(ErrorCode::InvalidDistance, "distance must be positive");
    if (!(area > 0.0))
        throw Error(ErrorCode::InvalidGeometry, "element area must be positive");
    return std::pow(distance, -alpha) * area;
}

DistanceTable derive_geometry(const SystemConfig &config)
{
    auto checked = [](const Point2 &a, const Point2 &b, const char *what) {
        const double d = distance(a, b);
        if (!(d > 0.0))
            throw Error(ErrorCode::CoincidentNodes, std::string(what) + " nodes coincide");
        return d;
    };
    DistanceTable t;
    t.d_B1 = checked(config.bs, config.ris1_position, "BS / RIS 1");
    t.d_B2 = checked(config.bs, config.ris2_position, "BS / RIS 2");
    t.d_12 = checked(config.ris1_position, config.ris2_position, "RIS 1 / RIS 2");
    for (const auto &u : config.users)
    {
        t.d_1k.push_back(checked(config.ris1_position, u, "RIS 1 / user"));
        t.d_2k.push_back(checked(config.ris2_position, u, "RIS 2 / user"));
    }
    return t;
}

PathGains path_gains(const SystemConfig &config)
{
    const DistanceTable d = derive_geometry(config);
    const double alpha = config.path_loss_exponent;
    const double A1 = config.ris1.element_area();
    const double A2 = config.ris2.element_area();

    PathGains g;
    g.B1 = path_gain(d.d_B1, alpha, A1);
    g.B2 = path_gain(d.d_B2, alpha, A2);
    // Both surfaces use the same element area in the reference setup; with
    // differing sizes the product A1 * A2 takes the place of A^2.
    g.G = path_gain(d.d_12, alpha, A1 * A2);
    for (std::size_t k = 0; k < d.d_1k.size(); ++k)
    {
        g.k1.push_back(path_gain(d.d_1k[k], alpha, A1));
        g.k2.push_back(path_gain(d.d_2k[k], alpha, A2));
    }
    return g;
}

ChannelRealization draw_channels(const CorrelationSet &corr, const PathGains &gains, SeededRng &rng)
{
    const Eigen::Index M = corr.antennas(), N1 = corr.n1(), N2 = corr.n2();
    if (gains.k1.size() != gains.k2.size())
        throw Error(ErrorCode::DimensionMismatch, "per-user gain vectors differ in length");

    ChannelRealization r;
    r.H_B1 = std::sqrt(gains.B1) * (corr.sqrt_B * sample_complex_gaussian(M, N1, rng) * corr.sqrt_1);
    r.H_B2 = std::sqrt(gains.B2) * (corr.sqrt_B * sample_complex_gaussian(M, N2, rng) * corr.sqrt_2);
    r.G = std::sqrt(gains.G) * (corr.sqrt_1 * sample_complex_gaussian(N1, N2, rng) * corr.sqrt_2);

    const std::size_t K = gains.k1.size();
    r.q1.reserve(K);
    r.q2.reserve(K);
    for (std::size_t k = 0; k < K; ++k)
    {
        r.q1.push_back(std::sqrt(gains.k1[k]) * (corr.sqrt_1 * sample_complex_gaussian_vector(N1, rng)));
        r.q2.push_back(std::sqrt(gains.k2[k]) * (corr.sqrt_2 * sample_complex_gaussian_vector(N2, rng)));
    }
    return r;
}

namespace
{

CVector phase_diagonal(const std::vector<double> &theta, const std::vector<double> &noise, Eigen::Index n)
{
    if (static_cast<Eigen::Index>(theta.size()) != n || static_cast<Eigen::Index>(noise.size()) != n)
        throw Error(ErrorCode::DimensionMismatch, "phase / noise vector length does not match the surface");
    CVector d(n);
    for (Eigen::Index i = 0; i < n; ++i)
        d(i) = std::polar(1.0, theta[i] + noise[i]);
    return d;
}

void check_user(const ChannelRealization &real, int k)
{
    if (k < 0 || k >= static_cast<int>(real.q1.size()) || real.q1.size() != real.q2.size())
        throw Error(ErrorCode::DimensionMismatch, "user index out of range");
}

} // namespace

CVector effective_channel(const ChannelRealization &real, const PhaseConfig &phases,
                          const std::vector<double> &noise_1, const std::vector<double> &noise_2, int k)
{
    check_user(real, k);
    const CVector d1 = phase_diagonal(phases.theta_1, noise_1, real.G.rows());
    const CVector d2 = phase_diagonal(phases.theta_2, noise_2, real.G.cols());

    const CVector x2 = d2.cwiseProduct(real.q2[k]);
    const CVector at_ris1 = d1.cwiseProduct(real.G * x2 + real.q1[k]);
    return real.H_B1 * at_ris1 + real.H_B2 * x2;
}

ChannelTerms effective_channel_terms(const ChannelRealization &real, const PhaseConfig &phases,
                                     const std::vector<double> &noise_1,
                                     const std::vector<double> &noise_2, int k)
{
    check_user(real, k);
    const CVector d1 = phase_diagonal(phases.theta_1, noise_1, real.G.rows());
    const CVector d2 = phase_diagonal(phases.theta_2, noise_2, real.G.cols());

    const CVector x2 = d2.cwiseProduct(real.q2[k]);
    ChannelTerms t;
    t.double_reflection = real.H_B1 * d1.cwiseProduct(real.G * x2);
    t.via_ris1 = real.H_B1 * d1.cwiseProduct(real.q1[k]);
    t.via_ris2 = real.H_B2 * x2;
    return t;
}

Scenario make_scenario(const SystemConfig &config)
{
    config.validate();
    Scenario s;
    s.config = config;
    s.corr = make_correlation_set(config.bs_correlation(), config.ris_geometry(1), config.ris_geometry(2));
    s.gains = path_gains(config);
    s.noise = PhaseNoiseModel(config.kappa);
    s.powers = config.user_powers();
    s.noise_power = config.noise_power_w();
    return s;
}

} // namespace dris
