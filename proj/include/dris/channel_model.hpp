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

#ifndef DRIS_CHANNEL_MODEL_HPP
#define DRIS_CHANNEL_MODEL_HPP

#include <cstdint>
#include <vector>

#include "dris/correlation.hpp"
#include "dris/stochastic.hpp"

namespace dris
{

struct Point2
{
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point2 &a, const Point2 &b);

double dbm_to_watts(double dbm);

// Users evenly spaced on the segment (50, 0) -> (70, 0). A single user sits at (50, 0).
std::vector<Point2> default_user_positions(int users);

// Full scenario. The wavelength stored here is authoritative; the wavelength
// fields inside ris1 / ris2 are overwritten by ris_geometry().
struct SystemConfig
{
    int bs_antennas = 64;
    RisGeometry ris1{10, 10, 0.025, 0.1, 0.025, 0.025};
    RisGeometry ris2{10, 10, 0.025, 0.1, 0.025, 0.025};
    Point2 bs{0.0, 0.0};
    Point2 ris1_position{0.0, 15.0};
    Point2 ris2_position{60.0, 15.0};
    std::vector<Point2> users = default_user_positions(4);
    double path_loss_exponent = 2.7;
    double wavelength = 0.1;
    double noise_power_dbm = -94.0;
    double total_power_dbm = 20.0;
    std::vector<double> user_powers_w; // empty: equal split of the total power
    double kappa = 4.0;
    double rho_magnitude = 0.8;
    double rho_phase = 0.0;
    double rbd_phase = 0.0; // common phase c of the equal-phase design
    std::size_t trials = 10000;
    std::uint64_t seed = 1;

    int user_count() const { return static_cast<int>(users.size()); }
    double noise_power_w() const { return dbm_to_watts(noise_power_dbm); }
    double total_power_w() const { return dbm_to_watts(total_power_dbm); }
    std::vector<double> user_powers() const;
    RisGeometry ris_geometry(int index) const;
    BsCorrelationSpec bs_correlation() const;

    // Throws InvalidConfig / RangeError on inconsistent or out-of-domain values.
    void validate() const;
};

// d^-alpha * area. The inter-surface link passes area = A^2.
double path_gain(double distance, double alpha, double area);

struct DistanceTable
{
    double d_B1 = 0.0;
    double d_B2 = 0.0;
    double d_12 = 0.0;
    std::vector<double> d_1k;
    std::vector<double> d_2k;
};

DistanceTable derive_geometry(const SystemConfig &config);

// Large-scale gains of every link. Fields may be zeroed to isolate terms.
struct PathGains
{
    double B1 = 0.0;
    double B2 = 0.0;
    double G = 0.0;
    std::vector<double> k1;
    std::vector<double> k2;
};

PathGains path_gains(const SystemConfig &config);

struct ChannelRealization
{
    CMatrix H_B1; // M x N1
    CMatrix H_B2; // M x N2
    CMatrix G;    // N1 x N2
    std::vector<CVector> q1; // per user, N1
    std::vector<CVector> q2; // per user, N2
};

struct PhaseConfig
{
    std::vector<double> theta_1;
    std::vector<double> theta_2;
};

// One draw of every small-scale link. Draw order: H_B1, H_B2, G, then
// (q1k, q2k) for each user.
ChannelRealization draw_channels(const CorrelationSet &corr, const PathGains &gains, SeededRng &rng);

// Effective channel of user k:
//   h = H_B1 D1 G D2 q2k + H_B1 D1 q1k + H_B2 D2 q2k,  Di = diag(exp(j(noise_i + theta_i)))
CVector effective_channel(const ChannelRealization &real, const PhaseConfig &phases,
                          const std::vector<double> &noise_1, const std::vector<double> &noise_2, int k);

// The three additive contributions to h_k, kept separate.
struct ChannelTerms
{
    CVector double_reflection;
    CVector via_ris1;
    CVector via_ris2;
};

ChannelTerms effective_channel_terms(const ChannelRealization &real, const PhaseConfig &phases,
                                     const std::vector<double> &noise_1,
                                     const std::vector<double> &noise_2, int k);

// Everything a simulation or closed-form evaluation needs, derived once from a config.
struct Scenario
{
    SystemConfig config;
    CorrelationSet corr;
    PathGains gains;
    PhaseNoiseModel noise{0.0};
    std::vector<double> powers;
    double noise_power = 0.0;

    int antennas() const { return corr.antennas(); }
    int users() const { return static_cast<int>(powers.size()); }
};

Scenario make_scenario(const SystemConfig &config);

} // namespace dris

#endif
