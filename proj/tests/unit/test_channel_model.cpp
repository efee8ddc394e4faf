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

#include "catch_amalgamated.hpp"

#include <cmath>

#include "dris/analytics.hpp"
#include "dris/channel_model.hpp"
#include "dris/rbd.hpp"

using namespace dris;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

SystemConfig small_config()
{
    SystemConfig c;
    c.bs_antennas = 4;
    c.ris1.n_vertical = c.ris1.n_horizontal = 3;
    c.ris2.n_vertical = 2;
    c.ris2.n_horizontal = 4;
    c.rho_magnitude = 0.6;
    c.rho_phase = 0.4;
    c.kappa = 2.0;
    return c;
}

// Unit-scale gains keep sample statistics readable; they do not change relative errors.
PathGains unit_gains(int users)
{
    return {1.0, 0.5, 0.25, std::vector<double>(users, 0.8), std::vector<double>(users, 1.2)};
}

} // namespace

TEST_CASE("dbm_to_watts")
{
    CHECK_THAT(dbm_to_watts(30.0), WithinRel(1.0, 1e-15));
    CHECK_THAT(dbm_to_watts(0.0), WithinRel(1e-3, 1e-15));
    CHECK_THAT(dbm_to_watts(-94.0), WithinRel(3.981071705534969e-13, 1e-12));
}

TEST_CASE("path_gain")
{
    CHECK_THAT(path_gain(1.0, 2.7, 6.25e-4), WithinRel(6.25e-4, 1e-15));
    CHECK_THAT(path_gain(60.0, 2.7, 6.25e-4 * 6.25e-4), WithinRel(6.176631026439091e-12, 1e-12));
    CHECK_THAT(path_gain(20.0, 2.7, 1.0) / path_gain(10.0, 2.7, 1.0), WithinRel(std::pow(2.0, -2.7), 1e-14));
    CHECK_THROWS_AS(path_gain(0.0, 2.7, 1.0), Error);
    CHECK_THROWS_AS(path_gain(-3.0, 2.7, 1.0), Error);
}

TEST_CASE("derive_geometry on the reference layout")
{
    const SystemConfig c;
    const DistanceTable d = derive_geometry(c);
    CHECK_THAT(d.d_B1, WithinAbs(15.0, 1e-12));
    CHECK_THAT(d.d_12, WithinAbs(60.0, 1e-12));
    CHECK_THAT(d.d_B2, WithinAbs(std::hypot(60.0, 15.0), 1e-12));
    REQUIRE(c.users.size() == 4);
    const double xs[] = {50.0, 56.666666666666664, 63.333333333333336, 70.0};
    for (int k = 0; k < 4; ++k)
    {
        CHECK_THAT(c.users[k].x, WithinAbs(xs[k], 1e-12));
        CHECK(c.users[k].y == 0.0);
        CHECK_THAT(d.d_1k[k], WithinAbs(std::hypot(xs[k], 15.0), 1e-12));
        CHECK_THAT(d.d_2k[k], WithinAbs(std::hypot(xs[k] - 60.0, 15.0), 1e-12));
    }

    SystemConfig clash = c;
    clash.ris2_position = clash.ris1_position;
    CHECK_THROWS_MATCHES(derive_geometry(clash), Error,
                         Catch::Matchers::Predicate<Error>([](const Error &e) { return e.code() == ErrorCode::CoincidentNodes; }));
}

TEST_CASE("path_gains follow the per-link conventions")
{
    const SystemConfig c;
    const PathGains g = path_gains(c);
    const double A = 0.025 * 0.025;
    CHECK_THAT(g.B1, WithinRel(std::pow(15.0, -2.7) * A, 1e-14));
    CHECK_THAT(g.G, WithinRel(std::pow(60.0, -2.7) * A * A, 1e-14));
    CHECK_THAT(g.k2[0], WithinRel(std::pow(std::hypot(10.0, 15.0), -2.7) * A, 1e-14));
}

TEST_CASE("SystemConfig validation")
{
    SystemConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.user_powers().size() == 4);
    CHECK_THAT(c.user_powers()[2], WithinRel(0.025, 1e-12)); // 20 dBm split 4 ways

    SystemConfig over = c;
    over.user_powers_w = {0.05, 0.05, 0.05, 0.05};
    CHECK_THROWS_AS(over.validate(), Error);

    SystemConfig none = c;
    none.users.clear();
    CHECK_THROWS_AS(none.validate(), Error);

    SystemConfig rho = c;
    rho.rho_magnitude = 1.2;
    CHECK_THROWS_AS(rho.validate(), Error);
}

TEST_CASE("draw_channels - second-order statistics")
{
    const SystemConfig c = small_config();
    const Scenario s = make_scenario(c);
    const PathGains g = unit_gains(2);
    const int M = s.antennas(), N1 = s.corr.n1(), N2 = s.corr.n2();

    CMatrix q_cov = CMatrix::Zero(N1, N1);
    CMatrix hh = CMatrix::Zero(M, M);
    CMatrix gg = CMatrix::Zero(N1, N1);
    const int draws = 10000;
    for (int t = 0; t < draws; ++t)
    {
        SeededRng rng(100, t);
        const ChannelRealization r = draw_channels(s.corr, g, rng);
        REQUIRE(r.H_B1.rows() == M);
        REQUIRE(r.H_B1.cols() == N1);
        REQUIRE(r.H_B2.cols() == N2);
        REQUIRE(r.G.rows() == N1);
        REQUIRE(r.G.cols() == N2);
        REQUIRE(r.q1.size() == 2);
        q_cov += r.q1[1] * r.q1[1].adjoint();
        hh += r.H_B1 * r.H_B1.adjoint();
        gg += r.G * r.G.adjoint();
    }
    q_cov /= draws;
    hh /= draws;
    gg /= draws;
    CHECK(relative_frobenius_error(q_cov, g.k1[1] * s.corr.R_1) <= 0.1);
    CHECK(relative_frobenius_error(hh, g.B1 * N1 * s.corr.R_B) <= 0.1);
    // E{G G^H} = beta_G tr(R_2) R_1
    CHECK(relative_frobenius_error(gg, g.G * N2 * s.corr.R_1) <= 0.1);
}

TEST_CASE("draw_channels - uncorrelated entries have variance beta")
{
    const CorrelationSet corr =
        make_correlation_set(CMatrix::Identity(3, 3), CMatrix::Identity(5, 5), CMatrix::Identity(4, 4));
    const PathGains g{2.0, 0.5, 1.0, {1.0}, {1.0}};
    double p1 = 0.0, p2 = 0.0;
    const int draws = 4000;
    for (int t = 0; t < draws; ++t)
    {
        SeededRng rng(8, t);
        const ChannelRealization r = draw_channels(corr, g, rng);
        p1 += r.H_B1.cwiseAbs2().mean();
        p2 += r.H_B2.cwiseAbs2().mean();
    }
    // Averages over 15 / 12 entries per draw; per-entry |h|^2 has std = beta.
    CHECK_THAT(p1 / draws, WithinRel(2.0, 3.0 / std::sqrt(draws * 15.0)));
    CHECK_THAT(p2 / draws, WithinRel(0.5, 3.0 / std::sqrt(draws * 12.0)));
}

TEST_CASE("effective_channel - noiseless zero phases reduce to plain products")
{
    const Scenario s = make_scenario(small_config());
    SeededRng rng(1, 1);
    const ChannelRealization r = draw_channels(s.corr, unit_gains(2), rng);
    const PhaseConfig zero = optimal_phase_config(s.corr.n1(), s.corr.n2(), 0.0);
    const std::vector<double> n1(s.corr.n1(), 0.0), n2(s.corr.n2(), 0.0);

    for (int k = 0; k < 2; ++k)
    {
        const CVector h = effective_channel(r, zero, n1, n2, k);
        const CVector expected = r.H_B1 * r.G * r.q2[k] + r.H_B1 * r.q1[k] + r.H_B2 * r.q2[k];
        CHECK((h - expected).norm() <= 1e-12 * expected.norm());
    }

    // Phase shifts and noise enter as diag(exp(j(theta + noise))).
    const PhaseConfig ph{std::vector<double>(s.corr.n1(), 0.3), std::vector<double>(s.corr.n2(), -1.1)};
    std::vector<double> m1(s.corr.n1()), m2(s.corr.n2());
    for (std::size_t i = 0; i < m1.size(); ++i)
        m1[i] = 0.1 * double(i);
    for (std::size_t i = 0; i < m2.size(); ++i)
        m2[i] = -0.05 * double(i);
    CVector d1(m1.size()), d2(m2.size());
    for (std::size_t i = 0; i < m1.size(); ++i)
        d1(i) = std::polar(1.0, 0.3 + m1[i]);
    for (std::size_t i = 0; i < m2.size(); ++i)
        d2(i) = std::polar(1.0, -1.1 + m2[i]);
    const CMatrix T1 = d1.asDiagonal(), T2 = d2.asDiagonal();
    const CVector expected = r.H_B1 * T1 * r.G * T2 * r.q2[0] + r.H_B1 * T1 * r.q1[0] + r.H_B2 * T2 * r.q2[0];
    CHECK((effective_channel(r, ph, m1, m2, 0) - expected).norm() <= 1e-12 * expected.norm());

    CHECK_THROWS_AS(effective_channel(r, zero, n1, std::vector<double>(3, 0.0), 0), Error);
    CHECK_THROWS_AS(effective_channel(r, zero, n1, n2, 5), Error);
}

TEST_CASE("effective_channel - linear in q2k for the terms that contain it")
{
    const Scenario s = make_scenario(small_config());
    SeededRng rng(2, 2);
    ChannelRealization r = draw_channels(s.corr, unit_gains(1), rng);
    const PhaseConfig ph = optimal_phase_config(s.corr.n1(), s.corr.n2(), 0.7);
    const std::vector<double> n1(s.corr.n1(), 0.2), n2(s.corr.n2(), -0.4);

    const ChannelTerms before = effective_channel_terms(r, ph, n1, n2, 0);
    const cdouble scale(1.5, -0.5);
    r.q2[0] *= scale;
    const ChannelTerms after = effective_channel_terms(r, ph, n1, n2, 0);
    CHECK((after.double_reflection - scale * before.double_reflection).norm() <= 1e-12 * after.double_reflection.norm());
    CHECK((after.via_ris2 - scale * before.via_ris2).norm() <= 1e-12 * after.via_ris2.norm());
    CHECK((after.via_ris1 - before.via_ris1).norm() == 0.0);

    const CVector h = effective_channel(r, ph, n1, n2, 0);
    CHECK((h - (after.double_reflection + after.via_ris1 + after.via_ris2)).norm() <= 1e-12 * h.norm());
}

TEST_CASE("effective_channel - transpose discipline h^T conj(h) = ||h||^2")
{
    const Scenario s = make_scenario(small_config());
    SeededRng rng(3, 3);
    const ChannelRealization r = draw_channels(s.corr, unit_gains(2), rng);
    const auto n1 = sample_von_mises(s.noise, s.corr.n1(), rng);
    const auto n2 = sample_von_mises(s.noise, s.corr.n2(), rng);
    const CVector h = effective_channel(r, optimal_phase_config(s.corr.n1(), s.corr.n2()), n1, n2, 1);
    const cdouble v = (h.transpose() * h.conjugate())(0, 0);
    CHECK_THAT(v.real(), WithinRel(h.squaredNorm(), 1e-12));
    CHECK(std::abs(v.imag()) <= 1e-12 * h.squaredNorm());
}

TEST_CASE("effective_channel - covariance matches eta_k R_B and cross terms vanish")
{
    SystemConfig c = small_config();
    c.ris1.n_vertical = c.ris1.n_horizontal = 4;
    c.ris2.n_vertical = c.ris2.n_horizontal = 4;
    const Scenario s = make_scenario(c);
    Scenario su = s;
    su.gains = unit_gains(c.user_count());
    SeededRng prng(77, 0);
    const PhaseConfig ph = random_phase_config(s.corr.n1(), s.corr.n2(), prng);
    const int M = s.antennas();
    const int draws = 10000;

    CMatrix cov = CMatrix::Zero(M, M);
    // For each pair of terms: running sums of entries of a b^H and of their squares.
    std::array<CMatrix, 3> cross_sum, cross_sq;
    for (auto &m : cross_sum)
        m = CMatrix::Zero(M, M);
    for (auto &m : cross_sq)
        m = CMatrix::Zero(M, M);

    for (int t = 0; t < draws; ++t)
    {
        SeededRng rng(55, t);
        const ChannelRealization r = draw_channels(su.corr, su.gains, rng);
        const auto n1 = sample_von_mises(s.noise, s.corr.n1(), rng);
        const auto n2 = sample_von_mises(s.noise, s.corr.n2(), rng);
        const ChannelTerms terms = effective_channel_terms(r, ph, n1, n2, 0);
        const CVector h = terms.double_reflection + terms.via_ris1 + terms.via_ris2;
        cov += h * h.adjoint();

        const std::array<CMatrix, 3> x = {terms.double_reflection * terms.via_ris1.adjoint(),
                                          terms.double_reflection * terms.via_ris2.adjoint(),
                                          terms.via_ris1 * terms.via_ris2.adjoint()};
        for (int p = 0; p < 3; ++p)
        {
            cross_sum[p] += x[p];
            cross_sq[p] += CMatrix(x[p].real().cwiseAbs2().cast<cdouble>() +
                                   cdouble(0.0, 1.0) * x[p].imag().cwiseAbs2().cast<cdouble>());
        }
    }
    cov /= draws;
    CHECK(relative_frobenius_error(cov, channel_covariance(su, ph, 0)) <= 0.1);

    for (int p = 0; p < 3; ++p)
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j)
            {
                const cdouble mean = cross_sum[p](i, j) / double(draws);
                const double var_re = cross_sq[p](i, j).real() / draws - mean.real() * mean.real();
                const double var_im = cross_sq[p](i, j).imag() / draws - mean.imag() * mean.imag();
                CHECK(std::abs(mean.real()) <= 4.0 * std::sqrt(var_re / draws));
                CHECK(std::abs(mean.imag()) <= 4.0 * std::sqrt(var_im / draws));
            }
}
