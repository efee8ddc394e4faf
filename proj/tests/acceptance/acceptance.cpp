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

// Acceptance criteria, one PASS/FAIL line each. Exit status is nonzero if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dris/experiments.hpp"
#include "dris/rbd.hpp"

using namespace dris;

namespace
{

int failures = 0;

void report(int id, const char *name, bool ok, const std::string &detail)
{
    std::printf("%s  [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// Reference geometry at desk scale: M = 16, two 8 x 8 surfaces at lambda/4.
SystemConfig desk()
{
    SystemConfig c;
    c.bs_antennas = 16;
    c.ris1.n_vertical = c.ris1.n_horizontal = 8;
    c.ris2 = c.ris1;
    c.kappa = 4.0;
    c.rho_magnitude = 0.8;
    c.total_power_dbm = 20.0;
    c.seed = 1;
    return c;
}

MonteCarloOptions mc(std::size_t trials, std::uint64_t seed, bool cov)
{
    MonteCarloOptions o;
    o.trials = trials;
    o.seed = seed;
    o.threads = 1;
    o.collect_covariance = cov;
    return o;
}

std::vector<double> closed_rates(const SystemConfig &c)
{
    const Scenario s = make_scenario(c);
    std::vector<double> r;
    for (const auto &u : closed_form_rates(s, optimal_phase_config(s.corr.n1(), s.corr.n2(), c.rbd_phase)))
        r.push_back(u.rate);
    return r;
}

// Max covariance error over users for a scenario.
double covariance_error(const Scenario &s, const PhaseConfig &p, const MonteCarloSummary &sum)
{
    double worst = 0.0;
    for (int k = 0; k < s.users(); ++k)
        worst = std::max(worst, relative_frobenius_error(sum.covariance[k], channel_covariance(s, p, k)));
    return worst;
}

void covariance_and_bounds()
{
    const Scenario s = make_scenario(desk());
    const PhaseConfig p = optimal_phase_config(64, 64);

    const auto t0 = std::chrono::steady_clock::now();
    const MonteCarloSummary sum = run_monte_carlo(s, p, mc(10000, 1, true));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double full = covariance_error(s, p, sum);

    Scenario dbl = s;
    std::fill(dbl.gains.k1.begin(), dbl.gains.k1.end(), 0.0);
    dbl.gains.B2 = 0.0;
    const double dbl_err = covariance_error(dbl, p, run_monte_carlo(dbl, p, mc(10000, 2, true)));

    Scenario single = s;
    single.gains.G = 0.0;
    const double single_err = covariance_error(single, p, run_monte_carlo(single, p, mc(10000, 3, true)));

    report(1, "covariance oracle",
           full <= 0.10 && dbl_err <= 0.10 && single_err <= 0.10 && seconds <= 120.0,
           fmt("max rel. Frobenius error full %.4f, double-only %.4f, single-only %.4f (limit 0.10); ", full, dbl_err,
               single_err) +
               fmt("10^4 trials in %.1f s single-threaded (limit 120 s)", seconds));

    const auto closed = closed_form_rates(s, p);
    const MomentBound mb = moment_bound_from_summary(sum, s.powers, s.noise_power);
    double worst_gap = 0.0, worst_margin = INFINITY;
    for (int k = 0; k < s.users(); ++k)
    {
        const double gap =
            mb.negative_denominator[k] ? INFINITY : std::abs(mb.sinr[k] - closed[k].sinr) / closed[k].sinr;
        worst_gap = std::max(worst_gap, gap);
        worst_margin = std::min(worst_margin, (sum.rate_mean[k] - closed[k].rate) / sum.rate_stderr[k]);
    }
    report(2, "bound consistency", worst_gap <= 0.05 && worst_margin >= -2.0,
           fmt("max relative gap moment-estimated vs closed-form SINR bound %.4f (limit 0.05); ", worst_gap) +
               fmt("min (ergodic - closed form) / SE %.2f (limit -2)", worst_margin));
}

void rbd_optimality()
{
    SystemConfig c = desk();
    c.ris1.n_vertical = c.ris1.n_horizontal = 6;
    c.ris2 = c.ris1;
    const RbdCheckReport r = rbd_check(make_scenario(c), 1000, 1);
    report(3, "equal-phase optimality", r.passed && r.samples == 1000,
           fmt("max v1 - tr(R1^2) %.3g, max v2 - tr(R2^2) %.3g, ", r.max_v1_excess, r.max_v2_excess) +
               fmt("best random sum rate %.6f vs equal-phase %.6f, constant-c deviation %.3g", r.max_random_sum_rate,
                   r.optimal_sum_rate, r.max_constant_deviation));
}

// True when every user's rate moves in the required direction along the grid.
template <typename Apply>
bool ordered(const std::vector<double> &grid, Apply apply, bool strict, bool increasing)
{
    std::vector<double> prev;
    for (double v : grid)
    {
        SystemConfig c = desk();
        apply(c, v);
        const auto r = closed_rates(c);
        for (std::size_t k = 0; k < prev.size(); ++k)
        {
            const double d = increasing ? r[k] - prev[k] : prev[k] - r[k];
            if (strict ? !(d > 0.0) : !(d >= 0.0))
                return false;
        }
        prev = r;
    }
    return true;
}

void monotonicity()
{
    const bool a = ordered({0, 5, 10, 15, 20, 25, 30}, [](SystemConfig &c, double v) { c.total_power_dbm = v; },
                           true, true);
    const bool b = ordered({0, 0.2, 0.4, 0.6, 0.8, 0.9}, [](SystemConfig &c, double v) { c.rho_magnitude = v; },
                           true, false);
    const bool k = ordered({0, 1, 2, 4, 10}, [](SystemConfig &c, double v) { c.kappa = v; }, false, true);
    const bool e = ordered({0.05, 0.025, 0.0125},
                           [](SystemConfig &c, double v) { c.ris1.element_spacing = c.ris2.element_spacing = v; },
                           false, true);
    const bool m = ordered({16, 64}, [](SystemConfig &c, double v) { c.bs_antennas = static_cast<int>(v); }, true,
                           true);
    std::string detail = std::string("(a) P_t ") + (a ? "ok" : "violated") + ", (b) |rho| " + (b ? "ok" : "violated") +
                         ", (c) kappa " + (k ? "ok" : "violated") + ", (d) spacing " + (e ? "ok" : "violated") +
                         ", (e) M " + (m ? "ok" : "violated");
    report(4, "monotonicity panel", a && b && k && e && m, detail);
}

void uniform_phase_noise()
{
    SystemConfig c = desk();
    c.kappa = 0.0;
    const Scenario s = make_scenario(c);
    SeededRng rng(5, 0);
    const PhaseConfig p1 = optimal_phase_config(64, 64), p2 = random_phase_config(64, 64, rng);
    const auto r1 = closed_form_rates(s, p1), r2 = closed_form_rates(s, p2);
    const MonteCarloSummary m1 = run_monte_carlo(s, p1, mc(10000, 11, false));
    const MonteCarloSummary m2 = run_monte_carlo(s, p2, mc(10000, 12, false));
    double closed_diff = 0.0, worst_z = 0.0;
    for (int k = 0; k < s.users(); ++k)
    {
        closed_diff = std::max(closed_diff, std::abs(r1[k].rate - r2[k].rate));
        worst_z = std::max(worst_z, std::abs(m1.rate_mean[k] - m2.rate_mean[k]) /
                                        std::hypot(m1.rate_stderr[k], m2.rate_stderr[k]));
    }
    report(5, "kappa = 0 design invariance", closed_diff <= 1e-12 && worst_z <= 3.0,
           fmt("closed-form max difference %.3g (limit 1e-12); ergodic max difference %.2f combined SE (limit 3)",
               closed_diff, worst_z));
}

void unit_limits()
{
    bool ok = true;
    std::string detail;

    const bool cf_zero = vm_cf(0.0) == 0.0;
    bool cf_monotone = true;
    double prev = 0.0;
    for (double kappa = 0.05; kappa <= 200.0; kappa *= 1.3)
    {
        const double v = vm_cf(kappa);
        cf_monotone = cf_monotone && v > prev && v < 1.0;
        prev = v;
    }
    ok = ok && cf_zero && cf_monotone;
    detail += std::string("vm_cf(0)=0 ") + (cf_zero ? "ok" : "violated") + ", vm_cf monotone " +
              (cf_monotone ? "ok" : "violated");

    SystemConfig loud = desk();
    loud.noise_power_dbm = 80.0;
    const Scenario s = make_scenario(loud);
    const PhaseConfig p = optimal_phase_config(64, 64);
    double max_closed = 0.0;
    for (const auto &u : closed_form_rates(s, p))
        max_closed = std::max(max_closed, u.rate);
    const MonteCarloSummary sum = run_monte_carlo(s, p, mc(500, 1, false));
    const double max_mc = *std::max_element(sum.rate_mean.begin(), sum.rate_mean.end());
    ok = ok && max_closed <= 1e-9 && max_mc <= 1e-9;
    detail += fmt(", large-noise rates closed %.2g / MC %.2g", max_closed, max_mc);

    SystemConfig rotated = desk();
    rotated.rho_phase = std::numbers::pi / 4.0;
    const auto a = closed_rates(desk()), b = closed_rates(rotated);
    double phase_diff = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        phase_diff = std::max(phase_diff, std::abs(a[k] - b[k]));
    ok = ok && phase_diff <= 1e-9;
    detail += fmt(", rho-phase rate difference %.2g", phase_diff);

    SeededRng rng(17, 0);
    double transpose_err = 0.0;
    for (int i = 0; i < 20; ++i)
    {
        const CVector h = sample_complex_gaussian_vector(64, rng);
        const cdouble g = h.transpose() * h.conjugate();
        transpose_err = std::max(transpose_err, std::abs(g - h.squaredNorm()) / h.squaredNorm());
    }
    ok = ok && transpose_err <= 1e-9;
    detail += fmt(", |h^T conj(h) - ||h||^2| / ||h||^2 %.2g", transpose_err);

    report(6, "unit and limit checks", ok, detail);
}

void determinism()
{
    SystemConfig base = desk();
    base.trials = 1000;
    const SweepSpec spec{SweepParam::TotalPowerDbm, {0.0, 10.0, 20.0}, base};
    auto csv = [&](unsigned threads) {
        std::ostringstream out;
        write_csv(out, run_sweep(spec, SweepMode::Both, threads));
        return out.str();
    };
    const std::string first = csv(1), second = csv(1), four = csv(4);
    report(7, "determinism", first == second && first == four,
           std::string("repeat run ") + (first == second ? "identical" : "differs") + ", threads 1 vs 4 " +
               (first == four ? "identical" : "differs") + fmt(" (%.0f bytes)", double(first.size())));
}

} // namespace

int main()
{
    try
    {
        covariance_and_bounds();
        rbd_optimality();
        monotonicity();
        uniform_phase_noise();
        unit_limits();
        determinism();
    }
    catch (const std::exception &e)
    {
        std::printf("FAIL  acceptance aborted: %s\n", e.what());
        return 2;
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
