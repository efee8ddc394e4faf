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

#include "dris/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "dris/rbd.hpp"

namespace dris
{

SweepParam parse_sweep_param(const std::string &name)
{
    if (name == "total_power_dbm")
        return SweepParam::TotalPowerDbm;
    if (name == "rho_magnitude")
        return SweepParam::RhoMagnitude;
    if (name == "kappa")
        return SweepParam::Kappa;
    if (name == "M" || name == "bs_antennas")
        return SweepParam::BsAntennas;
    if (name == "element_spacing" || name == "element_spacing_m")
        return SweepParam::ElementSpacing;
    throw Error(ErrorCode::RangeError, "unknown sweep parameter '" + name + "'");
}

std::string to_string(SweepParam p)
{
    switch (p)
    {
    case SweepParam::TotalPowerDbm: return "total_power_dbm";
    case SweepParam::RhoMagnitude: return "rho_magnitude";
    case SweepParam::Kappa: return "kappa";
    case SweepParam::BsAntennas: return "M";
    case SweepParam::ElementSpacing: return "element_spacing";
    }
    return "unknown";
}

SweepMode parse_sweep_mode(const std::string &name)
{
    if (name == "closed")
        return SweepMode::ClosedForm;
    if (name == "mc")
        return SweepMode::MonteCarlo;
    if (name == "both")
        return SweepMode::Both;
    throw Error(ErrorCode::RangeError, "unknown sweep mode '" + name + "' (closed|mc|both)");
}

SystemConfig apply_sweep_value(const SystemConfig &base, SweepParam param, double value)
{
    if (!std::isfinite(value))
        throw Error(ErrorCode::RangeError, "sweep value must be finite");
    SystemConfig c = base;
    switch (param)
    {
    case SweepParam::TotalPowerDbm:
        c.total_power_dbm = value;
        if (!c.user_powers_w.empty())
            throw Error(ErrorCode::RangeError, "total power sweep requires equal power allocation");
        break;
    case SweepParam::RhoMagnitude: c.rho_magnitude = value; break;
    case SweepParam::Kappa: c.kappa = value; break;
    case SweepParam::BsAntennas:
        if (value < 1.0 || value != std::floor(value))
            throw Error(ErrorCode::RangeError, "M must be a positive integer");
        c.bs_antennas = static_cast<int>(value);
        break;
    case SweepParam::ElementSpacing:
        c.ris1.element_spacing = value;
        c.ris2.element_spacing = value;
        break;
    }
    c.validate();
    return c;
}

namespace
{

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn)
{
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < count; i = next++)
            fn(i);
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1)
    {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto &t : pool)
        t.join();
}

std::vector<SweepRow> evaluate_point(const SystemConfig &config, double value, SweepMode mode, unsigned mc_threads)
{
    const Scenario s = make_scenario(config);
    const PhaseConfig phases = optimal_phase_config(s.corr.n1(), s.corr.n2(), config.rbd_phase);
    const DesignEvaluation design = evaluate_design(s, phases);
    const std::string digest = config_digest(config);

    std::vector<SweepRow> rows(s.users());
    for (int k = 0; k < s.users(); ++k)
    {
        rows[k].sweep_value = value;
        rows[k].user_index = k + 1;
        rows[k].rate_closed_form = design.rate[k];
        rows[k].eta_k = design.eta[k];
        rows[k].v1 = design.v1;
        rows[k].v2 = design.v2;
        rows[k].config_digest = digest;
    }
    if (mode == SweepMode::ClosedForm)
        return rows;

    MonteCarloOptions opts;
    opts.trials = config.trials;
    opts.seed = config.seed;
    opts.threads = mc_threads;
    const MonteCarloSummary sum = run_monte_carlo(s, phases, opts);
    const MomentBound mb = moment_bound_from_summary(sum, s.powers, s.noise_power);
    for (int k = 0; k < s.users(); ++k)
    {
        rows[k].rate_mc = sum.rate_mean[k];
        rows[k].rate_mc_stderr = sum.rate_stderr[k];
        if (mode == SweepMode::Both && !mb.negative_denominator[k])
            rows[k].rate_mc_bound = mb.rate[k];
    }
    return rows;
}

void append_number(std::string &line, double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    line += buf;
}

void append_optional(std::string &line, const std::optional<double> &v)
{
    if (v)
        append_number(line, *v);
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepSpec &spec, SweepMode mode, unsigned threads)
{
    if (spec.grid.empty())
        throw Error(ErrorCode::RangeError, "sweep grid is empty");
    std::vector<SystemConfig> configs;
    for (double v : spec.grid)
        configs.push_back(apply_sweep_value(spec.base, spec.param, v));

    // Spread grid points over the workers; a single point gets all of them.
    const unsigned outer = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
    const unsigned inner = configs.size() == 1 ? std::max(1u, threads) : 1u;

    std::vector<std::vector<SweepRow>> per_point(configs.size());
    parallel_for(configs.size(), outer,
                 [&](std::size_t i) { per_point[i] = evaluate_point(configs[i], spec.grid[i], mode, inner); });

    std::vector<SweepRow> rows;
    for (auto &p : per_point)
        rows.insert(rows.end(), p.begin(), p.end());
    return rows;
}

void write_csv(std::ostream &out, const std::vector<SweepRow> &rows)
{
    out << csv_header << '\n';
    for (const auto &r : rows)
    {
        std::string line;
        append_number(line, r.sweep_value);
        line += ',' + std::to_string(r.user_index) + ',';
        append_number(line, r.rate_closed_form);
        line += ',';
        append_optional(line, r.rate_mc);
        line += ',';
        append_optional(line, r.rate_mc_stderr);
        line += ',';
        append_number(line, r.eta_k);
        line += ',';
        append_number(line, r.v1);
        line += ',';
        append_number(line, r.v2);
        line += ',' + r.config_digest + ',';
        append_optional(line, r.rate_mc_bound);
        out << line << '\n';
    }
}

bool ValidationReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck &c) { return c.passed; });
}

ValidationReport validate(const SystemConfig &config, std::size_t trials, unsigned threads)
{
    ValidationReport report;
    const Scenario s = make_scenario(config);
    const PhaseConfig phases = optimal_phase_config(s.corr.n1(), s.corr.n2(), config.rbd_phase);
    const auto closed = closed_form_rates(s, phases);

    MonteCarloOptions opts;
    opts.trials = trials;
    opts.seed = config.seed;
    opts.threads = threads;
    opts.collect_covariance = true;
    const MonteCarloSummary sum = run_monte_carlo(s, phases, opts);
    const MomentBound mb = moment_bound_from_summary(sum, s.powers, s.noise_power);

    for (int k = 0; k < s.users(); ++k)
    {
        const std::string user = "user " + std::to_string(k + 1);
        const CMatrix psi = closed[k].eta * s.corr.R_B;
        const double cov_err = relative_frobenius_error(sum.covariance[k], psi);
        report.checks.push_back({"covariance " + user, cov_err <= 0.10, cov_err, 0.10,
                                 "||Psi_mc - eta R_B||_F / ||eta R_B||_F"});

        const double gap = mb.negative_denominator[k] ? INFINITY : std::abs(mb.sinr[k] - closed[k].sinr) / closed[k].sinr;
        report.checks.push_back({"moment bound " + user, gap <= 0.05, gap, 0.05,
                                 "relative gap between sample-moment and closed-form SINR bound"});

        const double margin = sum.rate_mean[k] - (closed[k].rate - 2.0 * sum.rate_stderr[k]);
        report.checks.push_back({"ergodic >= bound " + user, margin >= 0.0, margin, 0.0,
                                 "ergodic rate - (closed-form rate - 2 SE)"});
    }

    const RbdCheckReport rbd = rbd_check(s, 1000, config.seed);
    report.checks.push_back({"equal-phase optimality", rbd.passed,
                             std::max({rbd.max_v1_excess, rbd.max_v2_excess, rbd.max_random_sum_rate - rbd.optimal_sum_rate}),
                             1e-9, "max excess of random designs over the equal-phase design"});

    if (config.kappa == 0.0)
    {
        SeededRng rng(config.seed, 0xA5A5A5A5ull);
        const PhaseConfig other = random_phase_config(s.corr.n1(), s.corr.n2(), rng);
        const auto closed_other = closed_form_rates(s, other);
        double max_diff = 0.0;
        for (int k = 0; k < s.users(); ++k)
            max_diff = std::max(max_diff, std::abs(closed_other[k].rate - closed[k].rate));
        report.checks.push_back({"kappa=0 closed form design-invariant", max_diff <= 1e-12, max_diff, 1e-12,
                                 "max |rate(random design) - rate(equal phases)|"});

        MonteCarloOptions o = opts;
        o.collect_covariance = false;
        o.seed = config.seed + 1;
        const MonteCarloSummary alt = run_monte_carlo(s, other, o);
        double worst = 0.0;
        for (int k = 0; k < s.users(); ++k)
        {
            const double se = std::hypot(sum.rate_stderr[k], alt.rate_stderr[k]);
            worst = std::max(worst, std::abs(sum.rate_mean[k] - alt.rate_mean[k]) / se);
        }
        report.checks.push_back({"kappa=0 ergodic design-invariant", worst <= 3.0, worst, 3.0,
                                 "max |difference| in combined standard errors"});
    }
    return report;
}

void print_report(std::ostream &out, const ValidationReport &report)
{
    for (const auto &c : report.checks)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g (limit %.6g)", c.measured, c.threshold);
        out << (c.passed ? "PASS  " : "FAIL  ") << c.name << ": " << buf << "  " << c.detail << '\n';
    }
    out << (report.all_passed() ? "all checks passed" : "validation FAILED") << '\n';
}

} // namespace dris
