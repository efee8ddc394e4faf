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

#ifndef DRIS_EXPERIMENTS_HPP
#define DRIS_EXPERIMENTS_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dris/montecarlo.hpp"
#include "dris/scenario.hpp"

namespace dris
{

enum class SweepParam
{
    TotalPowerDbm,
    RhoMagnitude,
    Kappa,
    BsAntennas,
    ElementSpacing // meters, applied to both surfaces
};

SweepParam parse_sweep_param(const std::string &name);
std::string to_string(SweepParam p);

enum class SweepMode
{
    ClosedForm,
    MonteCarlo,
    Both
};

SweepMode parse_sweep_mode(const std::string &name);

struct SweepSpec
{
    SweepParam param = SweepParam::TotalPowerDbm;
    std::vector<double> grid;
    SystemConfig base;
};

// Copy of base with the swept parameter set to value (RangeError if out of domain).
SystemConfig apply_sweep_value(const SystemConfig &base, SweepParam param, double value);

struct SweepRow
{
    double sweep_value = 0.0;
    int user_index = 0; // 1-based
    double rate_closed_form = 0.0;
    std::optional<double> rate_mc;
    std::optional<double> rate_mc_stderr;
    double eta_k = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;
    std::string config_digest;
    std::optional<double> rate_mc_bound; // moment-estimated bound, mode Both only
};

// Rows ordered by grid position, then user. Grid points run on up to
// `threads` workers; output does not depend on the thread count.
std::vector<SweepRow> run_sweep(const SweepSpec &spec, SweepMode mode, unsigned threads = 1);

inline constexpr const char *csv_header =
    "sweep_value,user_index,rate_closed_form,rate_mc,rate_mc_stderr,eta_k,v1,v2,config_digest,rate_mc_bound";

void write_csv(std::ostream &out, const std::vector<SweepRow> &rows);

struct ValidationCheck
{
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct ValidationReport
{
    std::vector<ValidationCheck> checks;

    bool all_passed() const;
};

// Oracle suite on one configuration: covariance match per user, moment
// bound against the closed form, ergodic rate against the bound, equal-phase
// optimality by sampling, and the kappa = 0 design-irrelevance check.
ValidationReport validate(const SystemConfig &config, std::size_t trials, unsigned threads = 1);

void print_report(std::ostream &out, const ValidationReport &report);

} // namespace dris

#endif
