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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dris/experiments.hpp"
#include "dris/rbd.hpp"

namespace
{

std::vector<double> parse_grid(const std::string &text)
{
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(item, &used);
        }
        catch (const std::exception &)
        {
            used = 0;
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
            ++used;
        if (item.empty() || used != item.size())
            throw dris::Error(dris::ErrorCode::RangeError, "bad grid value '" + item + "'");
        grid.push_back(v);
    }
    return grid;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Double-RIS MU-MISO rate simulator: closed-form bounds, Monte Carlo and design checks"};
    app.require_subcommand(1);

    std::string config_path, param, grid_text, mode = "closed", out_path;
    std::size_t trials = 0, samples = 1000;
    unsigned threads = 1;

    auto *sweep = app.add_subcommand("sweep", "Sweep one parameter and write CSV rows");
    sweep->add_option("--config", config_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--param", param, "total_power_dbm | rho_magnitude | kappa | M | element_spacing")->required();
    sweep->add_option("--grid", grid_text, "Comma-separated values")->required();
    sweep->add_option("--mode", mode, "closed | mc | both")->check(CLI::IsMember({"closed", "mc", "both"}));
    sweep->add_option("--out", out_path, "Output CSV (stdout if omitted)");
    sweep->add_option("--trials", trials, "Override Monte Carlo trial count");
    sweep->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    auto *validate = app.add_subcommand("validate", "Run the oracle checks on a scenario");
    validate->add_option("--config", config_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    validate->add_option("--trials", trials, "Monte Carlo trials")->required();
    validate->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    auto *rbd = app.add_subcommand("rbd-check", "Compare equal-phase design with random designs");
    rbd->add_option("--config", config_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    rbd->add_option("--samples", samples, "Random phase configurations");

    CLI11_PARSE(app, argc, argv);

    try
    {
        dris::SystemConfig config = dris::load_scenario(config_path);

        if (*sweep)
        {
            if (trials > 0)
                config.trials = trials;
            dris::SweepSpec spec{dris::parse_sweep_param(param), parse_grid(grid_text), config};
            const auto rows = dris::run_sweep(spec, dris::parse_sweep_mode(mode), threads);
            if (out_path.empty())
                dris::write_csv(std::cout, rows);
            else
            {
                std::ofstream out(out_path, std::ios::binary);
                if (!out)
                    throw dris::Error(dris::ErrorCode::IoError, "cannot write " + out_path);
                dris::write_csv(out, rows);
            }
            return 0;
        }

        if (*validate)
        {
            const auto report = dris::validate(config, trials, threads);
            dris::print_report(std::cout, report);
            return report.all_passed() ? 0 : 1;
        }

        const dris::Scenario s = dris::make_scenario(config);
        const auto r = dris::rbd_check(s, samples, config.seed);
        std::cout << "samples              " << r.samples << '\n'
                  << "tr(R1^2)             " << r.tr_R1sq << '\n'
                  << "tr(R2^2)             " << r.tr_R2sq << '\n'
                  << "max v1 - tr(R1^2)    " << r.max_v1_excess << '\n'
                  << "max v2 - tr(R2^2)    " << r.max_v2_excess << '\n'
                  << "equal-phase sum rate " << r.optimal_sum_rate << '\n'
                  << "best random sum rate " << r.max_random_sum_rate << '\n'
                  << "max |v(c) - v(0)|    " << r.max_constant_deviation << '\n'
                  << (r.passed ? "PASS" : "FAIL") << '\n';
        return r.passed ? 0 : 1;
    }
    catch (const dris::Error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
