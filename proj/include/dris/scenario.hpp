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

#ifndef DRIS_SCENARIO_HPP
#define DRIS_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "dris/channel_model.hpp"

namespace dris
{

// Environment variable that replaces the built-in default seed (1) when a
// scenario file does not set "seed".
inline constexpr const char *seed_env_var = "DRIS_SEED";

// Scenario file schema (all fields optional, units in the names):
//
//   bs_antennas             int      (64)
//   users                   int      (4) evenly spaced on (50,0)-(70,0)
//   user_positions_m        [[x,y]]  overrides "users"
//   bs_position_m           [x,y]    ([0,0])
//   ris1_position_m         [x,y]    ([0,15])
//   ris2_position_m         [x,y]    ([60,15])
//   ris1, ris2              { n_vertical (10), n_horizontal (10),
//                             element_spacing_m, element_height_m,
//                             element_width_m (each wavelength/4) }
//   wavelength_m            (0.1)
//   path_loss_exponent      (2.7)
//   noise_power_dbm         (-94)
//   total_power_dbm         (20)
//   user_powers_w           [p_k]    (equal split)
//   kappa                   (4)
//   rho_magnitude           (0.8)
//   rho_phase_rad           (0)
//   rbd_phase_rad           (0)
//   trials                  (10000)
//   seed                    (1, or $DRIS_SEED)
//
// Unknown keys and wrong types raise SchemaError naming the JSON path;
// out-of-domain values raise RangeError.
SystemConfig parse_scenario(const nlohmann::json &doc);

SystemConfig load_scenario(const std::filesystem::path &path);

// Fully expanded scenario with every field present. nlohmann::json keeps
// object keys sorted, so dump() of this is canonical.
nlohmann::json scenario_to_json(const SystemConfig &config);

// 16 hex digits of FNV-1a over the canonical JSON text.
std::string config_digest(const SystemConfig &config);

} // namespace dris

#endif
