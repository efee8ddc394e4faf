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

#include "dris/scenario.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>

namespace dris
{

namespace
{

using nlohmann::json;

[[noreturn]] void schema_error(const std::string &path, const std::string &what)
{
    throw Error(ErrorCode::SchemaError, path + ": " + what);
}

void reject_unknown(const json &obj, const std::string &path, const std::set<std::string> &known)
{
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            schema_error(path + "/" + it.key(), "unknown field");
}

double get_number(const json &obj, const std::string &key, const std::string &path, double fallback)
{
    if (!obj.contains(key))
        return fallback;
    const json &v = obj.at(key);
    if (!v.is_number())
        schema_error(path + "/" + key, "expected a number");
    return v.get<double>();
}

long long get_integer(const json &obj, const std::string &key, const std::string &path, long long fallback)
{
    if (!obj.contains(key))
        return fallback;
    const json &v = obj.at(key);
    if (v.is_number_integer())
        return v.get<long long>();
    if (v.is_number_float())
    {
        const double d = v.get<double>();
        if (d == static_cast<double>(static_cast<long long>(d)))
            return static_cast<long long>(d);
    }
    schema_error(path + "/" + key, "expected an integer");
}

Point2 get_point(const json &obj, const std::string &key, const std::string &path, Point2 fallback)
{
    if (!obj.contains(key))
        return fallback;
    const json &v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        schema_error(path + "/" + key, "expected [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
}

RisGeometry parse_ris(const json &doc, const std::string &key, double wavelength)
{
    RisGeometry g{10, 10, wavelength / 4.0, wavelength, wavelength / 4.0, wavelength / 4.0};
    if (!doc.contains(key))
        return g;
    const json &obj = doc.at(key);
    const std::string path = "/" + key;
    if (!obj.is_object())
        schema_error(path, "expected an object");
    reject_unknown(obj, path,
                   {"n_vertical", "n_horizontal", "element_spacing_m", "element_height_m", "element_width_m"});
    g.n_vertical = static_cast<int>(get_integer(obj, "n_vertical", path, g.n_vertical));
    g.n_horizontal = static_cast<int>(get_integer(obj, "n_horizontal", path, g.n_horizontal));
    g.element_spacing = get_number(obj, "element_spacing_m", path, g.element_spacing);
    g.element_height = get_number(obj, "element_height_m", path, g.element_height);
    g.element_width = get_number(obj, "element_width_m", path, g.element_width);
    return g;
}

std::uint64_t default_seed()
{
    if (const char *env = std::getenv(seed_env_var))
    {
        char *end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && end != env)
            return v;
        throw Error(ErrorCode::RangeError, std::string(seed_env_var) + " is not an unsigned integer");
    }
    return 1;
}

json point_json(const Point2 &p) { return json::array({p.x, p.y}); }

json ris_json(const RisGeometry &g)
{
    return {{"n_vertical", g.n_vertical},
            {"n_horizontal", g.n_horizontal},
            {"element_spacing_m", g.element_spacing},
            {"element_height_m", g.element_height},
            {"element_width_m", g.element_width}};
}

} // namespace

SystemConfig parse_scenario(const json &doc)
{
    if (!doc.is_object())
        schema_error("", "scenario must be a JSON object");
    reject_unknown(doc, "",
                   {"bs_antennas", "users", "user_positions_m", "bs_position_m", "ris1_position_m",
                    "ris2_position_m", "ris1", "ris2", "wavelength_m", "path_loss_exponent", "noise_power_dbm",
                    "total_power_dbm", "user_powers_w", "kappa", "rho_magnitude", "rho_phase_rad", "rbd_phase_rad",
                    "trials", "seed"});

    SystemConfig c;
    c.wavelength = get_number(doc, "wavelength_m", "", 0.1);
    if (!(c.wavelength > 0.0))
        throw Error(ErrorCode::RangeError, "/wavelength_m: must be positive");
    c.bs_antennas = static_cast<int>(get_integer(doc, "bs_antennas", "", 64));
    c.ris1 = parse_ris(doc, "ris1", c.wavelength);
    c.ris2 = parse_ris(doc, "ris2", c.wavelength);
    c.bs = get_point(doc, "bs_position_m", "", c.bs);
    c.ris1_position = get_point(doc, "ris1_position_m", "", c.ris1_position);
    c.ris2_position = get_point(doc, "ris2_position_m", "", c.ris2_position);

    if (doc.contains("user_positions_m"))
    {
        const json &arr = doc.at("user_positions_m");
        if (!arr.is_array())
            schema_error("/user_positions_m", "expected an array of [x, y]");
        c.users.clear();
        for (std::size_t i = 0; i < arr.size(); ++i)
        {
            const json &p = arr[i];
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                schema_error("/user_positions_m/" + std::to_string(i), "expected [x, y]");
            c.users.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        if (doc.contains("users") && get_integer(doc, "users", "", 0) != static_cast<long long>(c.users.size()))
            throw Error(ErrorCode::RangeError, "/users: disagrees with user_positions_m");
    }
    else
    {
        const long long K = get_integer(doc, "users", "", 4);
        if (K < 1)
            throw Error(ErrorCode::RangeError, "/users: must be >= 1");
        c.users = default_user_positions(static_cast<int>(K));
    }

    c.path_loss_exponent = get_number(doc, "path_loss_exponent", "", 2.7);
    c.noise_power_dbm = get_number(doc, "noise_power_dbm", "", -94.0);
    c.total_power_dbm = get_number(doc, "total_power_dbm", "", 20.0);
    if (doc.contains("user_powers_w"))
    {
        const json &arr = doc.at("user_powers_w");
        if (!arr.is_array())
            schema_error("/user_powers_w", "expected an array of numbers");
        for (std::size_t i = 0; i < arr.size(); ++i)
        {
            if (!arr[i].is_number())
                schema_error("/user_powers_w/" + std::to_string(i), "expected a number");
            c.user_powers_w.push_back(arr[i].get<double>());
        }
    }
    c.kappa = get_number(doc, "kappa", "", 4.0);
    c.rho_magnitude = get_number(doc, "rho_magnitude", "", 0.8);
    c.rho_phase = get_number(doc, "rho_phase_rad", "", 0.0);
    c.rbd_phase = get_number(doc, "rbd_phase_rad", "", 0.0);

    const long long trials = get_integer(doc, "trials", "", 10000);
    if (trials < 1)
        throw Error(ErrorCode::RangeError, "/trials: must be >= 1");
    c.trials = static_cast<std::size_t>(trials);

    if (doc.contains("seed"))
    {
        const json &s = doc.at("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
            schema_error("/seed", "expected a non-negative integer");
        c.seed = s.get<std::uint64_t>();
    }
    else
        c.seed = default_seed();

    c.validate();
    return c;
}

SystemConfig load_scenario(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open scenario file " + path.string());
    json doc;
    try
    {
        in >> doc;
    }
    catch (const json::parse_error &e)
    {
        throw Error(ErrorCode::SchemaError, path.string() + ": " + e.what());
    }
    return parse_scenario(doc);
}

json scenario_to_json(const SystemConfig &c)
{
    json users = json::array();
    for (const auto &u : c.users)
        users.push_back(point_json(u));

    json doc = {{"bs_antennas", c.bs_antennas},
                {"users", c.user_count()},
                {"user_positions_m", users},
                {"bs_position_m", point_json(c.bs)},
                {"ris1_position_m", point_json(c.ris1_position)},
                {"ris2_position_m", point_json(c.ris2_position)},
                {"ris1", ris_json(c.ris1)},
                {"ris2", ris_json(c.ris2)},
                {"wavelength_m", c.wavelength},
                {"path_loss_exponent", c.path_loss_exponent},
                {"noise_power_dbm", c.noise_power_dbm},
                {"total_power_dbm", c.total_power_dbm},
                {"kappa", c.kappa},
                {"rho_magnitude", c.rho_magnitude},
                {"rho_phase_rad", c.rho_phase},
                {"rbd_phase_rad", c.rbd_phase},
                {"trials", c.trials},
                {"seed", c.seed}};
    if (!c.user_powers_w.empty())
        doc["user_powers_w"] = c.user_powers_w;
    return doc;
}

std::string config_digest(const SystemConfig &config)
{
    const std::string text = scenario_to_json(config).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text)
    {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace dris
