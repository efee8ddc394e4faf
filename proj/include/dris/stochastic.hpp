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

#ifndef DRIS_STOCHASTIC_HPP
#define DRIS_STOCHASTIC_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "dris/matrix_core.hpp"

namespace dris
{

// Deterministic random stream keyed by (seed, stream_id). Each Monte Carlo
// trial owns one stream, so results do not depend on scheduling.
class SeededRng
{
public:
    SeededRng(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    double uniform();       // [0, 1)
    double standard_normal();

    std::mt19937_64 &engine() { return engine_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

// I_1(kappa) / I_0(kappa), the characteristic-function value of zero-mean
// Von Mises noise. Power series up to kappa = 15, Hankel asymptotic
// expansion above.
double vm_cf(double kappa);

// Von Mises concentration with its cached characteristic-function value.
class PhaseNoiseModel
{
public:
    explicit PhaseNoiseModel(double kappa);

    double kappa() const { return kappa_; }
    double varphi() const { return varphi_; }

private:
    double kappa_;
    double varphi_;
};

// i.i.d. VM(0, kappa) angles in [-pi, pi] (Best-Fisher rejection sampler).
std::vector<double> sample_von_mises(const PhaseNoiseModel &model, std::size_t count, SeededRng &rng);

// i.i.d. CN(0, 1) entries: real and imaginary parts each N(0, 1/2).
CMatrix sample_complex_gaussian(Eigen::Index rows, Eigen::Index cols, SeededRng &rng);

CVector sample_complex_gaussian_vector(Eigen::Index size, SeededRng &rng);

} // namespace dris

#endif
