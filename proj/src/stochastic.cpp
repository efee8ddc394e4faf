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

#include "dris/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dris
{

namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Power series of I_p(x) scaled by (x/2)^-p, p in {0, 1}:
// sum_m (x^2/4)^m / (m! (m+p)!)
double bessel_i_series_scaled(int p, double x)
{
    const double q = 0.25 * x * x;
    double term = 1.0; // m = 0: 1 / (0! p!) = 1 for p <= 1
    double sum = term;
    for (int m = 1; m < 500; ++m)
    {
        term *= q / (double(m) * double(m + p));
        sum += term;
        if (term < 1e-18 * sum)
            break;
    }
    return sum;
}

// Hankel expansion of sqrt(2 pi x) e^-x I_nu(x):
// sum_k (-1)^k a_k(nu) / x^k, a_k = prod_{j=1..k} (4nu^2 - (2j-1)^2) / (k! 8^k)
double bessel_i_asymptotic_scaled(int nu, double x)
{
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    double prev = std::abs(term);
    for (int k = 1; k < 200; ++k)
    {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(term) > prev) // series starts diverging
            break;
        sum += term;
        prev = std::abs(term);
        if (prev < 1e-18 * std::abs(sum))
            break;
    }
    return sum;
}

} // namespace

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id),
      engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream_id + 0x632BE59BD9B4E019ull)))
{
}

double SeededRng::uniform() { return uniform_(engine_); }

double SeededRng::standard_normal() { return normal_(engine_); }

double vm_cf(double kappa)
{
    if (!std::isfinite(kappa) || kappa < 0.0)
        throw Error(ErrorCode::InvalidKappa, "kappa must be finite and non-negative");
    if (kappa == 0.0)
        return 0.0;
    if (kappa <= 15.0)
        return 0.5 * kappa * bessel_i_series_scaled(1, kappa) / bessel_i_series_scaled(0, kappa);
    return bessel_i_asymptotic_scaled(1, kappa) / bessel_i_asymptotic_scaled(0, kappa);
}

PhaseNoiseModel::PhaseNoiseModel(double kappa) : kappa_(kappa), varphi_(vm_cf(kappa)) {}

std::vector<double> sample_von_mises(const PhaseNoiseModel &model, std::size_t count, SeededRng &rng)
{
    constexpr double pi = std::numbers::pi;
    std::vector<double> out(count);
    const double kappa = model.kappa();

    if (kappa < 1e-9)
    {
        for (auto &x : out)
            x = pi * (2.0 * rng.uniform() - 1.0);
        return out;
    }

    // Best & Fisher (1979), wrapped-Cauchy envelope.
    const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
    const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
    const double r = (1.0 + rho * rho) / (2.0 * rho);

    for (auto &x : out)
    {
        double f;
        for (;;)
        {
            const double u1 = rng.uniform();
            const double u2 = rng.uniform();
            const double z = std::cos(pi * u1);
            f = (1.0 + r * z) / (r + z);
            const double c = kappa * (r - f);
            if (c * (2.0 - c) - u2 > 0.0)
                break;
            if (u2 > 0.0 && std::log(c / u2) + 1.0 - c >= 0.0)
                break;
        }
        f = std::clamp(f, -1.0, 1.0);
        const double u3 = rng.uniform();
        x = (u3 < 0.5 ? -1.0 : 1.0) * std::acos(f);
    }
    return out;
}

CMatrix sample_complex_gaussian(Eigen::Index rows, Eigen::Index cols, SeededRng &rng)
{
    const double s = std::sqrt(0.5);
    CMatrix out(rows, cols);
    // Fill in storage order so the draw sequence is fixed by layout.
    cdouble *data = out.data();
    for (Eigen::Index i = 0; i < out.size(); ++i)
    {
        const double re = rng.standard_normal();
        const double im = rng.standard_normal();
        data[i] = cdouble(s * re, s * im);
    }
    return out;
}

CVector sample_complex_gaussian_vector(Eigen::Index size, SeededRng &rng)
{
    return sample_complex_gaussian(size, 1, rng);
}

} // namespace dris
