// Copyright 2026 The qdconv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdconv/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qdconv {

namespace {

[[noreturn]] void reject(const char* field, double value, const char* constraint)
{
    std::ostringstream os;
    os << field << " = " << value << " violates " << constraint;
    throw std::invalid_argument(os.str());
}

void require_finite(const char* field, double value)
{
    if (!std::isfinite(value)) reject(field, value, "finiteness");
}

}  // namespace

void ModelParams::validate() const
{
    require_finite("eps_g", eps_g);
    require_finite("eps_l", eps_l);
    require_finite("delta21", delta21);
    require_finite("mu_l", mu_l);
    require_finite("mu_r", mu_r);
    require_finite("temp", temp);
    require_finite("temp_p", temp_p);
    require_finite("gamma_p", gamma_p);
    require_finite("gamma_l", gamma_l);
    require_finite("gamma_r", gamma_r);
    require_finite("r_p", r_p);
    require_finite("r_l", r_l);

    if (!(eps_g > 0.0)) reject("eps_g", eps_g, "eps_g > 0");
    if (!(temp > 0.0)) reject("temp", temp, "temp > 0");
    if (!(temp_p > 0.0)) reject("temp_p", temp_p, "temp_p > 0");
    if (!(gamma_p >= 0.0)) reject("gamma_p", gamma_p, "gamma_p >= 0");
    if (!(gamma_l >= 0.0)) reject("gamma_l", gamma_l, "gamma_l >= 0");
    if (!(gamma_r >= 0.0)) reject("gamma_r", gamma_r, "gamma_r >= 0");
    if (!(r_p >= 0.0 && r_p <= 1.0)) reject("r_p", r_p, "0 <= r_P <= 1");
    if (!(r_l >= 0.0 && r_l <= 1.0)) reject("r_l", r_l, "0 <= r_l <= 1");
    if (!(tau >= 0.0)) reject("tau", tau, "tau >= 0 (or infinite)");
    if (!(delta21 >= 0.0)) reject("delta21", delta21, "delta21 >= 0");
    // Both photon transitions must stay positive.
    if (!(eps_g - delta21 > 0.0)) reject("delta21", delta21, "delta21 < eps_g");

    const ScaledEnergies x = scaled_energies(*this);
    require_finite("x_g", x.x_g);
    require_finite("x_l", x.x_l);
    require_finite("x_r", x.x_r);
}

double bose_occupation(double x)
{
    if (std::isnan(x)) throw std::domain_error("bose_occupation: x is NaN");
    if (x == 0.0) throw std::domain_error("bose_occupation: singular at x = 0");
    if (x < 0.0) {
        std::ostringstream os;
        os << "bose_occupation: x = " << x << " must be positive";
        throw std::domain_error(os.str());
    }
    // expm1 overflows to +inf beyond x ~ 709, giving the correct limit 0.
    return 1.0 / std::expm1(x);
}

double fermi_occupation(double x)
{
    if (!std::isfinite(x)) {
        std::ostringstream os;
        os << "fermi_occupation: x = " << x << " must be finite";
        throw std::domain_error(os.str());
    }
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

ScaledEnergies scaled_energies(const ModelParams& params)
{
    return {
        params.eps_g / params.temp_p,
        (params.eps_l - params.mu_l) / params.temp,
        (params.eps_l + params.eps_g - params.mu_r) / params.temp,
    };
}

ModelParams with_scaled_energies(ModelParams base, const ScaledEnergies& x)
{
    base.eps_l = 0.0;
    base.eps_g = x.x_g * base.temp_p;
    base.mu_l = -x.x_l * base.temp;
    base.mu_r = base.eps_g - x.x_r * base.temp;
    return base;
}

RateSet build_rates(const ModelParams& params)
{
    const double eps_e = params.eps_l + params.eps_g;
    const std::array<double, 2> ground{params.eps_l, params.eps_l + params.delta21};

    const std::array<double, 2> cross_p{1.0, params.r_p};
    const std::array<double, 2> cross_l{1.0, params.r_l};

    RateSet rates;
    for (int k = 0; k < 2; ++k) {
        const double n = bose_occupation((eps_e - ground[k]) / params.temp_p);
        const double x_level = (ground[k] - params.mu_l) / params.temp;
        const double f = fermi_occupation(x_level);
        const double f_empty = fermi_occupation(-x_level);  // 1 - f without cancellation
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const double gp = params.gamma_p * cross_p[i == j ? 0 : 1];
                const double gl = params.gamma_l * cross_l[i == j ? 0 : 1];
                rates.b_plus(i, j, k) = gp * n;
                rates.b_minus(i, j, k) = gp * (1.0 + n);
                rates.f_l_plus(i, j, k) = gl * f;
                rates.f_l_minus(i, j, k) = gl * f_empty;
            }
        }
    }

    const double x_r = (eps_e - params.mu_r) / params.temp;
    rates.f_r_plus = params.gamma_r * fermi_occupation(x_r);
    rates.f_r_minus = params.gamma_r * fermi_occupation(-x_r);
    return rates;
}

}  // namespace qdconv
