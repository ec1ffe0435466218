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

#include "qdconv/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdconv {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

Currents currents(const DensityState& s, const ModelParams& params)
{
    const RateSet r = build_rates(params);
    const auto& lp = r.f_l_plus;
    const auto& lm = r.f_l_minus;

    // Minus the left-lead part of d(rho0)/dt; the coherence enters through
    // rho12 + rho21 = 2 Re rho12.
    const double cross = lm(1, 0, 0) + lm(1, 0, 1) + lm(0, 1, 0) + lm(0, 1, 1);
    Currents c;
    c.j_l = 2.0 * (lp(0, 0, 0) + lp(1, 1, 1)) * s.rho0 - 2.0 * lm(0, 0, 0) * s.rho1 -
            2.0 * lm(1, 1, 1) * s.rho2 - cross * s.rho12.real();
    c.j_r = 2.0 * r.f_r_plus * s.rho0 - 2.0 * r.f_r_minus * s.rho_e;
    return c;
}

ReferenceEfficiencies reference_efficiencies(double temp, double temp_p)
{
    if (!(temp > 0.0) || !(temp_p > 0.0) || temp > temp_p) {
        std::ostringstream os;
        os << "reference_efficiencies: need 0 < temp <= temp_p, got temp = " << temp
           << ", temp_p = " << temp_p;
        throw std::domain_error(os.str());
    }
    const double ratio = temp / temp_p;
    return {1.0 - ratio, 1.0 - std::sqrt(ratio)};
}

double relative_difference(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

ThermoReport thermo_report(const DensityState& state, const ModelParams& params)
{
    const Currents c = currents(state, params);
    const double ratio = params.temp / params.temp_p;

    ThermoReport rep;
    rep.j_l = c.j_l;
    rep.j_r = c.j_r;
    rep.j = c.j_l;
    rep.eta_c = 1.0 - ratio;
    rep.eta_ca = 1.0 - std::sqrt(ratio);
    rep.q_dot_p = params.eps_g * rep.j;
    rep.power = (params.mu_r - params.mu_l) * rep.j;
    // The scaled forms cancel x_g against (1 - eta_c)(x_r - x_l) near the
    // zero-power edge; evaluate them in extended precision from the stored
    // energies so they stay comparable with mu_r - mu_l there.
    using ld = long double;
    const ld t = params.temp, tp = params.temp_p;
    const ld xg = static_cast<ld>(params.eps_g) / tp;
    const ld xl = (static_cast<ld>(params.eps_l) - params.mu_l) / t;
    const ld xr = (static_cast<ld>(params.eps_l) + params.eps_g - params.mu_r) / t;
    const ld carnot_gap = t / tp;  // 1 - eta_c
    rep.power_scaled_form = static_cast<double>(tp * (xg - carnot_gap * (xr - xl)) * rep.j);
    rep.eta_scaled_form = static_cast<double>(1.0L - carnot_gap * (xr - xl) / xg);
    if (rep.j != 0.0) rep.eta = rep.power / rep.q_dot_p;

    rep.stationary = std::abs(c.j_l + c.j_r) <= 1e-10 * std::max(1.0, std::abs(c.j_l));
    rep.power_forms_agree = relative_difference(rep.power, rep.power_scaled_form) <= 1e-12;
    return rep;
}

CoherenceStructure analytic_coherence_structure(const ModelParams& params)
{
    if (!params.degenerate()) {
        throw std::invalid_argument("analytic_coherence_structure: requires delta21 = 0");
    }
    const ScaledEnergies x = scaled_energies(params);
    if (!(x.x_g > 0.0)) throw std::domain_error("analytic_coherence_structure: x_g must be positive");

    const double n = bose_occupation(x.x_g);
    const double f_l = fermi_occupation(x.x_l);
    const double f_r = fermi_occupation(x.x_r);
    const double affinity = x.x_g + x.x_l - x.x_r;

    CoherenceStructure out;
    out.numerator = 2.0 * params.gamma_p * (params.r_p - params.r_l) *
                    (n * f_l - (1.0 + n - f_l) * f_r);
    out.product_form = 0.5 * params.gamma_p * (params.r_l - params.r_p) /
                       std::sinh(0.5 * x.x_g) / std::cosh(0.5 * x.x_l) / std::cosh(0.5 * x.x_r) *
                       std::sinh(0.5 * affinity);
    out.form_discrepancy = relative_difference(out.numerator, out.product_form);
    out.coupling_zero = params.r_p == params.r_l;
    const double affinity_scale = std::max({1.0, std::abs(x.x_g), std::abs(x.x_l), std::abs(x.x_r)});
    out.affinity_zero = std::abs(affinity) <= 1e-12 * affinity_scale;
    out.predicted_sign = -sign_of(out.product_form);
    return out;
}

}  // namespace qdconv
