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

#include "qdconv/json_io.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdconv {

Json tau_to_json(double tau)
{
    if (tau == kInfiniteDecoherence) return "inf";
    return tau;
}

double tau_from_json(const Json& j)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "infinite" || s == "INFINITE") return kInfiniteDecoherence;
        throw std::invalid_argument("tau: expected a number >= 0 or \"inf\", got \"" + s + "\"");
    }
    if (!j.is_number()) throw std::invalid_argument("tau: expected a number >= 0 or \"inf\"");
    const double tau = j.get<double>();
    if (!(tau >= 0.0)) throw std::invalid_argument("tau = " + j.dump() + " violates tau >= 0");
    return tau;
}

Json number_to_json(double v)
{
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

Json to_json(const ModelParams& p)
{
    return Json{{"eps_g", p.eps_g},     {"eps_l", p.eps_l},     {"delta21", p.delta21},
                {"mu_l", p.mu_l},       {"mu_r", p.mu_r},       {"temp", p.temp},
                {"temp_p", p.temp_p},   {"gamma_p", p.gamma_p}, {"gamma_l", p.gamma_l},
                {"gamma_r", p.gamma_r}, {"r_p", p.r_p},         {"r_l", p.r_l},
                {"tau", tau_to_json(p.tau)}};
}

Json to_json(const ScaledEnergies& x)
{
    return Json{{"x_g", x.x_g}, {"x_l", x.x_l}, {"x_r", x.x_r}};
}

Json to_json(const OptimizerSettings& s)
{
    Json bounds = Json::object();
    for (Variable v : kAllVariables) {
        bounds[std::string(variable_name(v))] = Json::array({s.bounds[v].lo, s.bounds[v].hi});
    }
    return Json{{"grid_points", s.grid_points},
                {"seeds", s.seeds},
                {"f_rel_tol", s.f_rel_tol},
                {"x_rel_tol", s.x_rel_tol},
                {"max_evals_per_seed", s.max_evals_per_seed},
                {"bounds", std::move(bounds)}};
}

Json to_json(const DensityState& s)
{
    return Json{{"rho1", s.rho1},
                {"rho2", s.rho2},
                {"rho_e", s.rho_e},
                {"rho0", s.rho0},
                {"rho12_re", s.rho12.real()},
                {"rho12_im", s.rho12.imag()},
                {"abs_rho12", std::abs(s.rho12)}};
}

Json to_json(const ThermoReport& r)
{
    return Json{{"j_l", r.j_l},
                {"j_r", r.j_r},
                {"j", r.j},
                {"q_dot_p", r.q_dot_p},
                {"power", r.power},
                {"power_scaled_form", r.power_scaled_form},
                {"eta", r.eta ? Json(*r.eta) : Json(nullptr)},
                {"eta_scaled_form", number_to_json(r.eta_scaled_form)},
                {"eta_c", r.eta_c},
                {"eta_ca", number_to_json(r.eta_ca)},
                {"stationary", r.stationary},
                {"power_forms_agree", r.power_forms_agree}};
}

Json to_json(const OptResult& r)
{
    Json free = Json::array();
    for (Variable v : r.free) free.push_back(std::string(variable_name(v)));
    return Json{{"free", std::move(free)},
                {"x_opt", to_json(r.x_opt)},
                {"p_max", r.p_max},
                {"eta_at_pmax", r.eta_at_pmax ? Json(*r.eta_at_pmax) : Json(nullptr)},
                {"abs_rho12", r.abs_rho12},
                {"eta_c", r.eta_c},
                {"eta_ca", r.eta_ca},
                {"evals", r.evals},
                {"status", std::string(status_name(r.status))},
                {"bound_active", r.bound_active},
                {"seeds_refined", r.seeds_refined},
                {"simplex_spread", r.simplex_spread},
                {"simplex_diameter", r.simplex_diameter},
                {"second_law_violations", r.second_law_violations},
                {"singular_points", r.singular_points},
                {"max_power_form_discrepancy", r.max_power_form_discrepancy},
                {"max_eta_form_discrepancy", r.max_eta_form_discrepancy}};
}

}  // namespace qdconv
