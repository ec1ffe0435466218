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

#include "qdconv/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdconv/dynamics.hpp"
#include "qdconv/thermo.hpp"

namespace qdconv {

namespace {

std::string sci(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

CheckResult bound_check(std::string name, double worst, double tol, int samples)
{
    return {std::move(name), worst <= tol,
            "max " + sci(worst) + " vs tol " + sci(tol) + " over " + std::to_string(samples) + " samples"};
}

}  // namespace

ModelParams random_model_params(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ModelParams p;
    p.r_p = unit(rng);
    p.r_l = unit(rng);
    const double x_g = 0.5 + 9.5 * unit(rng);
    const double x_l = -5.0 + 10.0 * unit(rng);
    const double x_r = -5.0 + 10.0 * unit(rng);
    p.tau = 10.0 * unit(rng);
    return with_scaled_energies(p, {x_g, x_l, x_r});
}

std::vector<CheckResult> run_selftest(const SelftestOptions& options)
{
    std::vector<CheckResult> out;
    std::mt19937_64 rng(options.seed);

    double occupation = 0.0;
    for (int i = -300; i <= 300; ++i) {
        const double x = i * 0.1;
        occupation = std::max(occupation, std::abs(fermi_occupation(x) + fermi_occupation(-x) - 1.0));
        if (x >= 1e-6) occupation = std::max(occupation, std::abs(bose_occupation(x) * std::expm1(x) - 1.0));
    }
    out.push_back(bound_check("occupation identities", occupation, 1e-12, 601));

    double left_null = 0.0, trace = 0.0, balance = 0.0, forms = 0.0, positivity = 0.0, balance_rates = 0.0;
    int invalid_states = 0;
    for (int i = 0; i < options.draws; ++i) {
        const ModelParams p = random_model_params(rng);
        const RateSet r = build_rates(p);
        const ScaledEnergies x = scaled_energies(p);
        balance_rates = std::max({balance_rates,
                                  relative_difference(r.b_plus(0, 0, 0) / r.b_minus(0, 0, 0), std::exp(-x.x_g)),
                                  relative_difference(r.f_l_plus(0, 0, 0) / r.f_l_minus(0, 0, 0), std::exp(-x.x_l)),
                                  relative_difference(r.f_r_plus / r.f_r_minus, std::exp(-x.x_r))});

        const Generator gen = build_generator(p);
        StateVector t;
        t << 1, 1, 1, 1, 0, 0;
        left_null = std::max(left_null, (t.transpose() * gen.matrix()).cwiseAbs().maxCoeff());

        const SteadyState ss = steady_state(gen);
        trace = std::max(trace, std::abs(ss.state.trace() - 1.0));
        if (density_violation(ss.state)) ++invalid_states;
        positivity = std::max(positivity, std::norm(ss.state.rho12) - ss.state.rho1 * ss.state.rho2);

        const ThermoReport rep = thermo_report(ss.state, p);
        balance = std::max(balance, std::abs(rep.j_l + rep.j_r) / std::max(1.0, std::abs(rep.j_l)));
        if (rep.power != 0.0) forms = std::max(forms, relative_difference(rep.power, rep.power_scaled_form));
    }
    out.push_back(bound_check("detailed balance of rates", balance_rates, 1e-12, options.draws));
    out.push_back(bound_check("generator trace preservation", left_null, 1e-12, options.draws));
    out.push_back(bound_check("steady-state normalization", trace, 1e-10, options.draws));
    out.push_back({"steady-state validity", invalid_states == 0,
                   std::to_string(invalid_states) + " invalid of " + std::to_string(options.draws) +
                       " (max |rho12|^2 - rho1 rho2 = " + sci(positivity) + ")"});
    out.push_back(bound_check("current balance", balance, 1e-10, options.draws));
    out.push_back(bound_check("power dual form", forms, 1e-12, options.draws));

    double coherence = 0.0;
    for (int i = 0; i < options.draws; ++i) {
        ModelParams p = random_model_params(rng);
        p.r_l = p.r_p;
        coherence = std::max(coherence, std::abs(steady_state(build_generator(p)).state.rho12));
    }
    out.push_back(bound_check("coherence vanishes at r_p = r_l", coherence, 1e-12, options.draws));

    double equilibrium = 0.0;
    for (int i = 0; i < options.draws; ++i) {
        ModelParams p = random_model_params(rng);
        p.temp = p.temp_p;
        p.mu_r = p.mu_l;
        const SteadyState ss = steady_state(build_generator(p));
        const ThermoReport rep = thermo_report(ss.state, p);
        equilibrium = std::max({equilibrium, std::abs(rep.j_l), std::abs(rep.j_r), std::abs(ss.state.rho12)});
    }
    out.push_back(bound_check("equilibrium carries no current", equilibrium, 1e-12, options.draws));

    double oracle = 0.0;
    for (int i = 0; i < options.oracle_draws; ++i) {
        const Generator gen = build_generator(random_model_params(rng));
        const StateVector direct = to_vector(steady_state(gen).state);
        const StateVector integrated = to_vector(evolve(gen, DensityState{}, 200.0, 1e-3));
        oracle = std::max(oracle, (direct - integrated).cwiseAbs().maxCoeff());
    }
    out.push_back(bound_check("steady state matches time integration", oracle, 1e-8, options.oracle_draws));
    return out;
}

}  // namespace qdconv
