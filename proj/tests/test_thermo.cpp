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

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "qdconv/dynamics.hpp"
#include "qdconv/selftest.hpp"
#include "qdconv/thermo.hpp"

using namespace qdconv;

namespace {

ModelParams scaled(double x_g, double x_l, double x_r, double r_p = 0.0, double r_l = 0.0)
{
    ModelParams p = with_scaled_energies(ModelParams{}, {x_g, x_l, x_r});
    p.r_p = r_p;
    p.r_l = r_l;
    return p;
}

}  // namespace

TEST_SUITE("thermo") {

TEST_CASE("currents from the empty dot")
{
    const ModelParams p = scaled(2.0, 0.0, 0.0);
    const Currents c = currents(DensityState{}, p);
    CHECK(c.j_l == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(c.j_r == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("left current counts the coherence twice")
{
    // Filled ground doublet with coherence: outflow is 2 gamma (1 - f) (rho1 + rho2 + 2 r_l Re rho12).
    ModelParams p = scaled(2.0, 0.0, 0.0, 0.0, 0.6);
    DensityState s;
    s.rho0 = 0.0;
    s.rho1 = s.rho2 = 0.5;
    s.rho12 = {0.2, 0.1};
    const Currents c = currents(s, p);
    CHECK(c.j_l == doctest::Approx(-2.0 * 0.5 * (1.0 + 2.0 * 0.6 * 0.2)).epsilon(1e-15));
}

TEST_CASE("steady currents balance")
{
    std::mt19937_64 rng(21);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const ModelParams p = random_model_params(rng);
        const ThermoReport r = thermo_report(steady_state(build_generator(p)).state, p);
        worst = std::max(worst, std::abs(r.j_l + r.j_r));
        CHECK(r.stationary);
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("global equilibrium carries no current")
{
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.0, 1.0), x(-5.0, 5.0), g(0.5, 10.0);
    for (int i = 0; i < 200; ++i) {
        ModelParams p;
        p.temp = p.temp_p = 300.0;
        const double x_g = g(rng), x_l = x(rng);
        p = with_scaled_energies(p, {x_g, x_l, x_g + x_l});
        p.r_p = u(rng);
        p.r_l = u(rng);
        p.tau = 5.0 * u(rng);
        REQUIRE(std::abs(p.mu_r - p.mu_l) < 1e-9);
        const DensityState s = steady_state(build_generator(p)).state;
        const ThermoReport r = thermo_report(s, p);
        CHECK(std::abs(r.j_l) < 1e-12);
        CHECK(std::abs(r.j_r) < 1e-12);
        CHECK(std::abs(s.rho12) < 1e-12);
    }
}

TEST_CASE("no chemical potential difference means no power")
{
    ModelParams p;
    p.mu_l = p.mu_r = 50.0;
    DensityState s;
    s.rho0 = 0.3;
    s.rho1 = 0.2;
    s.rho2 = 0.1;
    s.rho_e = 0.4;
    CHECK(thermo_report(s, p).power == 0.0);
}

TEST_CASE("scaled power prefactor")
{
    const ModelParams p = scaled(2.0, 0.5, 1.0);
    CHECK((p.mu_r - p.mu_l) / p.temp_p == doctest::Approx(2.0 - (295.0 / 5780.0) * 0.5).epsilon(1e-15));
    CHECK((p.mu_r - p.mu_l) / p.temp_p == doctest::Approx(1.9744810).epsilon(1e-7));
}

TEST_CASE("reference efficiencies")
{
    const ReferenceEfficiencies e = reference_efficiencies(295.0, 5780.0);
    CHECK(e.eta_c == doctest::Approx(0.9489619).epsilon(1e-7));
    CHECK(e.eta_ca == doctest::Approx(0.7740839).epsilon(1e-7));
    const ReferenceEfficiencies zero = reference_efficiencies(300.0, 300.0);
    CHECK(zero.eta_c == 0.0);
    CHECK(zero.eta_ca == 0.0);
    for (int k = 1; k < 100; ++k) {
        const double eta_c = k / 100.0;
        const ReferenceEfficiencies r = reference_efficiencies((1.0 - eta_c) * 5780.0, 5780.0);
        CHECK(std::abs(r.eta_ca - (1.0 - std::sqrt(1.0 - r.eta_c))) <= 1e-15);
    }
    CHECK_THROWS_AS(reference_efficiencies(6000.0, 5780.0), std::domain_error);
    CHECK_THROWS_AS(reference_efficiencies(0.0, 5780.0), std::domain_error);
}

TEST_CASE("power and efficiency identities")
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 1000; ++i) {
        const ModelParams p = random_model_params(rng);
        const ThermoReport r = thermo_report(steady_state(build_generator(p)).state, p);
        if (r.power != 0.0) CHECK(std::abs(r.power - r.power_scaled_form) <= 1e-12 * std::abs(r.power));
        CHECK(r.power_forms_agree);
        if (r.eta) CHECK(std::abs(*r.eta - r.eta_scaled_form) <= 1e-12 * std::max(1.0, std::abs(*r.eta)));
        if (r.power > 0.0) CHECK(*r.eta <= r.eta_c + 1e-9);
    }
}

TEST_CASE("coherence numerator zeros")
{
    ModelParams p = scaled(2.0, 0.4, -1.2, 0.5, 0.5);
    const CoherenceStructure c = analytic_coherence_structure(p);
    CHECK(c.numerator == 0.0);
    CHECK(c.coupling_zero);

    p = scaled(2.0, 1.0, 3.0, 0.9, 0.1);
    const CoherenceStructure a = analytic_coherence_structure(p);
    CHECK(a.affinity_zero);
    CHECK(a.product_form == 0.0);
    CHECK(std::abs(a.numerator) <= 1e-12);
    CHECK(std::abs(steady_state(build_generator(p)).state.rho12) <= 1e-12);
}

TEST_CASE("the two printed numerator forms agree")
{
    std::mt19937_64 rng(24);
    for (int i = 0; i < 500; ++i) {
        const ModelParams p = random_model_params(rng);
        const CoherenceStructure c = analytic_coherence_structure(p);
        CHECK(std::abs(c.numerator - c.product_form) <= 1e-12 * std::max(1e-300, std::abs(c.numerator)) + 1e-15);
    }
}

TEST_CASE("coherence sign follows the analytic structure")
{
    int compared = 0, on_zero_line = 0;
    for (int a = 0; a < 20; ++a) {
        for (int b = 0; b < 20; ++b) {
            const double x_l = -5.0 + 10.0 * (a + 0.5) / 20.0;
            const double x_r = -5.0 + 10.0 * (b + 0.5) / 20.0;
            const ModelParams p = scaled(2.0, x_l, x_r, 0.9, 0.2);
            const double re = steady_state(build_generator(p)).state.rho12.real();
            const CoherenceStructure c = analytic_coherence_structure(p);
            if (c.affinity_zero) {
                CHECK(std::abs(re) < 1e-12);
                ++on_zero_line;
                continue;
            }
            CHECK((re > 0.0 ? 1 : -1) == c.predicted_sign);
            ++compared;
        }
    }
    CHECK(on_zero_line == 16);  // x_r = x_l + 2 crosses the grid diagonal
    CHECK(compared + on_zero_line == 400);
}

TEST_CASE("coherence structure needs a degenerate doublet")
{
    ModelParams p = scaled(2.0, 0.0, 0.0);
    p.delta21 = 10.0;
    CHECK_THROWS(analytic_coherence_structure(p));
}

}
