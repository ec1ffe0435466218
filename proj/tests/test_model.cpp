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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <random>

#include "qdconv/model.hpp"
#include "qdconv/selftest.hpp"

using namespace qdconv;

TEST_SUITE("model") {

TEST_CASE("bose occupation values")
{
    CHECK(bose_occupation(std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bose_occupation(1.0) == doctest::Approx(0.5819767069).epsilon(1e-10));
    const double tail = bose_occupation(50.0);
    CHECK(tail > 0.0);
    CHECK(tail < 1e-21);
    CHECK(std::isfinite(bose_occupation(800.0)));
}

TEST_CASE("bose occupation rejects the singular and negative domain")
{
    CHECK_THROWS_WITH_AS(bose_occupation(0.0), "bose_occupation: singular at x = 0", std::domain_error);
    CHECK_THROWS_AS(bose_occupation(-1.0), std::domain_error);
    CHECK_THROWS_AS(bose_occupation(std::nan("")), std::domain_error);
}

TEST_CASE("fermi occupation values")
{
    CHECK(fermi_occupation(0.0) == 0.5);
    CHECK(fermi_occupation(2.0) == doctest::Approx(0.1192029220).epsilon(1e-10));
    CHECK(fermi_occupation(-2.0) == doctest::Approx(0.8807970780).epsilon(1e-10));
    CHECK(fermi_occupation(800.0) == 0.0);
    CHECK(fermi_occupation(-800.0) == 1.0);
}

TEST_CASE("occupation identities on a grid")
{
    double worst_fermi = 0.0, worst_bose = 0.0;
    for (int k = -3000; k <= 3000; ++k) {
        const double x = k * 0.01;
        worst_fermi = std::max(worst_fermi, std::abs(fermi_occupation(x) + fermi_occupation(-x) - 1.0));
    }
    for (double x = 1e-6; x <= 30.0; x *= 1.1) {
        worst_bose = std::max(worst_bose, std::abs(bose_occupation(x) * std::expm1(x) - 1.0));
    }
    CHECK(worst_fermi <= 1e-15);
    CHECK(worst_bose <= 1e-12);
}

TEST_CASE("scaled energies")
{
    ModelParams p;
    p.eps_g = 2.0 * p.temp_p;
    p.eps_l = 0.7;
    p.mu_l = 0.7;
    const ScaledEnergies x = scaled_energies(p);
    CHECK(x.x_g == 2.0);
    CHECK(x.x_l == 0.0);

    ModelParams fig2;
    CHECK(fig2.temp == 295.0);
    CHECK(fig2.temp_p == 5780.0);
    CHECK(scaled_energies(fig2).x_g == 2.0);
}

TEST_CASE("scaled to physical round trip")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0), g(0.1, 20.0);
    auto round_trip_error = [](const ScaledEnergies& in) {
        const ScaledEnergies out = scaled_energies(with_scaled_energies(ModelParams{}, in));
        return std::max({std::abs(out.x_g - in.x_g), std::abs(out.x_l - in.x_l), std::abs(out.x_r - in.x_r)});
    };
    // Fig. 2 band gap: absolute 1e-14.
    for (int i = 0; i < 500; ++i) CHECK(round_trip_error({2.0, u(rng), u(rng)}) <= 1e-14);
    // Elsewhere mu_r sits at the scale of eps_g, so the bound scales with x_g T_P / T.
    const ModelParams d;
    for (int i = 0; i < 500; ++i) {
        const ScaledEnergies in{g(rng), u(rng), u(rng)};
        const double scale = std::max({1.0, std::abs(in.x_l), std::abs(in.x_r), in.x_g * d.temp_p / d.temp});
        CHECK(round_trip_error(in) <= 1e-14 * scale);
    }
}

TEST_CASE("rate examples")
{
    ModelParams p = with_scaled_energies(ModelParams{}, {2.0, 0.3, -1.0});
    p.r_p = 0.0;
    p.r_l = 0.4;
    RateSet r = build_rates(p);
    for (int k = 0; k < 2; ++k) {
        CHECK(r.b_plus(0, 1, k) == 0.0);
        CHECK(r.b_plus(1, 0, k) == 0.0);
        CHECK(r.b_minus(0, 1, k) == 0.0);
        CHECK(r.b_minus(1, 0, k) == 0.0);
    }
    CHECK(r.b_plus(0, 0, 0) == doctest::Approx(0.1565176427).epsilon(1e-10));

    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const ModelParams q = random_model_params(rng);
        const RateSet s = build_rates(q);
        // exact up to the rounding of one product and one quotient
        CHECK(std::abs(s.b_plus(0, 1, 0) / s.b_plus(0, 0, 0) - q.r_p) <= 4e-16 * q.r_p);
    }
}

TEST_CASE("rates are non-negative and detailed-balanced per channel")
{
    std::mt19937_64 rng(12);
    for (int i = 0; i < 1000; ++i) {
        const ModelParams p = random_model_params(rng);
        const ScaledEnergies x = scaled_energies(p);
        const RateSet r = build_rates(p);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                for (int k = 0; k < 2; ++k) {
                    REQUIRE(r.b_plus(a, b, k) >= 0.0);
                    REQUIRE(r.b_minus(a, b, k) >= 0.0);
                    REQUIRE(r.f_l_plus(a, b, k) >= 0.0);
                    REQUIRE(r.f_l_minus(a, b, k) >= 0.0);
                }
            }
        }
        REQUIRE(r.f_r_plus >= 0.0);
        REQUIRE(r.f_r_minus >= 0.0);
        auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
        for (int k = 0; k < 2; ++k) {
            CHECK(rel(r.b_plus(k, k, k) / r.b_minus(k, k, k), std::exp(-x.x_g)) <= 1e-12);
            CHECK(rel(r.f_l_plus(k, k, k) / r.f_l_minus(k, k, k), std::exp(-x.x_l)) <= 1e-12);
        }
        CHECK(rel(r.f_r_plus / r.f_r_minus, std::exp(-x.x_r)) <= 1e-12);
    }
}

TEST_CASE("validation names field and constraint")
{
    ModelParams p;
    p.r_p = 1.5;
    CHECK_THROWS_WITH_AS(p.validate(), "r_p = 1.5 violates 0 <= r_P <= 1", std::invalid_argument);
    p = ModelParams{};
    p.r_l = -0.1;
    CHECK_THROWS_WITH_AS(p.validate(), "r_l = -0.1 violates 0 <= r_l <= 1", std::invalid_argument);
    p = ModelParams{};
    p.tau = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ModelParams{};
    p.temp = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ModelParams{};
    p.tau = kInfiniteDecoherence;
    CHECK_NOTHROW(p.validate());
    CHECK(p.incoherent());
    CHECK(p.degenerate());
}

}
