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

// thermo.hpp: steady-state currents, power and efficiencies.

#pragma once

#include <optional>

#include "qdconv/dynamics.hpp"
#include "qdconv/model.hpp"

namespace qdconv {

/// Electron currents from each lead into the dot (rate units). At a steady
/// state j_l = -j_r.
struct Currents {
    double j_l = 0.0;
    double j_r = 0.0;
};

Currents currents(const DensityState& state, const ModelParams& params);

struct ReferenceEfficiencies {
    double eta_c = 0.0;   // 1 - T/T_P
    double eta_ca = 0.0;  // 1 - sqrt(T/T_P)
};

/// Throws std::domain_error unless 0 < temp <= temp_p.
ReferenceEfficiencies reference_efficiencies(double temp, double temp_p);

struct ThermoReport {
    double j_l = 0.0;
    double j_r = 0.0;
    double j = 0.0;        // converter current, j_l
    double q_dot_p = 0.0;  // eps_g * j
    double power = 0.0;    // (mu_r - mu_l) * j
    std::optional<double> eta;  // absent when j == 0
    double eta_c = 0.0;
    double eta_ca = 0.0;

    /// The same power through T_P [x_g - (1 - eta_c)(x_r - x_l)] j.
    double power_scaled_form = 0.0;
    /// 1 - (1 - eta_c)(x_r - x_l)/x_g, independent of the current.
    double eta_scaled_form = 0.0;

    bool stationary = true;         // |j_l + j_r| <= 1e-10 max(1, |j_l|)
    bool power_forms_agree = true;  // both power forms equal to 1e-12 relative
};

/// Reference efficiencies are computed for any temperature ordering here;
/// eta_c < 0 signals T > T_P.
ThermoReport thermo_report(const DensityState& state, const ModelParams& params);

/// Relative difference |a - b| / max(|a|, |b|), 0 when both vanish.
double relative_difference(double a, double b);

/// Closed-form structure of the steady coherence in the degenerate
/// symmetric configuration. rho12 = numerator / Omega with an unspecified
/// normalization Omega; only zeros and sign are checkable.
struct CoherenceStructure {
    /// 2 gamma_P (r_P - r_l) { n(x_g) f(x_l) - [1 + n(x_g) - f(x_l)] f(x_r) }
    double numerator = 0.0;
    /// (1/2) gamma_P (r_l - r_P) csch(x_g/2) sech(x_l/2) sech(x_r/2) sinh((x_g + x_l - x_r)/2)
    double product_form = 0.0;
    double form_discrepancy = 0.0;  // relative difference of the two forms
    bool coupling_zero = false;     // r_P == r_l
    bool affinity_zero = false;     // x_g + x_l - x_r == 0
    /// Sign of Re rho12 at the steady state. The solved coherence carries the
    /// opposite sign of the numerator (Omega < 0 in this convention).
    int predicted_sign = 0;
};

/// Throws std::domain_error for x_g <= 0 and std::invalid_argument for a
/// non-degenerate configuration.
CoherenceStructure analytic_coherence_structure(const ModelParams& params);

}  // namespace qdconv
