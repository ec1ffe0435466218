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

// optimize.hpp: power maximization over the scaled energies.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdconv/model.hpp"
#include "qdconv/thermo.hpp"

namespace qdconv {

enum class Variable { XG = 0, XL = 1, XR = 2 };

std::string_view variable_name(Variable v);
std::optional<Variable> parse_variable(std::string_view name);

double& coordinate(ScaledEnergies& x, Variable v);
double coordinate(const ScaledEnergies& x, Variable v);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct SearchBox {
    Interval x_g{0.1, 30.0};
    Interval x_l{-20.0, 20.0};
    Interval x_r{-20.0, 20.0};

    const Interval& operator[](Variable v) const;
    Interval& operator[](Variable v);
};

struct OptimizerSettings {
    int grid_points = 16;  // coarse seed grid per free dimension
    int seeds = 8;         // best grid points refined by the simplex
    double f_rel_tol = 1e-9;
    double x_rel_tol = 1e-8;
    int max_evals_per_seed = 2000;
    SearchBox bounds;

    /// Throws std::invalid_argument on empty/inverted/infinite bounds.
    void validate() const;
};

/// Thermodynamics at one operating point.
struct OperatingPoint {
    ScaledEnergies x;
    ThermoReport report;
    double abs_rho12 = 0.0;
    bool dephasing_limit = false;
};

/// Steady state and thermodynamics of `base` moved to scaled energies `x`.
/// Propagates NoUniqueSteadyState.
OperatingPoint evaluate_operating_point(const ModelParams& base, const ScaledEnergies& x);

/// Power clipped to the converter regime: 0 unless j > 0 and P > 0.
double converter_power(const ThermoReport& report);

enum class OptStatus { Converged, NotConverged, Degenerate };

std::string_view status_name(OptStatus s);

struct OptResult {
    std::vector<Variable> free;
    ScaledEnergies x_opt;
    double p_max = 0.0;  // P / T_P, i.e. units of k_B T_P times the rate unit
    std::optional<double> eta_at_pmax;
    double abs_rho12 = 0.0;
    double eta_c = 0.0;
    double eta_ca = 0.0;
    int evals = 0;
    OptStatus status = OptStatus::Degenerate;
    bool bound_active = false;
    int seeds_refined = 0;
    double simplex_spread = 0.0;
    double simplex_diameter = 0.0;

    // Monitors over every evaluated point.
    int second_law_violations = 0;   // P > 0 with eta > eta_c + 1e-9
    int singular_points = 0;         // no unique steady state, scored as 0
    double max_power_form_discrepancy = 0.0;
    double max_eta_form_discrepancy = 0.0;
};

/// Multi-start maximization of the converter power over `free` scaled
/// energies; the others stay at the values implied by `params`. Coarse grid
/// seeding, simplex refinement of the best seeds, deterministic merge by
/// (power desc, coordinates asc).
OptResult maximize_power(const ModelParams& params, std::span<const Variable> free,
                         const OptimizerSettings& settings = {});

struct CurvePoint {
    double eta_c = 0.0;
    double eta_ca = 0.0;
    double temp = 0.0;
    std::optional<OptResult> result;  // absent on optimizer failure
    std::string error;
};

/// For each eta_c, temp = (1 - eta_c) temp_p at the base photon temperature,
/// then maximize_power over `free`. Failures become flagged gaps.
std::vector<CurvePoint> efficiency_at_max_power_curve(const ModelParams& base,
                                                      std::span<const double> eta_c_grid,
                                                      std::span<const Variable> free,
                                                      const OptimizerSettings& settings = {},
                                                      unsigned workers = 1);

inline constexpr Variable kAllVariables[] = {Variable::XG, Variable::XL, Variable::XR};

}  // namespace qdconv
