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

// experiments.hpp: canned sweeps over coherence strengths, decoherence and
// Carnot efficiency.

#pragma once

#include <span>
#include <vector>

#include "qdconv/model.hpp"
#include "qdconv/optimize.hpp"
#include "qdconv/table.hpp"

namespace qdconv {

struct SweepOptions {
    ModelParams base;  // temperatures and rates; energies are set per row
    OptimizerSettings optimizer;
    unsigned workers = 1;
};

/// Coherence-strength map at fixed bandgap: power maximized over x_l, x_r
/// on an (r_p, r_l) grid covering [0, 1]^2.
struct CoherenceMapGrid {
    double step = 0.05;
    double x_g = 2.0;
    double tau = 0.0;
};

SweepTable run_fig2(const CoherenceMapGrid& grid, const SweepOptions& options);

/// Efficiency at maximum power against eta_c for several r_l at fixed r_p, tau.
SweepTable run_fig3a(std::span<const double> r_l_values, std::span<const double> eta_c_grid,
                     const SweepOptions& options, double r_p = 0.9, double tau = 0.0);

/// Efficiency at maximum power against eta_c for several tau at fixed r_p, r_l.
SweepTable run_fig3b(std::span<const double> tau_values, std::span<const double> eta_c_grid,
                     const SweepOptions& options, double r_p = 0.9, double r_l = 0.0);

std::vector<double> default_eta_c_grid();  // 0.05, 0.10, ..., 0.95
std::vector<double> default_r_l_values();  // 0, 0.3, 0.9
std::vector<double> default_tau_values();  // 0, 1, 10, inf

/// Column names shared by all sweep tables.
const std::vector<Column>& sweep_columns();

/// Recomputes p_max, eta and |rho12| of a row from its echoed inputs and
/// returns the largest relative deviation; 0 for rows without a maximizer.
double row_regeneration_error(const SweepTable& table, std::size_t row);

}  // namespace qdconv
