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

// nelder_mead.hpp: box-projected Nelder-Mead minimizer.

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qdconv {

struct NelderMeadOptions {
    double f_rel_tol = 1e-9;   // simplex value spread relative to |f_best|
    double x_rel_tol = 1e-8;   // simplex diameter relative to max(1, |x_best|)
    int max_evals = 2000;
    int max_restarts = 3;      // fresh simplices launched from a converged point
    std::vector<double> step;  // initial simplex edge per coordinate
    std::vector<double> lower; // optional box; trial points are projected into it
    std::vector<double> upper;
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    int evals = 0;
    int restarts = 0;
    bool converged = false;
    double f_spread = 0.0;
    double x_diameter = 0.0;
};

using Objective = std::function<double(std::span<const double>)>;

NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> x0,
                                      const NelderMeadOptions& options);

}  // namespace qdconv
