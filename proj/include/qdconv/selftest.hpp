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

// selftest.hpp: invariant suites runnable from the command line.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "qdconv/model.hpp"

namespace qdconv {

/// Random valid parameters at the default temperatures and unit rates:
/// r_p, r_l ~ U[0, 1], x_g ~ U[0.5, 10], x_l, x_r ~ U[-5, 5], tau ~ U[0, 10].
ModelParams random_model_params(std::mt19937_64& rng);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelftestOptions {
    int draws = 200;
    int oracle_draws = 5;
    unsigned long long seed = 20240611ULL;
};

std::vector<CheckResult> run_selftest(const SelftestOptions& options = {});

}  // namespace qdconv
