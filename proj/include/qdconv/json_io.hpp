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

// json_io.hpp: JSON encodings of the domain types.

#pragma once

#include "qdconv/dynamics.hpp"
#include "qdconv/model.hpp"
#include "qdconv/optimize.hpp"
#include "qdconv/table.hpp"
#include "qdconv/thermo.hpp"

namespace qdconv {

/// Finite tau as a number, the incoherent mode as "inf".
Json tau_to_json(double tau);

/// Accepts a non-negative number or one of "inf", "infinite", "INFINITE".
/// Throws std::invalid_argument otherwise.
double tau_from_json(const Json& j);

/// Non-finite values become null / "inf" strings so the output stays valid JSON.
Json number_to_json(double v);

Json to_json(const ModelParams& p);
Json to_json(const ScaledEnergies& x);
Json to_json(const OptimizerSettings& s);
Json to_json(const DensityState& s);
Json to_json(const ThermoReport& r);
Json to_json(const OptResult& r);

}  // namespace qdconv
