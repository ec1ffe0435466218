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

// dynamics.hpp: population/coherence generator of the reduced master
// equation, its steady state, and a fixed-step integrator.

#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "qdconv/model.hpp"

namespace qdconv {

/// Populations of the four dot states and the ground-doublet coherence
/// rho12 = <g1|rho|g2> (rho21 is its conjugate).
struct DensityState {
    double rho1 = 0.0;
    double rho2 = 0.0;
    double rho_e = 0.0;
    double rho0 = 1.0;
    std::complex<double> rho12{0.0, 0.0};

    double trace() const { return rho1 + rho2 + rho_e + rho0; }

    /// Populations clamped to [0, 1] for reporting.
    DensityState clamped() const;
};

/// Returns a description of the first violated invariant, if any.
std::optional<std::string> density_violation(const DensityState& state);

/// Component order of the real state vector.
enum Component : int { kRho1 = 0, kRho2, kRhoE, kRho0, kReRho12, kImRho12 };

using StateVector = Eigen::Matrix<double, 6, 1>;
using GeneratorMatrix = Eigen::Matrix<double, 6, 6>;

StateVector to_vector(const DensityState& state);
DensityState from_vector(const StateVector& v);

enum class TauMode { Finite, Infinite };

/// Linear generator v' = M v for v = (rho1, rho2, rho_e, rho0, Re rho12, Im rho12).
/// In the infinite-decoherence mode the coherence rows and columns are zero
/// and rho12 is pinned to 0.
class Generator {
public:
    const GeneratorMatrix& matrix() const { return matrix_; }
    const RateSet& rates() const { return rates_; }
    TauMode tau_mode() const { return mode_; }
    double tau() const { return tau_; }
    double delta21() const { return delta21_; }

private:
    friend Generator build_generator(const RateSet& rates, double delta21, double tau);

    GeneratorMatrix matrix_ = GeneratorMatrix::Zero();
    RateSet rates_;
    TauMode mode_ = TauMode::Finite;
    double tau_ = 0.0;
    double delta21_ = 0.0;
};

/// tau = kInfiniteDecoherence selects the incoherent mode. Throws
/// std::domain_error for negative or NaN tau.
Generator build_generator(const RateSet& rates, double delta21, double tau);
Generator build_generator(const ModelParams& params);

class NoUniqueSteadyState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class StepSizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SteadyState {
    DensityState state;
    double residual = 0.0;         // max-norm of M v
    bool dephasing_limit = false;  // resolved as the tau -> 0+ limit
};

/// Solves M v = 0 with unit trace. The rho0 balance row is replaced by the
/// normalization row.
///
/// At tau = 0 the coherent generator can carry a dark ground-state
/// combination that no bath touches (r_P = r_l = 1), leaving a degenerate
/// kernel. That case is resolved as the tau -> 0+ limit of the unique steady
/// state and flagged; any other rank deficiency throws NoUniqueSteadyState.
SteadyState steady_state(const Generator& gen);

/// Classical RK4 integration of v' = M v over `duration` with steps no larger
/// than `dt`. Throws StepSizeError when the trace drifts by more than 1e-6.
DensityState evolve(const Generator& gen, const DensityState& initial, double duration,
                    double dt);

}  // namespace qdconv
