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

// model.hpp: parameter space, bath occupations and dissipation coefficients
// for the three-level quantum-dot photoelectric converter.

#pragma once

#include <array>
#include <limits>

namespace qdconv {

/// Decoherence rate value selecting the incoherent rate-equation model.
inline constexpr double kInfiniteDecoherence = std::numeric_limits<double>::infinity();

/// Physical parameters of the converter. Units: k_B = hbar = 1, energies and
/// temperatures share one unit, rates are in units of the photon rate.
///
/// Levels: eps_g1 = eps_l, eps_g2 = eps_l + delta21, eps_e = eps_l + eps_g.
struct ModelParams {
    double eps_g = 2.0 * 5780.0;
    double eps_l = 0.0;
    double delta21 = 0.0;
    double mu_l = 0.0;
    double mu_r = 0.0;
    double temp = 295.0;
    double temp_p = 5780.0;
    double gamma_p = 1.0;
    double gamma_l = 1.0;
    double gamma_r = 1.0;
    double r_p = 0.0;
    double r_l = 0.0;
    double tau = 0.0;  // >= 0, or kInfiniteDecoherence

    /// Throws std::invalid_argument naming the offending field and constraint.
    void validate() const;

    bool incoherent() const { return tau == kInfiniteDecoherence; }
    bool degenerate() const { return delta21 == 0.0; }
};

struct ScaledEnergies {
    double x_g = 0.0;  // eps_g / temp_p
    double x_l = 0.0;  // (eps_l - mu_l) / temp
    double x_r = 0.0;  // (eps_l + eps_g - mu_r) / temp
};

/// n(x) = 1 / (e^x - 1). Throws std::domain_error for x <= 0 or non-finite x.
double bose_occupation(double x);

/// f(x) = 1 / (e^x + 1). Throws std::domain_error for non-finite x.
double fermi_occupation(double x);

ScaledEnergies scaled_energies(const ModelParams& params);

/// Returns `base` with its energies and chemical potentials replaced so that
/// scaled_energies() reproduces `x`. Uses the gauge eps_l = 0, mu_l = -x_l * temp;
/// temperatures, rates and coherence knobs are taken from `base`.
ModelParams with_scaled_energies(ModelParams base, const ScaledEnergies& x);

/// Coefficient table X_ij(k) for channel indices i, j and energy argument k,
/// all 0-based. For the photon coefficients k selects the transition energy
/// eps_e - eps_gk; for the left-lead coefficients it selects the level eps_gk.
class CoefficientTable {
public:
    double operator()(int i, int j, int k) const { return v_[index(i, j, k)]; }
    double& operator()(int i, int j, int k) { return v_[index(i, j, k)]; }

private:
    static constexpr std::size_t index(int i, int j, int k)
    {
        return static_cast<std::size_t>((k * 2 + i) * 2 + j);
    }
    std::array<double, 8> v_{};
};

/// Dissipation coefficients entering the population/coherence equations.
struct RateSet {
    CoefficientTable b_plus;     // photon absorption, gamma^P_ij n(x_k)
    CoefficientTable b_minus;    // photon emission, gamma^P_ij [1 + n(x_k)]
    CoefficientTable f_l_plus;   // left-lead injection, gamma^l_ij f(x_gk)
    CoefficientTable f_l_minus;  // left-lead extraction, gamma^l_ij [1 - f(x_gk)]
    double f_r_plus = 0.0;       // right-lead injection, gamma^r f(x_r)
    double f_r_minus = 0.0;      // right-lead extraction, gamma^r [1 - f(x_r)]
};

/// Cross couplings are gamma_12 = gamma_21 = r * gamma (real, symmetric).
RateSet build_rates(const ModelParams& params);

}  // namespace qdconv
