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

#include "qdconv/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "qdconv/dynamics.hpp"
#include "qdconv/nelder_mead.hpp"
#include "qdconv/parallel.hpp"

namespace qdconv {

namespace {

struct Candidate {
    std::vector<double> coords;
    double power = 0.0;
    double step_scale = 1.0;  // band seeds start with a smaller simplex
};

// Power descending, then coordinates ascending.
bool better(const Candidate& a, const Candidate& b)
{
    if (a.power != b.power) return a.power > b.power;
    return a.coords < b.coords;
}

struct Monitor {
    int evals = 0;
    int second_law_violations = 0;
    int singular_points = 0;
    double max_power_form_discrepancy = 0.0;
    double max_eta_form_discrepancy = 0.0;
};

class PowerObjective {
public:
    PowerObjective(const ModelParams& base, std::span<const Variable> free, Monitor& monitor)
        : base_(base), origin_(scaled_energies(base)), free_(free.begin(), free.end()), monitor_(monitor)
    {
    }

    ScaledEnergies point(std::span<const double> coords) const
    {
        ScaledEnergies x = origin_;
        for (std::size_t i = 0; i < free_.size(); ++i) coordinate(x, free_[i]) = coords[i];
        return x;
    }

    double power(std::span<const double> coords) const
    {
        ++monitor_.evals;
        OperatingPoint op;
        try {
            op = evaluate_operating_point(base_, point(coords));
        } catch (const NoUniqueSteadyState&) {
            ++monitor_.singular_points;
            return 0.0;
        }
        const ThermoReport& rep = op.report;
        const double p = converter_power(rep);
        if (p > 0.0) {
            if (rep.eta && *rep.eta > rep.eta_c + 1e-9) ++monitor_.second_law_violations;
            monitor_.max_power_form_discrepancy = std::max(
                monitor_.max_power_form_discrepancy, relative_difference(rep.power, rep.power_scaled_form));
            if (rep.eta) {
                monitor_.max_eta_form_discrepancy = std::max(
                    monitor_.max_eta_form_discrepancy, relative_difference(*rep.eta, rep.eta_scaled_form));
            }
        }
        return p;
    }

private:
    ModelParams base_;
    ScaledEnergies origin_;
    std::vector<Variable> free_;
    Monitor& monitor_;
};

std::vector<Candidate> seed_grid(const PowerObjective& objective, std::span<const Variable> free,
                                 const OptimizerSettings& settings)
{
    const int n = settings.grid_points;
    std::vector<std::vector<double>> axes;
    for (Variable v : free) {
        const Interval& iv = settings.bounds[v];
        std::vector<double> axis(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) axis[static_cast<std::size_t>(i)] = iv.lo + (iv.hi - iv.lo) * i / (n - 1);
        axes.push_back(std::move(axis));
    }

    std::vector<Candidate> out;
    std::vector<std::size_t> idx(free.size(), 0);
    while (true) {
        Candidate c;
        for (std::size_t d = 0; d < free.size(); ++d) c.coords.push_back(axes[d][idx[d]]);
        c.power = objective.power(c.coords);
        if (c.power > 0.0) out.push_back(std::move(c));

        std::size_t d = 0;
        while (d < idx.size() && ++idx[d] == static_cast<std::size_t>(n)) idx[d++] = 0;
        if (d == idx.size()) break;
    }
    return out;
}

// Producing power needs 0 < mu_r - mu_l < eta_c eps_g, a band of width
// x_g eta_c / (1 - eta_c) in x_r - x_l. Near equilibrium it is far narrower
// than the grid spacing, so also seed points placed inside it.
std::vector<Candidate> seed_band(const PowerObjective& objective, const ModelParams& params,
                                 std::span<const Variable> free, const OptimizerSettings& settings)
{
    const double eta_c = 1.0 - params.temp / params.temp_p;
    if (!(eta_c > 0.0)) return {};
    const int n = settings.grid_points;
    const ScaledEnergies origin = scaled_energies(params);
    auto slot = [&](Variable v) -> std::optional<std::size_t> {
        for (std::size_t d = 0; d < free.size(); ++d) {
            if (free[d] == v) return d;
        }
        return std::nullopt;
    };
    const auto ig = slot(Variable::XG), il = slot(Variable::XL), ir = slot(Variable::XR);
    // The coordinate solved from the band condition; the others stay on the grid.
    const auto solved = ir ? ir : (il ? il : ig);
    const Variable solved_var = free[*solved];

    std::vector<Candidate> out;
    std::vector<std::size_t> idx(free.size(), 0);
    while (true) {
        std::vector<double> coords(free.size());
        ScaledEnergies x = origin;
        for (std::size_t d = 0; d < free.size(); ++d) {
            const Interval& iv = settings.bounds[free[d]];
            coords[d] = iv.lo + (iv.hi - iv.lo) * static_cast<double>(idx[d]) / (n - 1);
            coordinate(x, free[d]) = coords[d];
        }
        for (double frac : {0.25, 0.5, 0.75}) {
            const double gap = x.x_g * (1.0 - frac * eta_c) / (1.0 - eta_c);  // x_r - x_l
            double value = 0.0;
            switch (solved_var) {
            case Variable::XR: value = x.x_l + gap; break;
            case Variable::XL: value = x.x_r - gap; break;
            case Variable::XG: value = (x.x_r - x.x_l) * (1.0 - eta_c) / (1.0 - frac * eta_c); break;
            }
            const Interval& iv = settings.bounds[solved_var];
            if (!(value >= iv.lo && value <= iv.hi)) continue;
            Candidate c;
            c.coords = coords;
            c.coords[*solved] = value;
            c.power = objective.power(c.coords);
            c.step_scale = std::min(1.0, 0.25 * x.x_g * eta_c / (1.0 - eta_c));
            if (c.power > 0.0) out.push_back(std::move(c));
        }

        std::size_t d = 0;
        while (d < idx.size() && (d == *solved || ++idx[d] == static_cast<std::size_t>(n))) {
            if (d != *solved) idx[d] = 0;
            ++d;
        }
        if (d == idx.size()) break;
    }
    return out;
}

}  // namespace

std::string_view variable_name(Variable v)
{
    switch (v) {
    case Variable::XG: return "x_g";
    case Variable::XL: return "x_l";
    case Variable::XR: return "x_r";
    }
    return "?";
}

std::optional<Variable> parse_variable(std::string_view name)
{
    for (Variable v : kAllVariables) {
        if (variable_name(v) == name) return v;
    }
    return std::nullopt;
}

double& coordinate(ScaledEnergies& x, Variable v)
{
    switch (v) {
    case Variable::XG: return x.x_g;
    case Variable::XL: return x.x_l;
    case Variable::XR: return x.x_r;
    }
    throw std::invalid_argument("coordinate: unknown variable");
}

double coordinate(const ScaledEnergies& x, Variable v)
{
    return coordinate(const_cast<ScaledEnergies&>(x), v);
}

const Interval& SearchBox::operator[](Variable v) const
{
    switch (v) {
    case Variable::XG: return x_g;
    case Variable::XL: return x_l;
    case Variable::XR: return x_r;
    }
    throw std::invalid_argument("SearchBox: unknown variable");
}

Interval& SearchBox::operator[](Variable v)
{
    return const_cast<Interval&>(std::as_const(*this)[v]);
}

void OptimizerSettings::validate() const
{
    for (Variable v : kAllVariables) {
        const Interval& iv = bounds[v];
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi)) {
            std::ostringstream os;
            os << "bounds." << variable_name(v) << " = [" << iv.lo << ", " << iv.hi
               << "] must be finite with lo < hi";
            throw std::invalid_argument(os.str());
        }
    }
    if (!(bounds.x_g.lo > 0.0)) throw std::invalid_argument("bounds.x_g lower bound must be > 0");
    if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
    if (seeds < 1) throw std::invalid_argument("seeds must be >= 1");
    if (max_evals_per_seed < 1) throw std::invalid_argument("max_evals_per_seed must be >= 1");
    if (!(f_rel_tol > 0.0) || !(x_rel_tol > 0.0)) throw std::invalid_argument("tolerances must be > 0");
}

OperatingPoint evaluate_operating_point(const ModelParams& base, const ScaledEnergies& x)
{
    const ModelParams params = with_scaled_energies(base, x);
    const SteadyState ss = steady_state(build_generator(params));
    OperatingPoint op;
    op.x = x;
    op.report = thermo_report(ss.state, params);
    op.abs_rho12 = std::abs(ss.state.rho12);
    op.dephasing_limit = ss.dephasing_limit;
    return op;
}

double converter_power(const ThermoReport& report)
{
    if (!(report.j > 0.0) || !(report.power > 0.0)) return 0.0;
    return report.power;
}

std::string_view status_name(OptStatus s)
{
    switch (s) {
    case OptStatus::Converged: return "converged";
    case OptStatus::NotConverged: return "not_converged";
    case OptStatus::Degenerate: return "degenerate";
    }
    return "?";
}

OptResult maximize_power(const ModelParams& params, std::span<const Variable> free,
                         const OptimizerSettings& settings)
{
    params.validate();
    settings.validate();
    if (free.empty()) throw std::invalid_argument("maximize_power: no free variables");
    for (std::size_t i = 0; i < free.size(); ++i) {
        for (std::size_t j = i + 1; j < free.size(); ++j) {
            if (free[i] == free[j]) throw std::invalid_argument("maximize_power: duplicate free variable");
        }
    }

    Monitor monitor;
    const PowerObjective objective(params, free, monitor);

    OptResult result;
    result.free.assign(free.begin(), free.end());
    result.x_opt = scaled_energies(params);
    const double ratio = params.temp / params.temp_p;
    result.eta_c = 1.0 - ratio;
    result.eta_ca = 1.0 - std::sqrt(ratio);

    std::vector<Candidate> grid = seed_grid(objective, free, settings);
    for (Candidate& c : seed_band(objective, params, free, settings)) grid.push_back(std::move(c));
    std::sort(grid.begin(), grid.end(), better);

    NelderMeadOptions nm;
    nm.f_rel_tol = settings.f_rel_tol;
    nm.x_rel_tol = settings.x_rel_tol;
    nm.max_evals = settings.max_evals_per_seed;
    for (Variable v : free) {
        const Interval& iv = settings.bounds[v];
        nm.step.push_back(0.5 * (iv.hi - iv.lo) / (settings.grid_points - 1));
        nm.lower.push_back(iv.lo);
        nm.upper.push_back(iv.hi);
    }
    const Objective negative_power = [&](std::span<const double> c) { return -objective.power(c); };

    std::optional<Candidate> best;
    NelderMeadResult best_run;
    const std::size_t n_seeds = std::min(grid.size(), static_cast<std::size_t>(settings.seeds));
    for (std::size_t s = 0; s < n_seeds; ++s) {
        NelderMeadOptions opts = nm;
        for (double& h : opts.step) h *= grid[s].step_scale;
        NelderMeadResult run = nelder_mead_minimize(negative_power, grid[s].coords, opts);
        Candidate c{run.x, -run.f};
        if (!best || better(c, *best)) {
            best = c;
            best_run = run;
        }
        ++result.seeds_refined;
    }

    result.evals = monitor.evals;
    result.second_law_violations = monitor.second_law_violations;
    result.singular_points = monitor.singular_points;
    result.max_power_form_discrepancy = monitor.max_power_form_discrepancy;
    result.max_eta_form_discrepancy = monitor.max_eta_form_discrepancy;

    if (!best || !(best->power > 0.0)) {
        result.status = OptStatus::Degenerate;
        return result;
    }

    result.x_opt = objective.point(best->coords);
    const OperatingPoint op = evaluate_operating_point(params, result.x_opt);
    result.p_max = converter_power(op.report) / params.temp_p;
    result.eta_at_pmax = op.report.eta;
    result.abs_rho12 = op.abs_rho12;
    result.status = best_run.converged ? OptStatus::Converged : OptStatus::NotConverged;
    result.simplex_spread = best_run.f_spread;
    result.simplex_diameter = best_run.x_diameter;
    for (std::size_t i = 0; i < free.size(); ++i) {
        const Interval& iv = settings.bounds[free[i]];
        const double margin = 1e-6 * (iv.hi - iv.lo);
        if (best->coords[i] - iv.lo <= margin || iv.hi - best->coords[i] <= margin) result.bound_active = true;
    }
    return result;
}

std::vector<CurvePoint> efficiency_at_max_power_curve(const ModelParams& base,
                                                      std::span<const double> eta_c_grid,
                                                      std::span<const Variable> free,
                                                      const OptimizerSettings& settings,
                                                      unsigned workers)
{
    std::vector<CurvePoint> curve(eta_c_grid.size());
    parallel_for(curve.size(), workers, [&](std::size_t i) {
        CurvePoint& pt = curve[i];
        pt.eta_c = eta_c_grid[i];
        pt.eta_ca = 1.0 - std::sqrt(1.0 - pt.eta_c);
        pt.temp = (1.0 - pt.eta_c) * base.temp_p;
        try {
            if (!(pt.eta_c > 0.0 && pt.eta_c < 1.0)) {
                throw std::invalid_argument("eta_c must lie in (0, 1)");
            }
            ModelParams p = base;
            // Keep the scaled energies of the base when the lead temperature moves.
            const ScaledEnergies x = scaled_energies(base);
            p.temp = pt.temp;
            p = with_scaled_energies(p, x);
            pt.result = maximize_power(p, free, settings);
        } catch (const std::exception& e) {
            pt.error = e.what();
        }
    });
    return curve;
}

}  // namespace qdconv
