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

#include "qdconv/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qdconv/json_io.hpp"
#include "qdconv/parallel.hpp"

#ifndef QDCONV_VERSION
#define QDCONV_VERSION "unknown"
#endif

namespace qdconv {

namespace {

constexpr Variable kLeadLevels[] = {Variable::XL, Variable::XR};

std::string flags_for(const OptResult& r, bool dephasing_limit)
{
    std::string flags;
    const auto add = [&](const char* f) {
        if (!flags.empty()) flags += ';';
        flags += f;
    };
    if (r.status == OptStatus::Degenerate) add("no_power");
    if (r.status == OptStatus::NotConverged) add("not_converged");
    if (r.bound_active) add("bound_active");
    if (r.second_law_violations > 0) add("second_law_violation");
    if (r.singular_points > 0) add("singular_points");
    if (dephasing_limit) add("dephasing_limit");
    return flags;
}

std::vector<Cell> make_row(const ModelParams& p, const OptResult* r, const std::string& error)
{
    const double ratio = p.temp / p.temp_p;
    std::vector<Cell> row{p.r_p,   p.r_l,     p.tau,     p.temp,        p.temp_p,
                          p.gamma_p, p.gamma_l, p.gamma_r, 1.0 - ratio, 1.0 - std::sqrt(ratio)};
    if (!r) {
        row.resize(sweep_columns().size());
        row.back() = "error: " + error;
        return row;
    }
    bool limit = false;
    if (r->status != OptStatus::Degenerate) limit = evaluate_operating_point(p, r->x_opt).dephasing_limit;
    row.insert(row.end(), {r->x_opt.x_g, r->x_opt.x_l, r->x_opt.x_r, r->p_max});
    row.push_back(r->eta_at_pmax ? Cell(*r->eta_at_pmax) : Cell());
    row.push_back(r->abs_rho12);
    row.push_back(static_cast<long long>(r->evals));
    row.push_back(std::string(status_name(r->status)));
    row.push_back(static_cast<long long>(r->second_law_violations));
    row.push_back(std::max(r->max_power_form_discrepancy, r->max_eta_form_discrepancy));
    row.push_back(flags_for(*r, limit));
    return row;
}

Json provenance_for(const char* sweep, const SweepOptions& options, Json grid)
{
    return Json{{"sweep", sweep},
                {"code_version", QDCONV_VERSION},
                {"base", to_json(options.base)},
                {"optimizer", to_json(options.optimizer)},
                {"grid", std::move(grid)},
                {"grid_defaults", "grid resolutions are tool defaults unless overridden"}};
}

SweepTable eta_curve_table(const char* name, const SweepOptions& options,
                           std::span<const double> eta_c_grid, const std::vector<ModelParams>& bases,
                           Json grid)
{
    SweepTable table;
    table.name = name;
    table.columns = sweep_columns();
    table.provenance = provenance_for(name, options, std::move(grid));
    for (const ModelParams& base : bases) {
        const auto curve =
            efficiency_at_max_power_curve(base, eta_c_grid, kAllVariables, options.optimizer, options.workers);
        for (const CurvePoint& pt : curve) {
            ModelParams p = base;
            p.temp = pt.temp;
            if (pt.result) p = with_scaled_energies(p, pt.result->x_opt);
            table.add_row(make_row(p, pt.result ? &*pt.result : nullptr, pt.error));
        }
    }
    return table;
}

Json grid_json(std::span<const double> values)
{
    Json a = Json::array();
    for (double v : values) a.push_back(tau_to_json(v));
    return a;
}

}  // namespace

const std::vector<Column>& sweep_columns()
{
    static const std::vector<Column> columns{
        {"r_p", ""},       {"r_l", ""},        {"tau", "gamma"},   {"temp", "K"},
        {"temp_p", "K"},   {"gamma_p", "gamma"}, {"gamma_l", "gamma"}, {"gamma_r", "gamma"},
        {"eta_c", ""},     {"eta_ca", ""},     {"x_g", ""},        {"x_l", ""},
        {"x_r", ""},       {"p_max", "k_B*T_P*gamma"}, {"eta", ""}, {"abs_rho12", ""},
        {"evals", ""},     {"status", ""},     {"second_law_violations", ""},
        {"max_form_discrepancy", ""},          {"flags", ""},
    };
    return columns;
}

std::vector<double> default_eta_c_grid()
{
    std::vector<double> grid;
    for (int k = 1; k <= 19; ++k) grid.push_back(k / 20.0);
    return grid;
}

std::vector<double> default_r_l_values() { return {0.0, 0.3, 0.9}; }

std::vector<double> default_tau_values() { return {0.0, 1.0, 10.0, kInfiniteDecoherence}; }

SweepTable run_fig2(const CoherenceMapGrid& grid, const SweepOptions& options)
{
    if (!(grid.step > 0.0 && grid.step <= 1.0)) throw std::invalid_argument("fig2 step must lie in (0, 1]");
    const int n = static_cast<int>(std::lround(1.0 / grid.step));
    std::vector<double> axis;
    for (int k = 0; k <= n; ++k) axis.push_back(static_cast<double>(k) / n);

    SweepTable table;
    table.name = "fig2";
    table.columns = sweep_columns();
    table.provenance = provenance_for(
        "fig2", options,
        Json{{"step", grid.step}, {"points_per_axis", axis.size()}, {"x_g", grid.x_g}, {"tau", tau_to_json(grid.tau)},
             {"free", Json::array({"x_l", "x_r"})}});

    struct Slot {
        ModelParams params;
        std::optional<OptResult> result;
        std::string error;
    };
    std::vector<Slot> slots(axis.size() * axis.size());
    parallel_for(slots.size(), options.workers, [&](std::size_t i) {
        Slot& s = slots[i];
        ModelParams p = options.base;
        p.r_p = axis[i / axis.size()];
        p.r_l = axis[i % axis.size()];
        p.tau = grid.tau;
        p = with_scaled_energies(p, {grid.x_g, 0.0, 0.0});
        s.params = p;
        try {
            s.result = maximize_power(p, kLeadLevels, options.optimizer);
            s.params = with_scaled_energies(p, s.result->x_opt);
        } catch (const std::exception& e) {
            s.error = e.what();
        }
    });
    for (const Slot& s : slots) table.add_row(make_row(s.params, s.result ? &*s.result : nullptr, s.error));
    return table;
}

SweepTable run_fig3a(std::span<const double> r_l_values, std::span<const double> eta_c_grid,
                     const SweepOptions& options, double r_p, double tau)
{
    std::vector<ModelParams> bases;
    for (double r_l : r_l_values) {
        ModelParams p = options.base;
        p.r_p = r_p;
        p.r_l = r_l;
        p.tau = tau;
        bases.push_back(p);
    }
    return eta_curve_table("fig3a", options, eta_c_grid, bases,
                           Json{{"r_p", r_p}, {"tau", tau_to_json(tau)}, {"r_l_values", grid_json(r_l_values)},
                                {"eta_c_grid", grid_json(eta_c_grid)}, {"free", Json::array({"x_g", "x_l", "x_r"})}});
}

SweepTable run_fig3b(std::span<const double> tau_values, std::span<const double> eta_c_grid,
                     const SweepOptions& options, double r_p, double r_l)
{
    std::vector<ModelParams> bases;
    for (double tau : tau_values) {
        ModelParams p = options.base;
        p.r_p = r_p;
        p.r_l = r_l;
        p.tau = tau;
        bases.push_back(p);
    }
    return eta_curve_table("fig3b", options, eta_c_grid, bases,
                           Json{{"r_p", r_p}, {"r_l", r_l}, {"tau_values", grid_json(tau_values)},
                                {"eta_c_grid", grid_json(eta_c_grid)}, {"free", Json::array({"x_g", "x_l", "x_r"})}});
}

double row_regeneration_error(const SweepTable& table, std::size_t row)
{
    if (table.text(row, "status") == "" || table.text(row, "status") == "degenerate") return 0.0;

    ModelParams p;
    p.r_p = table.number(row, "r_p");
    p.r_l = table.number(row, "r_l");
    p.tau = table.number(row, "tau");
    p.temp = table.number(row, "temp");
    p.temp_p = table.number(row, "temp_p");
    p.gamma_p = table.number(row, "gamma_p");
    p.gamma_l = table.number(row, "gamma_l");
    p.gamma_r = table.number(row, "gamma_r");
    const ScaledEnergies x{table.number(row, "x_g"), table.number(row, "x_l"), table.number(row, "x_r")};

    const OperatingPoint op = evaluate_operating_point(p, x);
    double err = relative_difference(converter_power(op.report) / p.temp_p, table.number(row, "p_max"));
    if (op.report.eta) err = std::max(err, relative_difference(*op.report.eta, table.number(row, "eta")));
    err = std::max(err, std::abs(op.abs_rho12 - table.number(row, "abs_rho12")));
    return err;
}

}  // namespace qdconv
