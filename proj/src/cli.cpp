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

#include "qdconv/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "qdconv/config.hpp"
#include "qdconv/dynamics.hpp"
#include "qdconv/experiments.hpp"
#include "qdconv/json_io.hpp"
#include "qdconv/optimize.hpp"
#include "qdconv/selftest.hpp"
#include "qdconv/table.hpp"
#include "qdconv/thermo.hpp"

#ifndef QDCONV_VERSION
#define QDCONV_VERSION "unknown"
#endif

namespace qdconv {

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string human(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);  // no "-0"
    return buf;
}

std::string human(const Cell& c)
{
    if (std::holds_alternative<double>(c)) return human(std::get<double>(c));
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    return "-";
}

Cell flag(bool b) { return static_cast<long long>(b ? 1 : 0); }

Cell optional_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

void print_table(std::ostream& out, const SweepTable& t)
{
    std::vector<std::size_t> width(t.columns.size());
    std::vector<std::vector<std::string>> cells;
    for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].name.size();
    for (const auto& row : t.rows) {
        auto& line = cells.emplace_back();
        for (std::size_t c = 0; c < row.size(); ++c) {
            line.push_back(human(row[c]));
            width[c] = std::max(width[c], line.back().size());
        }
    }
    auto emit = [&](auto get) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            const std::string s = get(c);
            out << (c ? "  " : "") << s << std::string(width[c] - s.size(), ' ');
        }
        out << '\n';
    };
    emit([&](std::size_t c) { return t.columns[c].name; });
    for (const auto& line : cells) emit([&](std::size_t c) { return line[c]; });
}

// Single-row tables print as "name  value  unit" lines.
void print_record(std::ostream& out, const SweepTable& t)
{
    std::size_t width = 0;
    for (const auto& c : t.columns) width = std::max(width, c.name.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        out << t.columns[c].name << std::string(width - t.columns[c].name.size() + 2, ' ')
            << human(t.rows.at(0)[c]);
        if (!t.columns[c].unit.empty()) out << "  [" << t.columns[c].unit << "]";
        out << '\n';
    }
}

void emit(const RunConfig& cfg, SweepTable table, std::ostream& out, bool single_row)
{
    table.provenance["config"] = cfg.echo();
    table.provenance["code_version"] = QDCONV_VERSION;
    out << "# config " << cfg.echo().dump() << '\n';
    if (single_row) print_record(out, table);
    else print_table(out, table);
    if (cfg.out) {
        try {
            write_table(table, *cfg.out, cfg.format, cfg.force);
        } catch (const std::exception& e) {
            throw IoError(e.what());
        }
        out << "# wrote " << cfg.out->string() << '\n';
    }
}

SweepTable steady_table(const RunConfig& cfg)
{
    const SteadyState ss = steady_state(build_generator(cfg.params));
    const DensityState& s = ss.state;
    SweepTable t{"steady",
                 {{"rho1", ""}, {"rho2", ""}, {"rho_e", ""}, {"rho0", ""}, {"re_rho12", ""}, {"im_rho12", ""},
                  {"abs_rho12", ""}, {"trace", ""}, {"residual", "gamma"}, {"dephasing_limit", ""}},
                 {}};
    t.add_row({s.rho1, s.rho2, s.rho_e, s.rho0, s.rho12.real(), s.rho12.imag(), std::abs(s.rho12), s.trace(),
               ss.residual, flag(ss.dephasing_limit)});
    return t;
}

SweepTable thermo_table(const RunConfig& cfg)
{
    const SteadyState ss = steady_state(build_generator(cfg.params));
    const ThermoReport r = thermo_report(ss.state, cfg.params);
    SweepTable t{"thermo",
                 {{"j_l", "gamma"}, {"j_r", "gamma"}, {"j", "gamma"}, {"q_dot_p", "K*gamma"}, {"power", "K*gamma"},
                  {"eta", ""}, {"eta_c", ""}, {"eta_ca", ""}, {"power_scaled_form", "K*gamma"},
                  {"eta_scaled_form", ""}, {"stationary", ""}, {"power_forms_agree", ""},
                  {"abs_rho12", ""}, {"dephasing_limit", ""}},
                 {}};
    t.add_row({r.j_l, r.j_r, r.j, r.q_dot_p, r.power, optional_cell(r.eta), r.eta_c, r.eta_ca, r.power_scaled_form,
               r.eta_scaled_form, flag(r.stationary), flag(r.power_forms_agree), std::abs(ss.state.rho12),
               flag(ss.dephasing_limit)});
    return t;
}

SweepTable maximize_table(const RunConfig& cfg)
{
    const OptResult r = maximize_power(cfg.params, cfg.free, cfg.optimizer);
    std::string free;
    for (Variable v : r.free) free += (free.empty() ? "" : "+") + std::string(variable_name(v));
    SweepTable t{"maximize",
                 {{"free", ""}, {"x_g", ""}, {"x_l", ""}, {"x_r", ""}, {"p_max", "k_B*T_P*gamma"},
                  {"eta", ""}, {"eta_c", ""}, {"eta_ca", ""}, {"abs_rho12", ""}, {"evals", ""}, {"status", ""},
                  {"bound_active", ""}, {"seeds_refined", ""}, {"simplex_spread", ""}, {"simplex_diameter", ""},
                  {"second_law_violations", ""}, {"singular_points", ""}, {"max_power_form_discrepancy", ""},
                  {"max_eta_form_discrepancy", ""}},
                 {}};
    t.add_row({free, r.x_opt.x_g, r.x_opt.x_l, r.x_opt.x_r, r.p_max, optional_cell(r.eta_at_pmax), r.eta_c,
               r.eta_ca, r.abs_rho12, static_cast<long long>(r.evals), std::string(status_name(r.status)),
               flag(r.bound_active), static_cast<long long>(r.seeds_refined), r.simplex_spread,
               r.simplex_diameter, static_cast<long long>(r.second_law_violations),
               static_cast<long long>(r.singular_points), r.max_power_form_discrepancy,
               r.max_eta_form_discrepancy});
    return t;
}

SweepOptions sweep_options(const RunConfig& cfg)
{
    return {cfg.params, cfg.optimizer, cfg.workers};
}

int error_record(std::ostream& err, const char* kind, const std::string& message, int status)
{
    err << Json{{"error", kind}, {"message", message}}.dump() << '\n';
    return status;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Coherence-assisted quantum-dot photovoltaic converter model", "qdconv"};
    app.set_version_flag("--version", QDCONV_VERSION);
    app.require_subcommand(1, 1);

    std::string config_path;
    ConfigOverrides ov;
    std::string out_path, format, tau;
    unsigned workers = 0;
    struct NumericFlag {
        const char* help;
        double value;
        std::optional<double>* slot;
    };
    std::map<std::string, NumericFlag> numeric{
        {"--r-p", {"photon cross-coupling r_p in [0, 1]", 0, &ov.r_p}},
        {"--r-l", {"left-lead cross-coupling r_l in [0, 1]", 0, &ov.r_l}},
        {"--x-g", {"scaled band gap eps_g / T_P", 0, &ov.x_g}},
        {"--x-l", {"scaled ground level (eps_l - mu_l) / T", 0, &ov.x_l}},
        {"--x-r", {"scaled excited level (eps_e - mu_r) / T", 0, &ov.x_r}},
        {"--temp", {"lead temperature T [K]", 0, &ov.temp}},
        {"--temp-p", {"photon temperature T_P [K]", 0, &ov.temp_p}},
        {"--gamma", {"all three bare rates", 0, &ov.gamma}},
    };

    app.option_defaults()->always_capture_default(false);
    app.add_option("--config", config_path, "JSON configuration file");
    auto* out_opt = app.add_option("--out", out_path, "write machine-readable output here");
    auto* fmt_opt = app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    auto* workers_opt = app.add_option("--workers", workers, "worker threads (default: QDCONV_WORKERS or all cores)")
                            ->check(CLI::PositiveNumber);
    app.add_flag("--force", ov.force, "overwrite existing output");
    auto* tau_opt = app.add_option("--tau", tau, "decoherence rate, or inf");
    std::map<std::string, CLI::Option*> numeric_opts;
    for (auto& [name, flag] : numeric) numeric_opts[name] = app.add_option(name, flag.value, flag.help);

    const std::vector<std::pair<std::string, std::string>> commands{
        {"steady", "print the steady-state density matrix"},
        {"thermo", "print currents, power and efficiency"},
        {"maximize", "maximize power over the free scaled energies"},
        {"fig2", "efficiency at max power over the (r_p, r_l) plane"},
        {"fig3a", "efficiency at max power against eta_c for several r_l"},
        {"fig3b", "efficiency at max power against eta_c for several tau"},
        {"selftest", "run the invariant suites"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << QDCONV_VERSION << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        return error_record(err, "usage", e.what(), kExitUsage);
    }

    for (auto& [name, flag] : numeric) {
        if (numeric_opts[name]->count()) *flag.slot = flag.value;
    }
    if (*out_opt) ov.out = out_path;
    if (*fmt_opt) ov.format = format;
    if (*workers_opt) ov.workers = workers;
    if (*tau_opt) ov.tau = tau;

    const std::string command = app.get_subcommands().front()->get_name();
    RunConfig cfg;
    try {
        cfg = parse_config_file(config_path, ov);
    } catch (const std::exception& e) {
        return error_record(err, "config", e.what(), kExitUsage);
    }

    try {
        if (command == "steady") {
            emit(cfg, steady_table(cfg), out, true);
        } else if (command == "thermo") {
            emit(cfg, thermo_table(cfg), out, true);
        } else if (command == "maximize") {
            emit(cfg, maximize_table(cfg), out, true);
        } else if (command == "fig2") {
            emit(cfg, run_fig2(cfg.fig2, sweep_options(cfg)), out, false);
        } else if (command == "fig3a") {
            emit(cfg,
                 run_fig3a(cfg.fig3a_r_l_values, cfg.fig3a_eta_c_grid, sweep_options(cfg), cfg.fig3a_r_p,
                           cfg.fig3a_tau),
                 out, false);
        } else if (command == "selftest") {
            const auto results = run_selftest();
            int failed = 0;
            for (const auto& r : results) {
                out << (r.passed ? "PASS " : "FAIL ") << r.name;
                if (!r.detail.empty()) out << "  " << r.detail;
                out << '\n';
                failed += r.passed ? 0 : 1;
            }
            out << "passed " << results.size() - failed << " of " << results.size() << '\n';
            if (failed) return error_record(err, "selftest", std::to_string(failed) + " check(s) failed", kExitSelftest);
        } else {
            emit(cfg,
                 run_fig3b(cfg.fig3b_tau_values, cfg.fig3b_eta_c_grid, sweep_options(cfg), cfg.fig3b_r_p,
                           cfg.fig3b_r_l),
                 out, false);
        }
    } catch (const IoError& e) {
        return error_record(err, "io", e.what(), kExitIo);
    } catch (const NoUniqueSteadyState& e) {
        return error_record(err, "no_unique_steady_state", e.what(), kExitComputation);
    } catch (const std::exception& e) {
        return error_record(err, "computation", e.what(), kExitComputation);
    }
    return kExitOk;
}

}  // namespace qdconv
