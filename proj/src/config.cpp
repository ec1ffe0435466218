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

#include "qdconv/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qdconv/json_io.hpp"
#include "qdconv/parallel.hpp"

namespace qdconv {

namespace {

// Reads keys from one JSON object and reports the ones never asked for.
class Section {
public:
    Section(const Json& doc, std::string path) : path_(std::move(path))
    {
        if (doc.is_null()) return;
        if (!doc.is_object()) throw ConfigError(path_ + ": expected an object");
        obj_ = &doc;
    }

    bool has(const std::string& key) const { return obj_ && obj_->contains(key); }

    const Json& raw(const std::string& key) const { return obj_->at(key); }

    double number(const std::string& key, double fallback)
    {
        if (!has(key)) return fallback;
        const Json& v = raw(key);
        if (!v.is_number()) throw ConfigError(where(key) + ": expected a number");
        return v.get<double>();
    }

    int integer(const std::string& key, int fallback)
    {
        if (!has(key)) return fallback;
        const Json& v = raw(key);
        if (!v.is_number_integer()) throw ConfigError(where(key) + ": expected an integer");
        return v.get<int>();
    }

    std::string string(const std::string& key, const std::string& fallback)
    {
        if (!has(key)) return fallback;
        const Json& v = raw(key);
        if (!v.is_string()) throw ConfigError(where(key) + ": expected a string");
        return v.get<std::string>();
    }

    bool boolean(const std::string& key, bool fallback)
    {
        if (!has(key)) return fallback;
        const Json& v = raw(key);
        if (!v.is_boolean()) throw ConfigError(where(key) + ": expected true or false");
        return v.get<bool>();
    }

    double tau(const std::string& key, double fallback)
    {
        if (!has(key)) return fallback;
        try {
            return tau_from_json(raw(key));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(where(key) + ": " + e.what());
        }
    }

    std::vector<double> numbers(const std::string& key, std::vector<double> fallback, bool allow_inf = false)
    {
        if (!has(key)) return fallback;
        const Json& v = raw(key);
        if (!v.is_array()) throw ConfigError(where(key) + ": expected an array");
        std::vector<double> out;
        for (const Json& e : v) {
            if (allow_inf) {
                try {
                    out.push_back(tau_from_json(e));
                } catch (const std::invalid_argument& err) {
                    throw ConfigError(where(key) + ": " + err.what());
                }
            } else {
                if (!e.is_number()) throw ConfigError(where(key) + ": expected numbers");
                out.push_back(e.get<double>());
            }
        }
        return out;
    }

    Section sub(const std::string& key)
    {
        if (!has(key)) return Section(Json(), where(key));
        return Section(raw(key), where(key));
    }

private:
    std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const Json* obj_ = nullptr;
    std::string path_;
};

// Allowed keys; nested objects list their own keys, null marks a leaf.
const Json& schema()
{
    static const Json s = [] {
        auto leaves = [](std::initializer_list<const char*> keys) {
            Json o = Json::object();
            for (const char* k : keys) o[k] = nullptr;
            return o;
        };
        Json bounds = leaves({"x_g", "x_l", "x_r"});
        Json opt = leaves({"free", "grid_points", "seeds", "f_rel_tol", "x_rel_tol", "max_evals_per_seed"});
        opt["bounds"] = bounds;
        return Json{
            {"model", leaves({"temp", "temp_p", "gamma", "gamma_p", "gamma_l", "gamma_r", "r_p", "r_l", "tau",
                              "delta21"})},
            {"scaled", leaves({"x_g", "x_l", "x_r"})},
            {"physical", leaves({"eps_g", "eps_l", "mu_l", "mu_r"})},
            {"optimizer", opt},
            {"sweeps",
             {{"fig2", leaves({"step", "x_g", "tau"})},
              {"fig3a", leaves({"r_p", "tau", "r_l_values", "eta_c_grid"})},
              {"fig3b", leaves({"r_p", "r_l", "tau_values", "eta_c_grid"})}}},
            {"output", leaves({"path", "format", "force"})},
            {"workers", nullptr},
        };
    }();
    return s;
}

void collect_unknown(const Json& doc, const Json& allowed, const std::string& path, std::vector<std::string>& out)
{
    if (!doc.is_object()) return;
    for (const auto& [key, value] : doc.items()) {
        const std::string name = path.empty() ? key : path + "." + key;
        if (!allowed.contains(key)) out.push_back(name);
        else if (allowed.at(key).is_object()) collect_unknown(value, allowed.at(key), name, out);
    }
}

Interval interval(Section& s, const std::string& key, Interval fallback)
{
    const std::vector<double> v = s.numbers(key, {fallback.lo, fallback.hi});
    if (v.size() != 2) throw ConfigError("optimizer.bounds." + key + ": expected [lo, hi]");
    return {v[0], v[1]};
}

void check_unit_interval(const char* what, const std::vector<double>& values, bool open)
{
    for (double v : values) {
        const bool ok = open ? (v > 0.0 && v < 1.0) : (v >= 0.0 && v <= 1.0);
        if (!ok) {
            std::ostringstream os;
            os << what << " value " << v << " outside " << (open ? "(0, 1)" : "[0, 1]");
            throw ConfigError(os.str());
        }
    }
}

Json grid_json(const std::vector<double>& values)
{
    Json a = Json::array();
    for (double v : values) a.push_back(tau_to_json(v));
    return a;
}

}  // namespace

Json RunConfig::echo() const
{
    Json model{{"temp", params.temp},       {"temp_p", params.temp_p}, {"gamma_p", params.gamma_p},
               {"gamma_l", params.gamma_l}, {"gamma_r", params.gamma_r}, {"r_p", params.r_p},
               {"r_l", params.r_l},         {"tau", tau_to_json(params.tau)}, {"delta21", params.delta21}};
    Json doc{{"model", std::move(model)}};
    if (scaled_input) {
        doc["scaled"] = to_json(scaled);
    } else {
        doc["physical"] = Json{{"eps_g", params.eps_g}, {"eps_l", params.eps_l}, {"mu_l", params.mu_l},
                               {"mu_r", params.mu_r}};
    }
    Json opt = to_json(optimizer);
    Json free_vars = Json::array();
    for (Variable v : free) free_vars.push_back(std::string(variable_name(v)));
    opt["free"] = std::move(free_vars);
    doc["optimizer"] = std::move(opt);
    doc["sweeps"] = Json{
        {"fig2", {{"step", fig2.step}, {"x_g", fig2.x_g}, {"tau", tau_to_json(fig2.tau)}}},
        {"fig3a",
         {{"r_p", fig3a_r_p}, {"tau", tau_to_json(fig3a_tau)}, {"r_l_values", grid_json(fig3a_r_l_values)},
          {"eta_c_grid", grid_json(fig3a_eta_c_grid)}}},
        {"fig3b",
         {{"r_p", fig3b_r_p}, {"r_l", fig3b_r_l}, {"tau_values", grid_json(fig3b_tau_values)},
          {"eta_c_grid", grid_json(fig3b_eta_c_grid)}}},
    };
    Json output{{"format", format == TableFormat::Csv ? "csv" : "json"}, {"force", force}};
    output["path"] = out ? Json(out->string()) : Json(nullptr);
    doc["output"] = std::move(output);
    doc["workers"] = workers;
    return doc;
}

RunConfig parse_config(const Json& doc, const ConfigOverrides& ov)
{
    RunConfig cfg;
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
    std::vector<std::string> unknown;
    collect_unknown(doc, schema(), "", unknown);
    if (!unknown.empty()) {
        std::string msg = "config: unknown key(s):";
        for (const auto& k : unknown) msg += " " + k;
        throw ConfigError(msg);
    }
    Section root(doc, "");

    // Model knobs shared by both energy forms.
    Section model = root.sub("model");
    ModelParams& p = cfg.params;
    p.temp = ov.temp.value_or(model.number("temp", 295.0));
    p.temp_p = ov.temp_p.value_or(model.number("temp_p", 5780.0));
    const double gamma = model.number("gamma", 1.0);
    p.gamma_p = model.number("gamma_p", gamma);
    p.gamma_l = model.number("gamma_l", gamma);
    p.gamma_r = model.number("gamma_r", gamma);
    if (ov.gamma) p.gamma_p = p.gamma_l = p.gamma_r = *ov.gamma;
    p.r_p = ov.r_p.value_or(model.number("r_p", 0.0));
    p.r_l = ov.r_l.value_or(model.number("r_l", 0.0));
    p.tau = model.tau("tau", 0.0);
    if (ov.tau) {
        try {
            p.tau = tau_from_json(*ov.tau == "inf" || *ov.tau == "infinite" || *ov.tau == "INFINITE"
                                      ? Json(*ov.tau)
                                      : Json(std::stod(*ov.tau)));
        } catch (const std::exception& e) {
            throw ConfigError(std::string("--tau: ") + e.what());
        }
    }
    p.delta21 = model.number("delta21", 0.0);

    const bool scaled_flags = ov.x_g || ov.x_l || ov.x_r;
    if (root.has("physical") && (root.has("scaled") || scaled_flags)) {
        throw ConfigError("config: both physical and scaled energy blocks present; give exactly one");
    }

    if (root.has("physical")) {
        Section phys = root.sub("physical");
        for (const char* key : {"eps_g", "eps_l", "mu_l", "mu_r"}) {
            if (!phys.has(key)) throw ConfigError(std::string("physical.") + key + ": required");
        }
        p.eps_g = phys.number("eps_g", 0.0);
        p.eps_l = phys.number("eps_l", 0.0);
        p.mu_l = phys.number("mu_l", 0.0);
        p.mu_r = phys.number("mu_r", 0.0);
        cfg.scaled_input = false;
        cfg.scaled = scaled_energies(p);
    } else {
        Section sc = root.sub("scaled");
        cfg.scaled.x_g = ov.x_g.value_or(sc.number("x_g", 2.0));
        cfg.scaled.x_l = ov.x_l.value_or(sc.number("x_l", -3.0));
        cfg.scaled.x_r = ov.x_r.value_or(sc.number("x_r", 4.0));
        const double delta21 = p.delta21;
        p = with_scaled_energies(p, cfg.scaled);
        p.delta21 = delta21;
    }
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    Section opt = root.sub("optimizer");
    OptimizerSettings& os = cfg.optimizer;
    os.grid_points = opt.integer("grid_points", os.grid_points);
    os.seeds = opt.integer("seeds", os.seeds);
    os.f_rel_tol = opt.number("f_rel_tol", os.f_rel_tol);
    os.x_rel_tol = opt.number("x_rel_tol", os.x_rel_tol);
    os.max_evals_per_seed = opt.integer("max_evals_per_seed", os.max_evals_per_seed);
    if (opt.has("free")) {
        const Json& f = opt.raw("free");
        if (!f.is_array() || f.empty()) throw ConfigError("optimizer.free: expected a non-empty array");
        cfg.free.clear();
        for (const Json& e : f) {
            const auto v = e.is_string() ? parse_variable(e.get<std::string>()) : std::nullopt;
            if (!v) throw ConfigError("optimizer.free: entries must be \"x_g\", \"x_l\" or \"x_r\"");
            if (std::find(cfg.free.begin(), cfg.free.end(), *v) != cfg.free.end()) {
                throw ConfigError("optimizer.free: duplicate " + e.get<std::string>());
            }
            cfg.free.push_back(*v);
        }
    }
    Section bounds = opt.sub("bounds");
    os.bounds.x_g = interval(bounds, "x_g", os.bounds.x_g);
    os.bounds.x_l = interval(bounds, "x_l", os.bounds.x_l);
    os.bounds.x_r = interval(bounds, "x_r", os.bounds.x_r);
    try {
        os.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("optimizer: ") + e.what());
    }

    Section sweeps = root.sub("sweeps");
    Section f2 = sweeps.sub("fig2");
    cfg.fig2.step = f2.number("step", cfg.fig2.step);
    cfg.fig2.x_g = f2.number("x_g", cfg.fig2.x_g);
    cfg.fig2.tau = f2.tau("tau", cfg.fig2.tau);
    if (!(cfg.fig2.step > 0.0 && cfg.fig2.step <= 1.0)) throw ConfigError("sweeps.fig2.step must lie in (0, 1]");
    if (!(cfg.fig2.x_g > 0.0)) throw ConfigError("sweeps.fig2.x_g must be > 0");

    Section f3a = sweeps.sub("fig3a");
    cfg.fig3a_r_p = f3a.number("r_p", cfg.fig3a_r_p);
    cfg.fig3a_tau = f3a.tau("tau", cfg.fig3a_tau);
    cfg.fig3a_r_l_values = f3a.numbers("r_l_values", cfg.fig3a_r_l_values);
    cfg.fig3a_eta_c_grid = f3a.numbers("eta_c_grid", cfg.fig3a_eta_c_grid);
    Section f3b = sweeps.sub("fig3b");
    cfg.fig3b_r_p = f3b.number("r_p", cfg.fig3b_r_p);
    cfg.fig3b_r_l = f3b.number("r_l", cfg.fig3b_r_l);
    cfg.fig3b_tau_values = f3b.numbers("tau_values", cfg.fig3b_tau_values, true);
    cfg.fig3b_eta_c_grid = f3b.numbers("eta_c_grid", cfg.fig3b_eta_c_grid);
    check_unit_interval("sweeps.fig3a.r_p", {cfg.fig3a_r_p}, false);
    check_unit_interval("sweeps.fig3a.r_l_values", cfg.fig3a_r_l_values, false);
    check_unit_interval("sweeps.fig3a.eta_c_grid", cfg.fig3a_eta_c_grid, true);
    check_unit_interval("sweeps.fig3b.r_p", {cfg.fig3b_r_p}, false);
    check_unit_interval("sweeps.fig3b.r_l", {cfg.fig3b_r_l}, false);
    check_unit_interval("sweeps.fig3b.eta_c_grid", cfg.fig3b_eta_c_grid, true);

    Section output = root.sub("output");
    if (output.has("path")) {
        const Json& path = output.raw("path");
        if (path.is_string()) cfg.out = path.get<std::string>();
        else if (!path.is_null()) throw ConfigError("output.path: expected a string");
    }
    std::string format = output.string("format", "csv");
    cfg.force = output.boolean("force", false);
    if (ov.out) cfg.out = *ov.out;
    if (ov.format) format = *ov.format;
    if (ov.force) cfg.force = true;
    if (format == "csv") cfg.format = TableFormat::Csv;
    else if (format == "json") cfg.format = TableFormat::Json;
    else throw ConfigError("output.format: expected \"csv\" or \"json\", got \"" + format + "\"");

    if (cfg.out) {
        const auto parent = cfg.out->parent_path();
        if (!parent.empty() && !std::filesystem::is_directory(parent)) {
            throw ConfigError("output.path: directory " + parent.string() + " does not exist");
        }
        if (std::filesystem::is_directory(*cfg.out)) {
            throw ConfigError("output.path: " + cfg.out->string() + " is a directory");
        }
        if (!cfg.force && std::filesystem::exists(*cfg.out)) {
            throw ConfigError("output.path: refusing to overwrite " + cfg.out->string() + " without --force");
        }
    }

    const int workers = root.integer("workers", 0);
    if (workers < 0) throw ConfigError("workers must be >= 1");
    cfg.workers = ov.workers.value_or(workers > 0 ? static_cast<unsigned>(workers) : default_workers());
    if (cfg.workers == 0) throw ConfigError("workers must be >= 1");

    return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path, const ConfigOverrides& overrides)
{
    if (path.empty()) return parse_config(Json::object(), overrides);
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(doc, overrides);
}

}  // namespace qdconv
