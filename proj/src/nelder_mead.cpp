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

#include "qdconv/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qdconv {

namespace {

using Point = std::vector<double>;

class Simplex {
public:
    Simplex(const Objective& f, const NelderMeadOptions& opt, int& evals)
        : f_(f), opt_(opt), evals_(evals)
    {
    }

    void reset(Point x0)
    {
        const std::size_t n = x0.size();
        vertices_.assign(1, project(x0));
        for (std::size_t i = 0; i < n; ++i) {
            Point v = vertices_[0];
            v[i] += opt_.step[i];
            v = project(v);
            if (v[i] == vertices_[0][i]) v[i] = project_coord(i, vertices_[0][i] - opt_.step[i]);
            vertices_.push_back(std::move(v));
        }
        values_.clear();
        for (const auto& v : vertices_) values_.push_back(eval(v));
        order();
    }

    const Point& best() const { return vertices_.front(); }
    double best_value() const { return values_.front(); }

    double spread() const { return values_.back() - values_.front(); }

    double diameter() const
    {
        double d = 0.0;
        for (const auto& v : vertices_) {
            for (std::size_t i = 0; i < v.size(); ++i) d = std::max(d, std::abs(v[i] - best()[i]));
        }
        return d;
    }

    bool converged() const
    {
        double scale = 1.0;
        for (double c : best()) scale = std::max(scale, std::abs(c));
        return spread() <= opt_.f_rel_tol * std::abs(best_value()) &&
               diameter() <= opt_.x_rel_tol * scale;
    }

    void step()
    {
        const std::size_t n = vertices_.size() - 1;
        Point centroid(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) centroid[i] += vertices_[j][i];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        const Point& worst = vertices_.back();
        const double f_worst = values_.back();
        const double f_second = values_[n - 1];

        const Point xr = along(centroid, worst, -1.0);
        const double fr = eval(xr);
        if (fr < values_.front()) {
            const Point xe = along(centroid, worst, -2.0);
            const double fe = eval(xe);
            if (fe < fr) replace_worst(xe, fe);
            else replace_worst(xr, fr);
        } else if (fr < f_second) {
            replace_worst(xr, fr);
        } else if (fr < f_worst) {
            const Point xc = along(centroid, worst, -0.5);
            const double fc = eval(xc);
            if (fc <= fr) replace_worst(xc, fc);
            else shrink();
        } else {
            const Point xc = along(centroid, worst, 0.5);
            const double fc = eval(xc);
            if (fc < f_worst) replace_worst(xc, fc);
            else shrink();
        }
        order();
    }

private:
    double eval(const Point& x)
    {
        ++evals_;
        return f_(x);
    }

    double project_coord(std::size_t i, double v) const
    {
        if (!opt_.lower.empty()) v = std::max(v, opt_.lower[i]);
        if (!opt_.upper.empty()) v = std::min(v, opt_.upper[i]);
        return v;
    }

    Point project(Point x) const
    {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = project_coord(i, x[i]);
        return x;
    }

    // centroid + t (worst - centroid), projected into the box.
    Point along(const Point& centroid, const Point& worst, double t) const
    {
        Point x(centroid.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = centroid[i] + t * (worst[i] - centroid[i]);
        return project(std::move(x));
    }

    void replace_worst(const Point& x, double fx)
    {
        vertices_.back() = x;
        values_.back() = fx;
    }

    void shrink()
    {
        const Point b = vertices_.front();
        for (std::size_t j = 1; j < vertices_.size(); ++j) {
            for (std::size_t i = 0; i < b.size(); ++i) {
                vertices_[j][i] = b[i] + 0.5 * (vertices_[j][i] - b[i]);
            }
            values_[j] = eval(vertices_[j]);
        }
    }

    void order()
    {
        std::vector<std::size_t> idx(vertices_.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return values_[a] < values_[b]; });
        std::vector<Point> v;
        std::vector<double> f;
        for (std::size_t i : idx) {
            v.push_back(std::move(vertices_[i]));
            f.push_back(values_[i]);
        }
        vertices_ = std::move(v);
        values_ = std::move(f);
    }

    const Objective& f_;
    const NelderMeadOptions& opt_;
    int& evals_;
    std::vector<Point> vertices_;
    std::vector<double> values_;
};

}  // namespace

NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> x0,
                                      const NelderMeadOptions& options)
{
    if (x0.empty()) throw std::invalid_argument("nelder_mead_minimize: empty start point");
    if (options.step.size() != x0.size()) {
        throw std::invalid_argument("nelder_mead_minimize: step size does not match dimension");
    }
    if ((!options.lower.empty() && options.lower.size() != x0.size()) ||
        (!options.upper.empty() && options.upper.size() != x0.size())) {
        throw std::invalid_argument("nelder_mead_minimize: bounds do not match dimension");
    }

    NelderMeadResult result;
    Simplex simplex(f, options, result.evals);
    simplex.reset(x0);

    double settled = simplex.best_value();
    bool have_settled = false;
    while (result.evals < options.max_evals) {
        if (simplex.converged()) {
            const double tol = options.f_rel_tol * std::abs(simplex.best_value());
            if (have_settled && !(simplex.best_value() < settled - tol)) {
                result.converged = true;
                break;
            }
            if (result.restarts >= options.max_restarts) {
                result.converged = true;
                break;
            }
            settled = simplex.best_value();
            have_settled = true;
            ++result.restarts;
            simplex.reset(simplex.best());
            continue;
        }
        simplex.step();
    }

    result.x = simplex.best();
    result.f = simplex.best_value();
    result.f_spread = simplex.spread();
    result.x_diameter = simplex.diameter();
    return result;
}

}  // namespace qdconv
