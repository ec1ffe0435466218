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

#include "qdconv/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qdconv {

namespace {

constexpr double kSingularRcond = 1e-14;
constexpr double kResidualTol = 1e-10;

StateVector trace_row()
{
    StateVector t;
    t << 1.0, 1.0, 1.0, 1.0, 0.0, 0.0;
    return t;
}

// tau -> 0+ limit for a degenerate kernel. With M(tau) = M0 + tau M1 the
// limit v0 lies in ker M0 and satisfies w^T M1 v0 = 0 for every left null
// vector w of M0.
std::optional<StateVector> dephasing_limit(const GeneratorMatrix& m0)
{
    const Eigen::FullPivLU<GeneratorMatrix> right(m0);
    const Eigen::FullPivLU<GeneratorMatrix> left(m0.transpose());
    const Eigen::MatrixXd kernel = right.kernel();
    const Eigen::MatrixXd left_kernel = left.kernel();
    const Eigen::Index k = kernel.cols();
    if (k < 2) return std::nullopt;

    GeneratorMatrix m1 = GeneratorMatrix::Zero();
    m1(kReRho12, kReRho12) = -1.0;
    m1(kImRho12, kImRho12) = -1.0;

    Eigen::MatrixXd system(left_kernel.cols() + 1, k);
    system.topRows(left_kernel.cols()) = left_kernel.transpose() * m1 * kernel;
    system.bottomRows(1) = trace_row().transpose() * kernel;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(system.rows());
    rhs(rhs.size() - 1) = 1.0;

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(system);
    if (qr.rank() < k) return std::nullopt;
    const Eigen::VectorXd c = qr.solve(rhs);
    if ((system * c - rhs).lpNorm<Eigen::Infinity>() > kResidualTol) return std::nullopt;
    return StateVector(kernel * c);
}

}  // namespace

DensityState DensityState::clamped() const
{
    DensityState out = *this;
    for (double* p : {&out.rho1, &out.rho2, &out.rho_e, &out.rho0}) *p = std::clamp(*p, 0.0, 1.0);
    return out;
}

std::optional<std::string> density_violation(const DensityState& s)
{
    std::ostringstream os;
    os.precision(17);
    if (std::abs(s.trace() - 1.0) > 1e-10) {
        os << "trace " << s.trace() << " differs from 1";
        return os.str();
    }
    const double pops[] = {s.rho1, s.rho2, s.rho_e, s.rho0};
    for (double p : pops) {
        if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) {
            os << "population " << p << " outside [0, 1]";
            return os.str();
        }
    }
    if (std::norm(s.rho12) > s.rho1 * s.rho2 + 1e-12) {
        os << "|rho12|^2 = " << std::norm(s.rho12) << " exceeds rho1*rho2 = " << s.rho1 * s.rho2;
        return os.str();
    }
    return std::nullopt;
}

StateVector to_vector(const DensityState& s)
{
    StateVector v;
    v << s.rho1, s.rho2, s.rho_e, s.rho0, s.rho12.real(), s.rho12.imag();
    return v;
}

DensityState from_vector(const StateVector& v)
{
    return {v(kRho1), v(kRho2), v(kRhoE), v(kRho0), {v(kReRho12), v(kImRho12)}};
}

Generator build_generator(const RateSet& r, double delta21, double tau)
{
    if (std::isnan(tau) || tau < 0.0) {
        std::ostringstream os;
        os << "build_generator: tau = " << tau << " must be >= 0 or infinite";
        throw std::domain_error(os.str());
    }

    Generator gen;
    gen.rates_ = r;
    gen.tau_ = tau;
    gen.delta21_ = delta21;
    gen.mode_ = tau == kInfiniteDecoherence ? TauMode::Infinite : TauMode::Finite;
    GeneratorMatrix& m = gen.matrix_;

    const auto& bp = r.b_plus;
    const auto& bm = r.b_minus;
    const auto& lp = r.f_l_plus;
    const auto& lm = r.f_l_minus;

    // rho1
    m(kRho1, kRho1) = -2.0 * (bp(0, 0, 0) + lm(0, 0, 0));
    m(kRho1, kRhoE) = 2.0 * bm(0, 0, 0);
    m(kRho1, kRho0) = 2.0 * lp(0, 0, 0);
    m(kRho1, kReRho12) = -(bp(0, 1, 1) + lm(1, 0, 1)) - (bp(1, 0, 1) + lm(0, 1, 1));

    // rho2
    m(kRho2, kRho2) = -2.0 * (bp(1, 1, 1) + lm(1, 1, 1));
    m(kRho2, kRhoE) = 2.0 * bm(1, 1, 1);
    m(kRho2, kRho0) = 2.0 * lp(1, 1, 1);
    m(kRho2, kReRho12) = -(bp(0, 1, 0) + lm(1, 0, 0)) - (bp(1, 0, 0) + lm(0, 1, 0));

    // rho_e
    m(kRhoE, kRho1) = 2.0 * bp(0, 0, 0);
    m(kRhoE, kRho2) = 2.0 * bp(1, 1, 1);
    m(kRhoE, kRhoE) = -2.0 * (bm(0, 0, 0) + bm(1, 1, 1) + r.f_r_minus);
    m(kRhoE, kRho0) = 2.0 * r.f_r_plus;
    m(kRhoE, kReRho12) = (bp(0, 1, 0) + bp(0, 1, 1)) + (bp(1, 0, 0) + bp(1, 0, 1));

    // rho0
    m(kRho0, kRho1) = 2.0 * lm(0, 0, 0);
    m(kRho0, kRho2) = 2.0 * lm(1, 1, 1);
    m(kRho0, kRhoE) = 2.0 * r.f_r_minus;
    m(kRho0, kRho0) = -2.0 * (lp(0, 0, 0) + lp(1, 1, 1) + r.f_r_plus);
    m(kRho0, kReRho12) = (lm(1, 0, 0) + lm(1, 0, 1)) + (lm(0, 1, 0) + lm(0, 1, 1));

    if (gen.mode_ == TauMode::Infinite) {
        m.col(kReRho12).setZero();
        m.col(kImRho12).setZero();
        return gen;
    }

    // rho12, split into real and imaginary parts; all rates are real.
    const double decay = bp(0, 0, 0) + bp(1, 1, 1) + lm(0, 0, 0) + lm(1, 1, 1) + tau;
    m(kReRho12, kRho1) = -(bp(1, 0, 0) + lm(0, 1, 0));
    m(kReRho12, kRho2) = -(bp(1, 0, 1) + lm(0, 1, 1));
    m(kReRho12, kRhoE) = bm(1, 0, 0) + bm(1, 0, 1);
    m(kReRho12, kRho0) = lp(0, 1, 0) + lp(0, 1, 1);
    m(kReRho12, kReRho12) = -decay;
    m(kReRho12, kImRho12) = -delta21;
    m(kImRho12, kReRho12) = delta21;
    m(kImRho12, kImRho12) = -decay;
    return gen;
}

Generator build_generator(const ModelParams& params)
{
    params.validate();
    return build_generator(build_rates(params), params.delta21, params.tau);
}

SteadyState steady_state(const Generator& gen)
{
    const GeneratorMatrix& m = gen.matrix();
    GeneratorMatrix a = m;
    a.row(kRho0) = trace_row().transpose();
    if (gen.tau_mode() == TauMode::Infinite) {
        // Coherence pinned to zero.
        a(kReRho12, kReRho12) = 1.0;
        a(kImRho12, kImRho12) = 1.0;
    }
    StateVector b = StateVector::Zero();
    b(kRho0) = 1.0;

    const Eigen::PartialPivLU<GeneratorMatrix> lu(a);
    SteadyState out;
    StateVector v = StateVector::Zero();
    const double rcond = lu.rcond();
    if (std::isfinite(rcond) && rcond > kSingularRcond) {
        v = lu.solve(b);
    } else {
        std::optional<StateVector> limit;
        if (gen.tau_mode() == TauMode::Finite && gen.tau() == 0.0) limit = dephasing_limit(m);
        if (!limit) {
            std::ostringstream os;
            os << "steady_state: replaced generator is singular (rcond = " << rcond
               << "); the rate network is disconnected or carries a dark state";
            throw NoUniqueSteadyState(os.str());
        }
        v = *limit;
        out.dephasing_limit = true;
    }

    out.residual = (m * v).lpNorm<Eigen::Infinity>();
    const double scale = std::max(1.0, m.lpNorm<Eigen::Infinity>());
    if (!(out.residual <= kResidualTol * scale)) {
        std::ostringstream os;
        os << "steady_state: residual " << out.residual << " exceeds tolerance";
        throw NoUniqueSteadyState(os.str());
    }
    out.state = from_vector(v);
    return out;
}

DensityState evolve(const Generator& gen, const DensityState& initial, double duration, double dt)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("evolve: dt must be positive");
    if (!(duration >= 0.0) || !std::isfinite(duration)) {
        throw std::invalid_argument("evolve: duration must be non-negative");
    }
    if (auto bad = density_violation(initial)) {
        throw std::invalid_argument("evolve: invalid initial state: " + *bad);
    }
    if (duration == 0.0) return initial;

    const GeneratorMatrix& m = gen.matrix();
    StateVector v = to_vector(initial);
    if (gen.tau_mode() == TauMode::Infinite) v.tail<2>().setZero();
    const double trace0 = v.head<4>().sum();

    const auto steps = static_cast<long long>(std::ceil(duration / dt));
    const double h = duration / static_cast<double>(steps);
    // Gershgorin bound on the spectrum against the RK4 stability interval.
    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    if (h * norm > 2.5) {
        std::ostringstream os;
        os << "evolve: step h = " << h << " is unstable for generator norm " << norm
           << "; reduce dt";
        throw StepSizeError(os.str());
    }
    for (long long s = 0; s < steps; ++s) {
        const StateVector k1 = m * v;
        const StateVector k2 = m * (v + 0.5 * h * k1);
        const StateVector k3 = m * (v + 0.5 * h * k2);
        const StateVector k4 = m * (v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if ((s & 1023) == 0 || s + 1 == steps) {
            const double drift = std::abs(v.head<4>().sum() - trace0);
            if (!(drift <= 1e-6) || !v.allFinite()) {
                std::ostringstream os;
                os << "evolve: trace drift " << drift << " at step " << s << " (h = " << h
                   << "); reduce dt";
                throw StepSizeError(os.str());
            }
        }
    }
    return from_vector(v);
}

}  // namespace qdconv
