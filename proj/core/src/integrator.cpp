#include "srd/integrator.hpp"

#include <cmath>
#include <string>

#include "srd/errors.hpp"

namespace srd {

namespace {
bool all_finite(std::span<const double> u) {
    for (double v : u)
        if (!std::isfinite(v)) return false;
    return true;
}
}  // namespace

MildStepper::MildStepper(const Model& model, double dt) : model_(model), dt_(dt) {
    if (!(dt > 0.0)) throw InvalidParameter("MildStepper: dt must be positive");
    propagator_ = model.cache->propagator(dt);
    const int n = model.n();
    stage_.resize(n);
    drift_.resize(n);
    const int K = model.noise_modes();
    columns_.resize(static_cast<std::size_t>(n) * K);
    if (K > 0 && model.noise->state_independent()) {
        model.noise->eval_columns(std::vector<double>(n, 0.0), columns_);
        static_columns_ = true;
    }
}

void MildStepper::step(std::span<const double> u, std::span<const double> dW,
                       std::span<double> out) {
    const int n = model_.n();
    const int K = model_.noise_modes();

    if (model_.drift) {
        model_.drift->eval(u, drift_);
        for (int i = 0; i < n; ++i) stage_[i] = u[i] + dt_ * drift_[i];
    } else {
        for (int i = 0; i < n; ++i) stage_[i] = u[i];
    }

    if (K > 0) {
        if (!static_columns_) model_.noise->eval_columns(u, columns_);
        for (int k = 0; k < K; ++k) {
            const double w = dW[k];
            const double* col = columns_.data() + static_cast<std::size_t>(k) * n;
            for (int i = 0; i < n; ++i) stage_[i] += w * col[i];
        }
    }

    Eigen::Map<const Eigen::VectorXd> sv(stage_.data(), n);
    Eigen::Map<Eigen::VectorXd> ov(out.data(), n);
    ov.noalias() = propagator_ * sv;
}

std::vector<double> step_mild(const SemigroupCache& cache, const PolynomialDrift* F,
                              const NoiseFamily* G, std::span<const double> u, double dt,
                              std::span<const double> dW) {
    Model model{&cache, F, G};
    MildStepper stepper(model, dt);
    std::vector<double> out(model.n());
    stepper.step(u, dW, out);
    return out;
}

int step_count(double T, double dt) {
    if (!(T > 0.0) || !(dt > 0.0)) throw InvalidParameter("step_count: T and dt must be positive");
    int steps = static_cast<int>(std::llround(T / dt));
    if (steps < 1 || std::abs(steps * dt - T) > dt)
        throw InvalidParameter("step_count: dt must divide T within one step");
    return steps;
}

Trajectory simulate_with_increments(const Model& model, std::span<const double> u0,
                                    const WienerIncrements& increments, double stop_level) {
    const int n = model.n();
    const int steps = increments.steps;
    if (model.noise_modes() > increments.K)
        throw InvalidParameter("simulate: increment table has fewer modes than the noise family");

    Trajectory traj;
    traj.dt = increments.dt;
    traj.seed = increments.seed;
    traj.path_index = increments.path_index;
    traj.stop_level = stop_level;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.times.push_back(0.0);
    traj.states.emplace_back(u0.begin(), u0.end());

    if (sup_norm(u0) >= stop_level) traj.stop_index = 0;

    MildStepper stepper(model, increments.dt);
    std::vector<double> next(n);
    const int K = model.noise_modes();
    for (int i = 0; i < steps; ++i) {
        traj.times.push_back(static_cast<double>(i + 1) * increments.dt);
        if (traj.stopped()) {
            traj.states.push_back(traj.states.back());
            continue;
        }
        std::span<const double> dW(increments.table.data() + static_cast<std::size_t>(i) * increments.K,
                                   static_cast<std::size_t>(K));
        stepper.step(traj.states.back(), dW, next);
        if (!all_finite(next)) {
            if (i == 0) {
                // blow-up before any usable step: keep only the initial state
                traj.times.resize(1);
                traj.states.resize(1);
                traj.stop_index = 0;
                return traj;
            }
            traj.stop_index = i;
            traj.states.push_back(traj.states.back());
            continue;
        }
        traj.states.push_back(next);
        if (!traj.stopped() && sup_norm(next) >= stop_level) traj.stop_index = i + 1;
    }
    return traj;
}

Trajectory simulate(const Model& model, std::span<const double> u0, double T, double dt,
                    double stop_level, std::uint64_t seed, std::uint64_t path_index) {
    const int steps = step_count(T, dt);
    WienerIncrements w = sample_increments(seed, path_index, steps, model.noise_modes(), dt);
    return simulate_with_increments(model, u0, w, stop_level);
}

}  // namespace srd
