#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "srd/model.hpp"
#include "srd/wiener.hpp"

namespace srd {

constexpr int kNoStop = -1;

/// One sample path on the uniform time grid t_i = i dt. After the first
/// index where the sup-norm reaches stop_level the state is frozen (the
/// stopped-process convention); stop_index = kNoStop when the level is
/// never reached.
struct Trajectory {
    double dt = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t path_index = 0;
    double stop_level = 0.0;
    int stop_index = kNoStop;
    std::vector<double> times;
    std::vector<std::vector<double>> states;

    bool stopped() const { return stop_index != kNoStop; }
    int steps() const { return static_cast<int>(times.size()) - 1; }
    /// First index at which the path is frozen; times.size() if never.
    int frozen_from() const { return stopped() ? stop_index : static_cast<int>(times.size()); }
};

/// Exponential Euler stepper for the mild form:
///   u' = S(dt) (u + dt F(u) + sum_k dW_k g_k(., u)).
/// The semigroup factor is applied exactly through the cached propagator,
/// so the scheme commits no local error on the linear autonomous part.
/// Holds scratch buffers; use one instance per thread.
class MildStepper {
 public:
    MildStepper(const Model& model, double dt);

    double dt() const { return dt_; }
    /// dW has model.noise_modes() entries (ignored when there is no noise).
    void step(std::span<const double> u, std::span<const double> dW, std::span<double> out);

 private:
    const Model& model_;
    double dt_;
    Eigen::MatrixXd propagator_;
    std::vector<double> stage_;
    std::vector<double> drift_;
    std::vector<double> columns_;
    bool static_columns_ = false;
};

/// Single exponential-Euler update; equivalent to one MildStepper step.
std::vector<double> step_mild(const SemigroupCache& cache, const PolynomialDrift* F,
                              const NoiseFamily* G, std::span<const double> u, double dt,
                              std::span<const double> dW);

/// Integrates on [0, T] consuming the given increment table (steps, K and
/// dt are taken from it). Crossing stop_level freezes the state; a
/// non-finite step result freezes at the last finite state, and a blow-up
/// on the very first step yields a length-1 trajectory with stop_index 0.
Trajectory simulate_with_increments(const Model& model, std::span<const double> u0,
                                    const WienerIncrements& increments, double stop_level);

/// Convenience wrapper deriving the increments from (seed, path_index);
/// bit-identical to sampling the table first and passing it in.
Trajectory simulate(const Model& model, std::span<const double> u0, double T, double dt,
                    double stop_level, std::uint64_t seed, std::uint64_t path_index);

/// Number of steps for a horizon: T/dt rounded, requiring dt to divide T
/// within one step.
int step_count(double T, double dt);

}  // namespace srd
