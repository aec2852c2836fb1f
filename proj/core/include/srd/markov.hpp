#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "srd/ensemble.hpp"
#include "srd/model.hpp"
#include "srd/stats.hpp"

namespace srd {

using Observable = std::function<double(std::span<const double>)>;

/// Shared sampling parameters for the transition-semigroup estimators.
struct SamplingPlan {
    double dt = 1e-3;
    double stop_level = 1e6;
    int workers = 0;
};

struct TransitionEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long paths = 0;
    double t = 0.0;
};

/// Monte Carlo estimate of T(t) f (x) from the point mass at x. t = 0 is
/// exact: value f(x), zero standard error, no simulation.
TransitionEstimate estimate_transition(const Model& model, std::span<const double> x,
                                       const Observable& f, double t, long paths,
                                       std::uint64_t seed, const SamplingPlan& plan);

struct ChapmanKolmogorovReport {
    double direct = 0.0;
    double direct_se = 0.0;
    double composed = 0.0;
    double composed_se = 0.0;
    double z = 0.0;
};

/// Compares a direct estimate of T(s+t) f (x) against the two-stage
/// estimate of T(s) T(t) f (x) with fresh noise in the second stage.
ChapmanKolmogorovReport chapman_kolmogorov_test(const Model& model, std::span<const double> x,
                                                const Observable& f, double s, double t,
                                                long paths, std::uint64_t seed,
                                                const SamplingPlan& plan, int inner_paths = 1);

struct RestartReport {
    KsResult ks;
    long paths = 0;
};

/// Two-sample KS test of f(u(s+t)) from uninterrupted paths against
/// f(u~(t)) where u~ restarts from u(s) with fresh independent streams.
/// `restart_shift` displaces the restart state (the adversarial control).
RestartReport restart_markov_test(const Model& model, std::span<const double> x,
                                  const Observable& f, double s, double t, long paths,
                                  std::uint64_t seed, const SamplingPlan& plan,
                                  double restart_shift = 0.0);

struct FellerReport {
    std::vector<double> deltas;
    std::vector<double> gaps;
    std::vector<double> std_errors;
    bool nonincreasing_within_noise = false;
    bool final_within_3se = false;
};

/// Common-random-number gaps |T(t)f(x + delta e) - T(t)f(x)| along a
/// decreasing perturbation ladder (e = the constant-one direction).
FellerReport feller_test(const Model& model, std::span<const double> x,
                         const std::vector<double>& deltas, const Observable& f, double t,
                         long paths, std::uint64_t seed, const SamplingPlan& plan);

struct ContainmentReport {
    double radius = 0.0;
    double quantile = 0.0;
    long paths = 0;
};

/// Empirical quantile of sup_{t<=T} ||u(t)||_inf across the ensemble.
ContainmentReport compact_containment(const Ensemble& ensemble, double T, double quantile);

}  // namespace srd
