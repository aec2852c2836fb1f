#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "srd/integrator.hpp"
#include "srd/model.hpp"

namespace srd {

/// Worker-count resolution: explicit request, else the SRDLAB_WORKERS
/// environment variable, else hardware concurrency; always in [1, paths].
int resolve_workers(int requested, long paths);

/// Runs body(0..count-1) on `workers` threads pulling from a shared atomic
/// counter. Work items must be independent; exceptions are rethrown on the
/// caller thread.
void parallel_for(long count, int workers, const std::function<void(long)>& body);

struct RunSpec {
    std::vector<double> u0;
    double T = 1.0;
    double dt = 1e-3;
    double stop_level = 1e6;
    long paths = 1;
    std::uint64_t seed = 0;
    /// Gaussian node-wise spread around u0 for the initial law; 0 is the
    /// point mass delta_{u0}.
    double u0_spread = 0.0;
    std::vector<double> snapshot_times;
    int workers = 0;
};

struct PathSummary {
    int stop_index = kNoStop;
    double sup_norm_max = 0.0;
    std::vector<double> final_state;
    std::vector<std::vector<double>> snapshots;
};

/// A reproducible family of paths. Per-path streams are derived from
/// (seed, path_index), so the ensemble is a recipe: paths are re-generated
/// deterministically on demand instead of being stored, and results never
/// depend on the number of workers or their scheduling.
class Ensemble {
 public:
    Ensemble(const Model& model, RunSpec spec);

    const Model& model() const { return *model_; }
    const RunSpec& spec() const { return spec_; }
    int steps() const { return steps_; }
    const std::vector<PathSummary>& summaries() const { return summaries_; }

    std::vector<double> initial_state(long path) const;
    Trajectory path(long path) const;

    /// Visits every path in parallel. The visitor is called once per path
    /// with a freshly materialized trajectory; calls for distinct paths may
    /// run concurrently, so visitors must only touch per-path slots.
    void for_each_path(const std::function<void(long, const Trajectory&)>& visit) const;

 private:
    const Model* model_;
    RunSpec spec_;
    int steps_;
    std::vector<PathSummary> summaries_;
};

Ensemble run_ensemble(const Model& model, RunSpec spec);

}  // namespace srd
