#include "srd/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "srd/errors.hpp"
#include "srd/rng.hpp"

namespace srd {

namespace {
constexpr std::uint64_t kInitialLawTag = 0x496E6974ull;  // distinct stream per path for u0 draws
}

int resolve_workers(int requested, long paths) {
    int workers = requested;
    if (workers <= 0) {
        if (const char* env = std::getenv("SRDLAB_WORKERS")) workers = std::atoi(env);
    }
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
    if (paths < workers) workers = static_cast<int>(paths);
    return workers < 1 ? 1 : workers;
}

Ensemble::Ensemble(const Model& model, RunSpec spec) : model_(&model), spec_(std::move(spec)) {
    if (spec_.paths < 1) throw InvalidParameter("Ensemble: need at least one path");
    if (static_cast<int>(spec_.u0.size()) != model.n())
        throw InvalidParameter("Ensemble: u0 length does not match the grid");
    steps_ = step_count(spec_.T, spec_.dt);
    for (double st : spec_.snapshot_times)
        if (st < 0.0 || st > spec_.T + 0.5 * spec_.dt)
            throw InvalidParameter("Ensemble: snapshot time outside [0, T]");

    summaries_.assign(spec_.paths, PathSummary{});
    for_each_path([this](long p, const Trajectory& traj) {
        PathSummary& s = summaries_[p];
        s.stop_index = traj.stop_index;
        double m = 0.0;
        for (const auto& state : traj.states) m = std::max(m, sup_norm(state));
        s.sup_norm_max = m;
        s.final_state = traj.states.back();
        s.snapshots.reserve(spec_.snapshot_times.size());
        for (double st : spec_.snapshot_times) {
            int idx = static_cast<int>(std::llround(st / spec_.dt));
            idx = std::min(idx, static_cast<int>(traj.states.size()) - 1);
            s.snapshots.push_back(traj.states[idx]);
        }
    });
}

std::vector<double> Ensemble::initial_state(long path) const {
    std::vector<double> u0 = spec_.u0;
    if (spec_.u0_spread != 0.0) {
        GaussianStream stream(derive_stream(spec_.seed, {static_cast<std::uint64_t>(path),
                                                         kInitialLawTag}));
        for (std::size_t i = 0; i < u0.size(); ++i)
            u0[i] += spec_.u0_spread * stream.normal(i);
    }
    return u0;
}

Trajectory Ensemble::path(long p) const {
    std::vector<double> u0 = initial_state(p);
    return simulate(*model_, u0, spec_.T, spec_.dt, spec_.stop_level, spec_.seed,
                    static_cast<std::uint64_t>(p));
}

void parallel_for(long count, int workers, const std::function<void(long)>& body) {
    if (count <= 0) return;
    if (workers > count) workers = static_cast<int>(count);
    if (workers <= 1) {
        for (long i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        try {
            for (;;) {
                long i = next.fetch_add(1);
                if (i >= count) return;
                body(i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

void Ensemble::for_each_path(const std::function<void(long, const Trajectory&)>& visit) const {
    const int workers = resolve_workers(spec_.workers, spec_.paths);
    parallel_for(spec_.paths, workers, [&](long p) { visit(p, path(p)); });
}

Ensemble run_ensemble(const Model& model, RunSpec spec) { return Ensemble(model, std::move(spec)); }

}  // namespace srd
