#include "srd/markov.hpp"

#include <algorithm>
#include <cmath>

#include "srd/errors.hpp"
#include "srd/martingale.hpp"
#include "srd/rng.hpp"

namespace srd {

namespace {
// stage tags for derived sub-experiment seeds
constexpr std::uint64_t kDirect = 0xD1;
constexpr std::uint64_t kStageOne = 0x51;
constexpr std::uint64_t kStageTwo = 0x52;
}  // namespace

TransitionEstimate estimate_transition(const Model& model, std::span<const double> x,
                                       const Observable& f, double t, long paths,
                                       std::uint64_t seed, const SamplingPlan& plan) {
    if (t < 0.0) throw InvalidParameter("estimate_transition: t must be nonnegative");
    TransitionEstimate est;
    est.t = t;
    est.paths = paths;
    if (t == 0.0) {
        est.value = f(x);
        est.std_error = 0.0;
        return est;
    }

    std::vector<double> u0(x.begin(), x.end());
    std::vector<double> values(paths);
    parallel_for(paths, resolve_workers(plan.workers, paths), [&](long p) {
        Trajectory traj = simulate(model, u0, t, plan.dt, plan.stop_level, seed,
                                   static_cast<std::uint64_t>(p));
        values[p] = f(traj.states.back());
    });
    MeanSe ms = mean_se(values);
    est.value = ms.mean;
    est.std_error = ms.std_error;
    return est;
}

ChapmanKolmogorovReport chapman_kolmogorov_test(const Model& model, std::span<const double> x,
                                                const Observable& f, double s, double t,
                                                long paths, std::uint64_t seed,
                                                const SamplingPlan& plan, int inner_paths) {
    if (!(s >= 0.0) || !(t > 0.0))
        throw InvalidParameter("chapman_kolmogorov_test: need s >= 0 and t > 0");
    if (inner_paths < 1) throw InvalidParameter("chapman_kolmogorov_test: inner_paths >= 1");

    std::vector<double> u0(x.begin(), x.end());
    const int workers = resolve_workers(plan.workers, paths);

    std::vector<double> direct(paths);
    const std::uint64_t seed_direct = derive_stream(seed, {kDirect});
    parallel_for(paths, workers, [&](long p) {
        Trajectory traj = simulate(model, u0, s + t, plan.dt, plan.stop_level, seed_direct,
                                   static_cast<std::uint64_t>(p));
        direct[p] = f(traj.states.back());
    });

    std::vector<double> composed(paths);
    const std::uint64_t seed_one = derive_stream(seed, {kStageOne});
    const std::uint64_t seed_two = derive_stream(seed, {kStageTwo});
    parallel_for(paths, workers, [&](long p) {
        std::vector<double> mid;
        if (s > 0.0) {
            Trajectory stage1 = simulate(model, u0, s, plan.dt, plan.stop_level, seed_one,
                                         static_cast<std::uint64_t>(p));
            mid = stage1.states.back();
        } else {
            mid = u0;
        }
        std::vector<double> child(inner_paths);
        for (int c = 0; c < inner_paths; ++c) {
            Trajectory stage2 =
                simulate(model, mid, t, plan.dt, plan.stop_level, seed_two,
                         static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(inner_paths) + c);
            child[c] = f(stage2.states.back());
        }
        composed[p] = mean_se(child).mean;
    });

    MeanSe d = mean_se(direct);
    MeanSe c = mean_se(composed);
    ChapmanKolmogorovReport report;
    report.direct = d.mean;
    report.direct_se = d.std_error;
    report.composed = c.mean;
    report.composed_se = c.std_error;
    double pooled = std::sqrt(d.std_error * d.std_error + c.std_error * c.std_error);
    report.z = pooled > 0.0 ? std::abs(d.mean - c.mean) / pooled : 0.0;
    return report;
}

RestartReport restart_markov_test(const Model& model, std::span<const double> x,
                                  const Observable& f, double s, double t, long paths,
                                  std::uint64_t seed, const SamplingPlan& plan,
                                  double restart_shift) {
    if (!(s > 0.0) || !(t > 0.0)) throw InvalidParameter("restart_markov_test: need s, t > 0");

    std::vector<double> u0(x.begin(), x.end());
    const int workers = resolve_workers(plan.workers, paths);

    std::vector<double> sample_a(paths), sample_b(paths);
    const std::uint64_t seed_direct = derive_stream(seed, {kDirect});
    const std::uint64_t seed_one = derive_stream(seed, {kStageOne});
    const std::uint64_t seed_two = derive_stream(seed, {kStageTwo});
    parallel_for(paths, workers, [&](long p) {
        Trajectory direct = simulate(model, u0, s + t, plan.dt, plan.stop_level, seed_direct,
                                     static_cast<std::uint64_t>(p));
        sample_a[p] = f(direct.states.back());

        Trajectory stage1 = simulate(model, u0, s, plan.dt, plan.stop_level, seed_one,
                                     static_cast<std::uint64_t>(p));
        std::vector<double> mid = stage1.states.back();
        for (double& v : mid) v += restart_shift;
        Trajectory stage2 = simulate(model, mid, t, plan.dt, plan.stop_level, seed_two,
                                     static_cast<std::uint64_t>(p));
        sample_b[p] = f(stage2.states.back());
    });

    RestartReport report;
    report.paths = paths;
    report.ks = ks_two_sample(std::move(sample_a), std::move(sample_b));
    return report;
}

FellerReport feller_test(const Model& model, std::span<const double> x,
                         const std::vector<double>& deltas, const Observable& f, double t,
                         long paths, std::uint64_t seed, const SamplingPlan& plan) {
    for (std::size_t m = 1; m < deltas.size(); ++m)
        if (!(deltas[m] < deltas[m - 1]))
            throw InvalidParameter("feller_test: deltas must decrease");

    std::vector<double> u0(x.begin(), x.end());
    const int workers = resolve_workers(plan.workers, paths);
    const int n = model.n();

    std::vector<double> base_val(paths);
    parallel_for(paths, workers, [&](long p) {
        Trajectory traj = simulate(model, u0, t, plan.dt, plan.stop_level, seed,
                                   static_cast<std::uint64_t>(p));
        base_val[p] = f(traj.states.back());
    });

    FellerReport report;
    report.deltas = deltas;
    for (double delta : deltas) {
        std::vector<double> shifted(u0);
        for (int i = 0; i < n; ++i) shifted[i] += delta;
        std::vector<double> diff(paths);
        parallel_for(paths, workers, [&](long p) {
            Trajectory traj = simulate(model, shifted, t, plan.dt, plan.stop_level, seed,
                                       static_cast<std::uint64_t>(p));
            diff[p] = f(traj.states.back()) - base_val[p];
        });
        MeanSe ms = mean_se(diff);
        report.gaps.push_back(std::abs(ms.mean));
        report.std_errors.push_back(ms.std_error);
    }

    report.nonincreasing_within_noise = true;
    for (std::size_t m = 1; m < report.gaps.size(); ++m) {
        double slack = 3.0 * std::sqrt(report.std_errors[m] * report.std_errors[m] +
                                       report.std_errors[m - 1] * report.std_errors[m - 1]);
        if (report.gaps[m] > report.gaps[m - 1] + slack) report.nonincreasing_within_noise = false;
    }
    if (!report.gaps.empty())
        report.final_within_3se = report.gaps.back() <= 3.0 * report.std_errors.back();
    return report;
}

ContainmentReport compact_containment(const Ensemble& ensemble, double T, double quantile) {
    const double dt = ensemble.spec().dt;
    if (T > ensemble.spec().T + 0.5 * dt)
        throw InvalidParameter("compact_containment: T exceeds the ensemble horizon");
    const int t_idx = aligned_index(T, dt);

    const long paths = ensemble.spec().paths;
    std::vector<double> sups(paths);
    ensemble.for_each_path([&](long p, const Trajectory& traj) {
        int end = std::min(t_idx, static_cast<int>(traj.states.size()) - 1);
        double m = 0.0;
        for (int i = 0; i <= end; ++i) m = std::max(m, sup_norm(traj.states[i]));
        sups[p] = m;
    });

    ContainmentReport report;
    report.quantile = quantile;
    report.paths = paths;
    report.radius = empirical_quantile(std::move(sups), quantile);
    return report;
}

}  // namespace srd
