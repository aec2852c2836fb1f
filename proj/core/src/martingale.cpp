#include "srd/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "srd/errors.hpp"
#include "srd/stats.hpp"

namespace srd {

double WeightFunction::eval(const SemigroupCache& cache, std::span<const double> u) const {
    switch (kind) {
        case Kind::One: return 1.0;
        case Kind::Tanh: return std::tanh(cache.weighted_dot(u, y));
        case Kind::Clip: return std::clamp(cache.weighted_dot(u, y), -1.0, 1.0);
    }
    return 1.0;
}

double MartingaleStatistic::z() const {
    if (std_error > 0.0) return std::abs(estimate) / std_error;
    return estimate == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

int aligned_index(double time, double dt) {
    int idx = static_cast<int>(std::llround(time / dt));
    if (std::abs(idx * dt - time) > 1e-9 * std::max(1.0, std::abs(time)))
        throw InvalidParameter("time " + std::to_string(time) + " is not on the dt grid");
    return idx;
}

namespace {

/// Per-path evaluation state for one test function; cheap to build, owned
/// by the visiting thread.
class GeneratorWorkspace {
 public:
    GeneratorWorkspace(const Model& model, const CylTestFunction& f, double drift_shift)
        : model_(model), f_(f), shift_(drift_shift) {
        const int m = f.arity();
        const int n = model.n();
        ax_.resize(m);
        one_pairing_.resize(m);
        std::vector<double> ones(n, 1.0);
        for (int j = 0; j < m; ++j) {
            ax_[j] = model.cache->apply_operator(f.functionals()[j]);
            one_pairing_[j] = model.cache->weighted_dot(ones, f.functionals()[j]);
        }
        s_.resize(m);
        g_.resize(m);
        h_.resize(static_cast<std::size_t>(m) * m);
        drift_val_.resize(n);
        const int K = model.noise_modes();
        adjoint_.resize(static_cast<std::size_t>(K) * m);
        columns_.resize(static_cast<std::size_t>(K) * n);
        use_noise_ = K > 0 && f.kind() != CylTestFunction::Kind::Linear;
        if (use_noise_ && model.noise->state_independent()) {
            model.noise->eval_columns(std::vector<double>(n, 0.0), columns_);
            fill_adjoint();
            static_noise_ = true;
        }
    }

    double apply(std::span<const double> u) {
        const int m = f_.arity();
        f_.pairings(*model_.cache, u, s_);
        f_.gradient(s_, g_);

        double acc = 0.0;
        if (model_.drift) model_.drift->eval(u, drift_val_);
        for (int j = 0; j < m; ++j) {
            double dr = 0.0;
            if (model_.drift) dr = model_.cache->weighted_dot(drift_val_, f_.functionals()[j]);
            if (shift_ != 0.0) dr += shift_ * one_pairing_[j];
            double lin = model_.cache->weighted_dot(u, ax_[j]);
            acc += g_[j] * (lin + dr);
        }

        if (use_noise_) {
            if (!static_noise_) {
                model_.noise->eval_columns(u, columns_);
                fill_adjoint();
            }
            f_.hessian(s_, h_);
            const int K = model_.noise_modes();
            for (int j = 0; j < m; ++j) {
                for (int l = 0; l < m; ++l) {
                    double q = 0.0;
                    for (int k = 0; k < K; ++k)
                        q += adjoint_[static_cast<std::size_t>(k) * m + j] *
                             adjoint_[static_cast<std::size_t>(k) * m + l];
                    acc += 0.5 * q * h_[static_cast<std::size_t>(j) * m + l];
                }
            }
        }
        return acc;
    }

 private:
    void fill_adjoint() {
        const int m = f_.arity();
        const int n = model_.n();
        const int K = model_.noise_modes();
        for (int k = 0; k < K; ++k) {
            std::span<const double> col(columns_.data() + static_cast<std::size_t>(k) * n,
                                        static_cast<std::size_t>(n));
            for (int j = 0; j < m; ++j)
                adjoint_[static_cast<std::size_t>(k) * m + j] =
                    model_.cache->weighted_dot(col, f_.functionals()[j]);
        }
    }

    const Model& model_;
    const CylTestFunction& f_;
    double shift_;
    bool use_noise_ = false;
    bool static_noise_ = false;
    std::vector<std::vector<double>> ax_;
    std::vector<double> one_pairing_;
    std::vector<double> s_, g_, h_, drift_val_, adjoint_, columns_;
};

std::vector<double> mf_curve(const Model& model, const CylTestFunction& f, const Trajectory& traj,
                             double drift_shift) {
    GeneratorWorkspace work(model, f, drift_shift);
    const int len = static_cast<int>(traj.states.size());
    const int last_live = std::min(traj.frozen_from(), len - 1);

    std::vector<double> m_curve(len);
    double cum = 0.0;
    double prev_l = 0.0;
    for (int i = 0; i <= last_live; ++i) {
        double li = work.apply(traj.states[i]);
        if (i > 0) cum += 0.5 * traj.dt * (prev_l + li);
        prev_l = li;
        m_curve[i] = f.value(*model.cache, traj.states[i]) - cum;
    }
    for (int i = last_live + 1; i < len; ++i) m_curve[i] = m_curve[last_live];
    return m_curve;
}

}  // namespace

double generator_apply(const Model& model, const CylTestFunction& f, std::span<const double> u,
                       double drift_shift) {
    GeneratorWorkspace work(model, f, drift_shift);
    return work.apply(u);
}

std::vector<double> mf_path(const Model& model, const CylTestFunction& f, const Trajectory& traj) {
    return mf_curve(model, f, traj, 0.0);
}

MartingaleStatistic martingale_test(const Model& model, const CylTestFunction& f,
                                    const Ensemble& ensemble, double s, double t,
                                    const WeightSpec& weights, double drift_shift) {
    const double dt = ensemble.spec().dt;
    const int s_idx = aligned_index(s, dt);
    const int t_idx = aligned_index(t, dt);
    if (!(0 <= s_idx && s_idx < t_idx && t_idx <= ensemble.steps()))
        throw InvalidParameter("martingale_test: need 0 <= s < t <= T on the grid");
    if (weights.times.size() != weights.fns.size())
        throw InvalidParameter("martingale_test: weight times/functions mismatch");
    std::vector<int> w_idx;
    for (double st : weights.times) {
        int idx = aligned_index(st, dt);
        if (idx > s_idx)
            throw InvalidParameter("martingale_test: weight sample times must satisfy s_j <= s");
        w_idx.push_back(idx);
    }

    const long paths = ensemble.spec().paths;
    std::vector<double> values(paths);
    std::vector<char> unstopped(paths, 0);
    ensemble.for_each_path([&](long p, const Trajectory& traj) {
        auto m_curve = mf_curve(model, f, traj, drift_shift);
        int last = static_cast<int>(m_curve.size()) - 1;
        double ms = m_curve[std::min(s_idx, last)];
        double mt = m_curve[std::min(t_idx, last)];
        double w = 1.0;
        for (std::size_t j = 0; j < w_idx.size(); ++j) {
            int idx = std::min(w_idx[j], last);
            w *= weights.fns[j].eval(*model.cache, traj.states[idx]);
        }
        values[p] = (mt - ms) * w;
        unstopped[p] = traj.frozen_from() > s_idx ? 1 : 0;
    });

    long live = std::count(unstopped.begin(), unstopped.end(), char(1));
    if (live < 30)
        throw InsufficientSample("martingale_test: only " + std::to_string(live) +
                                 " paths unstopped at s");

    MeanSe ms = mean_se(values);
    MartingaleStatistic stat;
    stat.estimate = ms.mean;
    stat.std_error = ms.std_error;
    stat.paths = paths;
    stat.window_start = s;
    stat.window_end = t;
    return stat;
}

QvReport quadratic_variation_test(const Model& model, const std::vector<double>& xstar,
                                  const Ensemble& ensemble, double t) {
    const double dt = ensemble.spec().dt;
    const int t_idx = aligned_index(t, dt);
    if (!(0 < t_idx && t_idx <= ensemble.steps()))
        throw InvalidParameter("quadratic_variation_test: need 0 < t <= T on the grid");

    const auto ax = model.cache->apply_operator(xstar);
    const int K = model.noise_modes();
    const long paths = ensemble.spec().paths;
    std::vector<double> realized(paths), predicted(paths);

    ensemble.for_each_path([&](long p, const Trajectory& traj) {
        const int last = static_cast<int>(traj.states.size()) - 1;
        const int end = std::min({t_idx, traj.frozen_from(), last});
        std::vector<double> drift_val(model.n());
        std::vector<double> columns(static_cast<std::size_t>(K) * model.n());

        double sum_sq = 0.0;
        double integral = 0.0;
        double prev_norm2 = 0.0;
        double prev_pair = model.cache->weighted_dot(traj.states[0], xstar);
        for (int i = 0; i <= end; ++i) {
            const auto& u = traj.states[i];
            double norm2 = 0.0;
            if (K > 0) {
                model.noise->eval_columns(u, columns);
                for (int k = 0; k < K; ++k) {
                    std::span<const double> col(columns.data() + static_cast<std::size_t>(k) * model.n(),
                                                static_cast<std::size_t>(model.n()));
                    double a = model.cache->weighted_dot(col, xstar);
                    norm2 += a * a;
                }
            }
            if (i > 0) integral += 0.5 * dt * (prev_norm2 + norm2);
            prev_norm2 = norm2;

            if (i < end) {
                double drift_pair = model.cache->weighted_dot(u, ax);
                if (model.drift) {
                    model.drift->eval(u, drift_val);
                    drift_pair += model.cache->weighted_dot(drift_val, xstar);
                }
                double next_pair = model.cache->weighted_dot(traj.states[i + 1], xstar);
                double inc = next_pair - prev_pair - dt * drift_pair;
                sum_sq += inc * inc;
                prev_pair = next_pair;
            }
        }
        realized[p] = sum_sq;
        predicted[p] = integral;
    });

    QvReport report;
    report.paths = paths;
    report.realized = mean_se(realized).mean;
    report.predicted = mean_se(predicted).mean;
    double denom = std::abs(report.predicted);
    report.rel_err = denom > 1e-12 ? std::abs(report.realized - report.predicted) / denom
                                   : std::abs(report.realized - report.predicted);
    return report;
}

}  // namespace srd
