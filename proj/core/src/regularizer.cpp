#include "srd/regularizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srd/ensemble.hpp"
#include "srd/errors.hpp"
#include "srd/hypothesis.hpp"
#include "srd/quadrature.hpp"
#include "srd/stats.hpp"
#include "srd/wiener.hpp"

namespace srd {

namespace {

constexpr double kRampFraction = 0.1;  // log-coordinate ramp width of the cutoff
constexpr int kLevelCells = 512;

double smooth5(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

/// C^2 plateau cutoff on [0,1] in the log coordinate.
double cutoff(double xi) {
    if (xi <= 0.0 || xi >= 1.0) return 0.0;
    if (xi < kRampFraction) return smooth5(xi / kRampFraction);
    if (xi > 1.0 - kRampFraction) return smooth5((1.0 - xi) / kRampFraction);
    return 1.0;
}

}  // namespace

double RegularizerFamily::h(double r) const { return std::max(h_(r), std::sqrt(r)); }

const RegularizerFamily::Level& RegularizerFamily::level(int n) const {
    if (n < 1 || n > n_max())
        throw InvalidParameter("RegularizerFamily: level " + std::to_string(n) + " out of range");
    return data_[n - 1];
}

double RegularizerFamily::psi_raw(const Level& lv, int n, double r) const {
    if (r <= lv.a_lo || r >= lv.a_hi) return 0.0;
    double xi = (std::log(r) - std::log(lv.a_lo)) / (std::log(lv.a_hi) - std::log(lv.a_lo));
    double hv = h(r);
    return cutoff(xi) * 2.0 / (n * hv * hv);
}

double RegularizerFamily::psi(int n, double r) const {
    const Level& lv = level(n);
    return lv.norm_const * psi_raw(lv, n, r);
}

double RegularizerFamily::inner_integral(const Level& lv, int n, double s) const {
    if (s <= lv.a_lo) return 0.0;
    if (s >= lv.a_hi) return lv.cum_psi.back();
    auto it = std::upper_bound(lv.grid.begin(), lv.grid.end(), s);
    std::size_t cell = static_cast<std::size_t>(it - lv.grid.begin()) - 1;
    auto f = [this, &lv, n](double r) { return lv.norm_const * psi_raw(lv, n, r); };
    return lv.cum_psi[cell] + adaptive_simpson(f, lv.grid[cell], s, 1e-13);
}

RegularizerFamily::PhiEval RegularizerFamily::eval_phi(int n, double r) const {
    const Level& lv = level(n);
    const double x = std::abs(r);
    const double sgn = (r > 0.0) ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
    PhiEval out;
    if (x <= lv.a_lo) return out;
    if (x >= lv.a_hi) {
        out.value = lv.cum_phi.back() + (x - lv.a_hi) * lv.cum_psi.back();
        out.d1 = sgn * lv.cum_psi.back();
        out.d2 = 0.0;
        return out;
    }
    auto it = std::upper_bound(lv.grid.begin(), lv.grid.end(), x);
    std::size_t cell = static_cast<std::size_t>(it - lv.grid.begin()) - 1;
    auto inner = [this, &lv, n](double s) { return inner_integral(lv, n, s); };
    out.value = lv.cum_phi[cell] + adaptive_simpson(inner, lv.grid[cell], x, 1e-13);
    out.d1 = sgn * inner_integral(lv, n, x);
    out.d2 = psi(n, x);
    return out;
}

double RegularizerFamily::level_integral(int n) const {
    const Level& lv = level(n);
    auto integrand = [this](double r) {
        double hv = h(r);
        return 1.0 / (hv * hv);
    };
    return log_substituted_integral(integrand, lv.a_lo, lv.a_hi, 1e-11);
}

RegularizerFamily RegularizerFamily::build_levels(std::function<double(double)> h_fn, int n_max) {
    if (n_max < 1) throw InvalidParameter("build_levels: n_max must be >= 1");

    RegularizerFamily fam;
    fam.h_ = std::move(h_fn);

    auto floored = [&fam](double r) { return fam.h(r); };
    OsgoodReport osgood = validate_osgood(floored);
    if (osgood.classification != OsgoodClass::Diverges)
        throw OsgoodFailure("build_levels: floored modulus classified " +
                            to_string(osgood.classification) + ", need divergence");

    auto inv_h2 = [&fam](double r) {
        double hv = fam.h(r);
        return 1.0 / (hv * hv);
    };

    fam.levels_.push_back(1.0);
    for (int n = 1; n <= n_max; ++n) {
        const double hi = fam.levels_.back();
        auto tail = [&](double rho) { return log_substituted_integral(inv_h2, rho, hi, 1e-11); };

        // bracket in the log coordinate; h >= sqrt(r) caps the integral's
        // growth at one unit per log unit, so widen by n+2 per probe
        double x_hi = std::log(hi);
        double x_lo = x_hi - static_cast<double>(n) - 2.0;
        int guard = 0;
        while (tail(std::exp(x_lo)) < n) {
            x_lo -= static_cast<double>(n) + 2.0;
            if (++guard > 200 || x_lo < -690.0)
                throw LevelConstructionFailure("build_levels: no bracket for level " +
                                               std::to_string(n));
        }
        for (int iter = 0; iter < 200 && (x_hi - x_lo) > 1e-13 * std::max(1.0, std::abs(x_lo));
             ++iter) {
            double mid = 0.5 * (x_hi + x_lo);
            if (tail(std::exp(mid)) < n)
                x_hi = mid;
            else
                x_lo = mid;
        }
        double a_n = std::exp(0.5 * (x_hi + x_lo));
        if (!(a_n < hi) || !(a_n > 0.0))
            throw LevelConstructionFailure("build_levels: degenerate level " + std::to_string(n));
        fam.levels_.push_back(a_n);
    }

    // per-level caches
    for (int n = 1; n <= n_max; ++n) {
        Level lv;
        lv.a_lo = fam.levels_[n];
        lv.a_hi = fam.levels_[n - 1];

        auto raw = [&fam, &lv, n](double r) { return fam.psi_raw(lv, n, r); };
        double mass = log_substituted_integral(raw, lv.a_lo, lv.a_hi, 1e-12);
        if (!(mass > 0.0))
            throw LevelConstructionFailure("build_levels: empty bump at level " + std::to_string(n));
        lv.norm_const = 1.0 / mass;
        if (lv.norm_const > 1.0 + 1e-9)
            throw LevelConstructionFailure(
                "build_levels: cap 2/(n h^2) infeasible at level " + std::to_string(n) +
                " (normalization " + std::to_string(lv.norm_const) + " > 1)");

        const double lx_lo = std::log(lv.a_lo);
        const double lx_hi = std::log(lv.a_hi);
        lv.grid.resize(kLevelCells + 1);
        for (int i = 0; i <= kLevelCells; ++i)
            lv.grid[i] = std::exp(lx_lo + (lx_hi - lx_lo) * static_cast<double>(i) / kLevelCells);
        lv.grid.front() = lv.a_lo;
        lv.grid.back() = lv.a_hi;

        auto psi_n = [&fam, &lv, n](double r) { return lv.norm_const * fam.psi_raw(lv, n, r); };
        lv.cum_psi.resize(kLevelCells + 1);
        lv.cum_psi[0] = 0.0;
        for (int i = 1; i <= kLevelCells; ++i)
            lv.cum_psi[i] =
                lv.cum_psi[i - 1] + adaptive_simpson(psi_n, lv.grid[i - 1], lv.grid[i], 1e-13);

        fam.data_.push_back(std::move(lv));
        Level& stored = fam.data_.back();
        auto inner = [&fam, &stored, n](double s) { return fam.inner_integral(stored, n, s); };
        stored.cum_phi.resize(kLevelCells + 1);
        stored.cum_phi[0] = 0.0;
        for (int i = 1; i <= kLevelCells; ++i)
            stored.cum_phi[i] = stored.cum_phi[i - 1] +
                                adaptive_simpson(inner, stored.grid[i - 1], stored.grid[i], 1e-13);
    }
    return fam;
}

UniquenessReport coupled_uniqueness_experiment(const Model& model, std::span<const double> u0,
                                               const std::vector<double>& deltas, double T,
                                               double dt, long paths, std::uint64_t seed,
                                               double stop_level, int workers) {
    const int steps = step_count(T, dt);
    const int K = model.noise_modes();
    const int n = model.n();
    UniquenessReport report;
    report.deltas = deltas;

    std::vector<double> base(u0.begin(), u0.end());
    const int nworkers = resolve_workers(workers, paths);

    for (double delta : deltas) {
        std::vector<double> sup_diff(paths);
        std::vector<double> shifted(base);
        for (int i = 0; i < n; ++i) shifted[i] += delta;
        parallel_for(paths, nworkers, [&](long p) {
            WienerIncrements w = sample_increments(seed, static_cast<std::uint64_t>(p), steps, K, dt);
            Trajectory a = simulate_with_increments(model, base, w, stop_level);
            Trajectory b = simulate_with_increments(model, shifted, w, stop_level);
            std::size_t len = std::min(a.states.size(), b.states.size());
            double sup = 0.0;
            for (std::size_t i = 0; i < len; ++i) {
                for (int j = 0; j < n; ++j)
                    sup = std::max(sup, std::abs(a.states[i][j] - b.states[i][j]));
            }
            sup_diff[p] = sup;
        });
        MeanSe ms = mean_se(sup_diff);
        report.mean_sup_diff.push_back(ms.mean);
        report.std_error.push_back(ms.std_error);
    }

    // coupled mesh refinement: finest level dt/8, coarse increments are the
    // summed fine increments of the same Brownian path
    const int kLevels = 4;
    std::vector<std::vector<double>> gaps(kLevels - 1, std::vector<double>(paths));
    const int fine_factor = 1 << (kLevels - 1);
    parallel_for(paths, nworkers, [&](long p) {
        WienerIncrements fine = sample_increments(seed, static_cast<std::uint64_t>(paths + p),
                                                  steps * fine_factor, K, dt / fine_factor);
        std::vector<Trajectory> runs(kLevels);
        for (int l = 0; l < kLevels; ++l) {
            WienerIncrements w = fine.coarsen(fine_factor >> l);
            runs[l] = simulate_with_increments(model, base, w, stop_level);
        }
        for (int l = 0; l + 1 < kLevels; ++l) {
            const Trajectory& coarse = runs[l];
            const Trajectory& fine_run = runs[l + 1];
            double sup = 0.0;
            std::size_t len = coarse.states.size();
            for (std::size_t i = 0; i < len; ++i) {
                std::size_t fi = 2 * i;
                if (fi >= fine_run.states.size()) break;
                for (int j = 0; j < n; ++j)
                    sup = std::max(sup, std::abs(coarse.states[i][j] - fine_run.states[fi][j]));
            }
            gaps[l][p] = sup;
        }
    });
    for (int l = 0; l + 1 < kLevels; ++l) {
        MeanSe ms = mean_se(gaps[l]);
        report.dts.push_back(dt / (1 << l));
        report.mesh_gap.push_back(ms.mean);
        report.mesh_se.push_back(ms.std_error);
    }
    return report;
}

}  // namespace srd
