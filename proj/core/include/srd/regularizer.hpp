#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "srd/model.hpp"

namespace srd {

/// Yamada-Watanabe regularization family built from a modulus h:
///   levels a_0 = 1 > a_1 > ... with  int_{a_n}^{a_{n-1}} h^{-2}(r) dr = n,
///   bumps 0 <= psi_n <= 2/(n h^2) supported in (a_n, a_{n-1}), integral 1,
///   phi_n(r) = int_0^{|r|} int_0^s psi_n, so |r| - a_{n-1} <= phi_n <= |r|.
/// The modulus is floored to max(h, sqrt(.)) at construction; levels exist
/// only when the Osgood classifier reads the floored modulus as divergent.
class RegularizerFamily {
 public:
    static RegularizerFamily build_levels(std::function<double(double)> h_fn, int n_max);

    int n_max() const { return static_cast<int>(levels_.size()) - 1; }
    /// a_0 = 1 at index 0, a_n at index n.
    const std::vector<double>& levels() const { return levels_; }
    /// Floored modulus actually used for the construction.
    double h(double r) const;

    double psi(int n, double r) const;
    /// Normalization constant c_n of level n (must be <= 1 for the cap).
    double psi_normalization(int n) const { return level(n).norm_const; }

    struct PhiEval {
        double value = 0.0;
        double d1 = 0.0;
        double d2 = 0.0;
    };
    PhiEval eval_phi(int n, double r) const;

    /// Quadrature re-check of the defining level integral over (a_n, a_{n-1}).
    double level_integral(int n) const;

 private:
    struct Level {
        double a_lo = 0.0;     // a_n
        double a_hi = 0.0;     // a_{n-1}
        double norm_const = 0.0;
        std::vector<double> grid;      // log-spaced nodes in [a_lo, a_hi]
        std::vector<double> cum_psi;   // int_{a_lo}^{grid_i} psi
        std::vector<double> cum_phi;   // int_0^{grid_i} Psi
    };

    const Level& level(int n) const;
    double psi_raw(const Level& lv, int n, double r) const;
    double inner_integral(const Level& lv, int n, double s) const;  // Psi(s)

    std::function<double(double)> h_;
    std::vector<double> levels_;
    std::vector<Level> data_;  // data_[n-1] describes level n
};

struct UniquenessReport {
    std::vector<double> deltas;
    std::vector<double> mean_sup_diff;
    std::vector<double> std_error;
    std::vector<double> dts;        // coarse step sizes of each refinement gap
    std::vector<double> mesh_gap;   // E sup_t ||u_dt - u_{dt/2}||_inf on coupled noise
    std::vector<double> mesh_se;
};

/// Coupled-path surrogate for pathwise uniqueness: both trajectories of a
/// pair consume identical Wiener increments. Part one perturbs the initial
/// value by delta * 1 and reports E sup_{t<=T} ||u1 - u2||_inf per delta;
/// part two couples dt with dt/2 through summed increments over three
/// refinements.
UniquenessReport coupled_uniqueness_experiment(const Model& model, std::span<const double> u0,
                                               const std::vector<double>& deltas, double T,
                                               double dt, long paths, std::uint64_t seed,
                                               double stop_level = 1e6, int workers = 0);

}  // namespace srd
