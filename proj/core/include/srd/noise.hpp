#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "srd/grid.hpp"
#include "srd/semigroup.hpp"

namespace srd {

/// K-mode multiplicative noise operator G(u) h = sum_k h_k g_k(., u(.)),
/// the finite truncation of the cylindrical noise term. Each retained mode
/// carries its growth constants (alpha_k, beta_k) and Hölder modulus
/// sigma_k so the family can be validated against the hypotheses it claims
/// to satisfy. Immutable; evaluators are pure.
class NoiseFamily {
 public:
    struct Mode {
        std::vector<double> shape;               // spatial factor at grid nodes
        std::function<double(double)> shape_fn;  // spatial factor at arbitrary x (validation)
        std::function<double(double)> profile;   // scalar r-profile
        /// When set, overrides the product form: g_k(x,r) = g_xy(x,r)
        /// (tabulated families are generally not products).
        std::function<double(double, double)> g_xy;
        double alpha = 0.0;
        double beta = 0.0;
        std::function<double(double)> sigma;     // modulus of continuity, r >= 0
    };

    static NoiseFamily none(const SpatialGrid& grid);
    /// g_k(x,r) = c_k sqrt(|r|) with c_k = c0 decay^{k-1}; sigma_k = c_k sqrt(r).
    static NoiseFamily holder_sqrt(const SpatialGrid& grid, double c0, double decay, int K);
    /// g_k(x,r) = c_k r; sigma_k = c_k r.
    static NoiseFamily lipschitz(const SpatialGrid& grid, double c0, double decay, int K);
    /// g_k(x,r) = q_k, constant in r and x.
    static NoiseFamily additive(const SpatialGrid& grid, double q0, double decay, int K);
    /// g_k(x,r) = q_k v_k(x) with v_k the generator eigenvectors; the mode
    /// pairings then evolve as independent scalar OU processes.
    static NoiseFamily additive_modes(const SpatialGrid& grid, const SemigroupCache& cache,
                                      double q0, double decay, int K);
    /// Bounded approximant: the base family evaluated at r clamped to
    /// [-cap, cap]. Same growth constants and moduli as the base.
    static NoiseFamily truncated(const NoiseFamily& base, double cap);
    static NoiseFamily custom(const SpatialGrid& grid, std::vector<Mode> modes, double tail_bound);

    int K() const { return static_cast<int>(modes_.size()); }
    int n() const { return grid_.n; }
    const SpatialGrid& grid() const { return grid_; }
    const std::vector<Mode>& modes() const { return modes_; }
    bool state_independent() const { return state_independent_; }
    double tail_bound() const { return tail_bound_; }

    double g_node(int k, int node, double r) const {
        const Mode& m = modes_[k];
        return m.shape[node] * m.profile(r);
    }
    double g(int k, double x, double r) const;
    double sigma(int k, double r) const { return modes_[k].sigma ? modes_[k].sigma(r) : 0.0; }
    /// h(r) = sum_k sigma_k(r), the summed modulus of the family.
    double h(double r) const;

    std::vector<double> alphas() const;
    std::vector<double> betas() const;

    /// Column k holds g_k(x_i, u_i); column-major, out[k*n + i].
    void eval_columns(std::span<const double> u, std::span<double> out) const;
    std::vector<double> eval_columns(std::span<const double> u) const;

    /// Weighted square-function norm
    ///   ( sum_i w_i (sum_k g_k(x_i,u_i)^2)^{p/2} )^{1/p},
    /// the Hilbert-Schmidt norm of the truncated operator when p = 2.
    double hs_norm(std::span<const double> u, double p = 2.0) const;

 private:
    explicit NoiseFamily(SpatialGrid grid) : grid_(std::move(grid)) {}

    SpatialGrid grid_;
    std::vector<Mode> modes_;
    double tail_bound_ = 0.0;
    bool state_independent_ = false;
};

/// Piecewise-linear interpolant with constant extrapolation; shared by the
/// tabulated noise builders.
class LinearTable {
 public:
    LinearTable() = default;
    LinearTable(std::vector<double> xs, std::vector<double> ys);
    double operator()(double x) const;

 private:
    std::vector<double> xs_, ys_;
};

}  // namespace srd
