#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "srd/grid.hpp"

namespace srd {

/// Odd-degree polynomial reaction term f(x,r) = sum_j b_j(x) r^j with a
/// strictly negative leading coefficient: b_{2N+1}(x) <= -eps everywhere.
/// Coefficients are sampled at the grid nodes; evaluation is pointwise
/// Horner, so the drift is local in space.
class PolynomialDrift {
 public:
    /// coeffs[j] holds b_j sampled at the n grid nodes, j = 0..degree.
    static PolynomialDrift from_samples(const SpatialGrid& grid,
                                        std::vector<std::vector<double>> coeffs);
    /// Spatially constant coefficients b_j.
    static PolynomialDrift from_constants(const SpatialGrid& grid,
                                          const std::vector<double>& coeffs);

    int degree() const { return degree_; }
    double eps_lead() const { return eps_lead_; }
    const std::vector<std::vector<double>>& coefficients() const { return coeffs_; }

    void eval(std::span<const double> u, std::span<double> out) const;
    std::vector<double> eval(std::span<const double> u) const;
    double eval_scalar(int node, double r) const;

    /// Radius beyond which the leading term dominates: for ||u||_inf >= this,
    /// sign(F(u)(x0)) = -sign(u(x0)) at any arg-max node x0.
    double sign_radius() const;

 private:
    PolynomialDrift() = default;
    int n_ = 0;
    int degree_ = 0;
    double eps_lead_ = 0.0;
    std::vector<std::vector<double>> coeffs_;
};

struct DissipativityReport {
    long violations = 0;
    double worst_margin = 0.0;  // min over samples of RHS - LHS; negative means violated
    long samples = 0;
};

/// Monte Carlo check of the one-sided bound
///   <F(u+v) - F(v), u*>  <=  a (1+||v||)^{2N+1} - b ||u||^{2N+1}
/// where u* is the sup-norm subdifferential functional at u (arg-max node,
/// ties broken by lowest index, sign(0) = 0).
DissipativityReport check_dissipativity(const PolynomialDrift& F, double a_const, double b_const,
                                        long samples, std::uint64_t rng_seed);

}  // namespace srd
