#pragma once

#include <span>
#include <string>
#include <vector>

namespace srd {

enum class Boundary { Dirichlet, Neumann };

std::string to_string(Boundary bc);

/// Uniform 1-D grid of interior nodes on (0, L) with quadrature weights.
///
/// Nodes sit at x_i = (i+1) h, i = 0..n-1, with h = L/(n+1); the boundary
/// points 0 and L are represented through ghost values only. The weights
/// are the trapezoid weights restricted to the interior (w_i = h), so
/// dot_w approximates the L^2(0,L) pairing for functions honoring the
/// boundary condition.
struct SpatialGrid {
    int n = 0;
    double length = 0.0;
    double spacing = 0.0;
    Boundary bc = Boundary::Dirichlet;
    std::vector<double> nodes;
    std::vector<double> weights;

    /// Weighted pairing <u,v>_w = sum_i w_i u_i v_i (compensated summation).
    double dot(std::span<const double> u, std::span<const double> v) const;
    /// Weighted norm sqrt(<u,u>_w).
    double norm(std::span<const double> u) const;
};

SpatialGrid build_grid(int n, double length, Boundary bc);

/// max_i |u_i|
double sup_norm(std::span<const double> u);

/// Neumaier-compensated sum; used wherever reductions must not depend on
/// accumulation order at the 1e-12 tolerance scale.
double compensated_sum(std::span<const double> values);

}  // namespace srd
