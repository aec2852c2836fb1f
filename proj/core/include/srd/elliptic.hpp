#pragma once

#include <functional>
#include <span>
#include <vector>

#include "srd/grid.hpp"

namespace srd {

/// Symmetric tridiagonal matrix; off[i] couples nodes i and i+1.
struct TriDiag {
    std::vector<double> diag;
    std::vector<double> off;

    int size() const { return static_cast<int>(diag.size()); }
    void apply(std::span<const double> u, std::span<double> out) const;
    static TriDiag zero(int n);
};

constexpr double kEllipticityFloor = 1e-12;

/// Flux-form discretization of A = d/dx (a(x) d/dx) with Dirichlet or
/// Neumann boundary conditions.
///
/// (A u)_i = [a_{i+1/2} (u_{i+1} - u_i) - a_{i-1/2} (u_i - u_{i-1})] / h^2
/// with ghost values u_0 = u_{n+1} = 0 (Dirichlet) or reflected (Neumann).
/// The matrix is symmetric under the grid's weighted inner product, with
/// nonpositive spectrum; Neumann keeps the constant vector in the kernel.
class EllipticOperator {
 public:
    EllipticOperator(SpatialGrid grid, std::vector<double> a_flux, TriDiag matrix)
        : grid_(std::move(grid)), a_flux_(std::move(a_flux)), matrix_(std::move(matrix)) {}

    const SpatialGrid& grid() const { return grid_; }
    /// Diffusion coefficient at flux points x_{i+1/2} = (i+1/2) h, i = 0..n.
    const std::vector<double>& flux_coefficients() const { return a_flux_; }
    const TriDiag& matrix() const { return matrix_; }

    std::vector<double> apply(std::span<const double> u) const;

 private:
    SpatialGrid grid_;
    std::vector<double> a_flux_;
    TriDiag matrix_;
};

/// Samples `a` at the flux points and assembles the conservative difference
/// operator. Throws EllipticityViolation if any sample is below the floor.
EllipticOperator assemble_operator(const SpatialGrid& grid,
                                   const std::function<double(double)>& a,
                                   double ellipticity_floor = kEllipticityFloor);

}  // namespace srd
