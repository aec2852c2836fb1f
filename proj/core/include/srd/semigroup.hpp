#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "srd/elliptic.hpp"
#include "srd/grid.hpp"

namespace srd {

/// Eigendecomposition of a discrete generator, cached once and reused for
/// every semigroup/resolvent action.
///
/// Eigenvalues are stored in descending order lambda_1 >= ... >= lambda_n
/// (all <= 0 for the elliptic operators built here); eigenvectors are
/// orthonormal for the grid's weighted inner product. Immutable after
/// construction; all apply_* members are const and safe to call from any
/// number of threads.
class SemigroupCache {
 public:
    static SemigroupCache from_operator(const EllipticOperator& op);
    /// Build from an explicit w-self-adjoint tridiagonal matrix. Used by
    /// tests for degenerate generators (for instance the zero matrix, whose
    /// semigroup is the identity).
    static SemigroupCache from_matrix(const TriDiag& matrix, std::vector<double> weights);

    int size() const { return static_cast<int>(eigvals_.size()); }
    const std::vector<double>& eigenvalues() const { return eigvals_; }
    const std::vector<double>& weights() const { return weights_; }
    /// k-th eigenvector (w-orthonormal), k = 0 is the top of the spectrum.
    std::vector<double> eigenvector(int k) const;

    /// S(t) u = sum_k e^{lambda_k t} <u,v_k>_w v_k ; exact passthrough at t = 0.
    std::vector<double> apply_semigroup(double t, std::span<const double> u) const;
    /// R(lambda, A) u = sum_k (lambda - lambda_k)^{-1} <u,v_k>_w v_k, lambda > 0.
    std::vector<double> apply_resolvent(double lambda, std::span<const double> u) const;
    /// A u via the stored tridiagonal matrix (exact, no spectral roundtrip).
    std::vector<double> apply_operator(std::span<const double> u) const;
    void apply_operator(std::span<const double> u, std::span<double> out) const;

    /// Spectral coefficients c_k = <u, v_k>_w.
    Eigen::VectorXd coefficients(std::span<const double> u) const;

    /// Dense propagator e^{A dt}; the integrator caches one per step size.
    Eigen::MatrixXd propagator(double dt) const;

    double weighted_dot(std::span<const double> u, std::span<const double> v) const;

 private:
    SemigroupCache() = default;
    void decompose(const TriDiag& matrix);

    std::vector<double> weights_;
    std::vector<double> eigvals_;
    TriDiag matrix_;
    Eigen::MatrixXd basis_;        // column k = v_k
    Eigen::MatrixXd coef_matrix_;  // row k = (w .* v_k)^T, so coeffs = coef_matrix_ * u
};

}  // namespace srd
