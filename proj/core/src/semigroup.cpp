#include "srd/semigroup.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>

#include "srd/errors.hpp"

namespace srd {

namespace {
Eigen::Map<const Eigen::VectorXd> as_vec(std::span<const double> u) {
    return Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
}
}  // namespace

SemigroupCache SemigroupCache::from_operator(const EllipticOperator& op) {
    return from_matrix(op.matrix(), op.grid().weights);
}

SemigroupCache SemigroupCache::from_matrix(const TriDiag& matrix, std::vector<double> weights) {
    if (matrix.size() != static_cast<int>(weights.size()))
        throw InvalidParameter("SemigroupCache: matrix/weight size mismatch");
    SemigroupCache cache;
    cache.weights_ = std::move(weights);
    cache.matrix_ = matrix;
    cache.decompose(matrix);
    return cache;
}

void SemigroupCache::decompose(const TriDiag& matrix) {
    const int n = matrix.size();

    // Symmetrize with respect to the weights: B = W^{1/2} A W^{-1/2} stays
    // tridiagonal and is symmetric in the Euclidean sense whenever W A is
    // symmetric, which the flux-form assembly guarantees.
    Eigen::VectorXd diag(n), sub(n > 1 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) diag[i] = matrix.diag[i];
    for (int i = 0; i + 1 < n; ++i)
        sub[i] = matrix.off[i] * std::sqrt(weights_[i] / weights_[i + 1]);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("SemigroupCache: eigendecomposition failed");

    // Eigen sorts ascending; store descending so index 0 is the top of the
    // spectrum (the slowest-decaying mode).
    eigvals_.resize(n);
    basis_.resize(n, n);
    coef_matrix_.resize(n, n);
    for (int k = 0; k < n; ++k) {
        const int src = n - 1 - k;
        eigvals_[k] = solver.eigenvalues()[src];
        for (int i = 0; i < n; ++i) {
            double v = solver.eigenvectors()(i, src) / std::sqrt(weights_[i]);
            basis_(i, k) = v;
            coef_matrix_(k, i) = v * weights_[i];
        }
    }

    // Residual check per eigenpair (cheap: one tridiagonal apply each).
    std::vector<double> v(n), av(n);
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) v[i] = basis_(i, k);
        matrix_.apply(v, av);
        double worst = 0.0;
        for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(av[i] - eigvals_[k] * v[i]));
        double allowed = 1e-10 * std::max(1.0, std::abs(eigvals_[k]));
        if (worst > allowed)
            throw std::runtime_error("SemigroupCache: eigenpair residual " + std::to_string(worst) +
                                     " exceeds tolerance for mode " + std::to_string(k));
    }
}

std::vector<double> SemigroupCache::eigenvector(int k) const {
    if (k < 0 || k >= size()) throw InvalidParameter("eigenvector: mode index out of range");
    std::vector<double> v(size());
    for (int i = 0; i < size(); ++i) v[i] = basis_(i, k);
    return v;
}

Eigen::VectorXd SemigroupCache::coefficients(std::span<const double> u) const {
    return coef_matrix_ * as_vec(u);
}

std::vector<double> SemigroupCache::apply_semigroup(double t, std::span<const double> u) const {
    if (t < 0.0) throw InvalidParameter("apply_semigroup: t must be nonnegative");
    if (t == 0.0) return std::vector<double>(u.begin(), u.end());

    Eigen::VectorXd c = coefficients(u);
    for (int k = 0; k < size(); ++k) c[k] *= std::exp(eigvals_[k] * t);
    Eigen::VectorXd out = basis_ * c;
    return std::vector<double>(out.data(), out.data() + out.size());
}

std::vector<double> SemigroupCache::apply_resolvent(double lambda, std::span<const double> u) const {
    if (!(lambda > 0.0))
        throw InvalidParameter("apply_resolvent: lambda must be positive (spectrum is <= 0)");

    Eigen::VectorXd c = coefficients(u);
    for (int k = 0; k < size(); ++k) c[k] /= (lambda - eigvals_[k]);
    Eigen::VectorXd out = basis_ * c;
    return std::vector<double>(out.data(), out.data() + out.size());
}

std::vector<double> SemigroupCache::apply_operator(std::span<const double> u) const {
    std::vector<double> out(size());
    matrix_.apply(u, out);
    return out;
}

void SemigroupCache::apply_operator(std::span<const double> u, std::span<double> out) const {
    matrix_.apply(u, out);
}

Eigen::MatrixXd SemigroupCache::propagator(double dt) const {
    if (dt < 0.0) throw InvalidParameter("propagator: dt must be nonnegative");
    Eigen::VectorXd scale(size());
    for (int k = 0; k < size(); ++k) scale[k] = std::exp(eigvals_[k] * dt);
    return basis_ * scale.asDiagonal() * coef_matrix_;
}

double SemigroupCache::weighted_dot(std::span<const double> u, std::span<const double> v) const {
    double sum = 0.0, comp = 0.0;
    for (int i = 0; i < size(); ++i) {
        double term = weights_[i] * u[i] * v[i];
        double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

}  // namespace srd
