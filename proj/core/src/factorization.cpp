#include "srd/factorization.hpp"

#include <cmath>

#include "srd/errors.hpp"
#include "srd/quadrature.hpp"

namespace srd {

namespace {

// int_{a}^{b} tau^{gamma-1} e^{lambda tau} dtau for 0 <= a < b. The a = 0
// cell carries the integrable singularity; substituting tau = sigma^{1/gamma}
// turns it into a smooth integrand.
double kernel_cell(double gamma, double lambda, double a, double b) {
    if (gamma == 1.0) {
        if (lambda == 0.0) return b - a;
        return (std::exp(lambda * b) - std::exp(lambda * a)) / lambda;
    }
    if (lambda == 0.0) return (std::pow(b, gamma) - std::pow(a, gamma)) / gamma;
    if (a == 0.0) {
        auto g = [gamma, lambda](double sigma) {
            return std::exp(lambda * std::pow(sigma, 1.0 / gamma));
        };
        return adaptive_simpson(g, 0.0, std::pow(b, gamma), 1e-13 * std::pow(b, gamma)) / gamma;
    }
    auto f = [gamma, lambda](double tau) {
        return std::pow(tau, gamma - 1.0) * std::exp(lambda * tau);
    };
    return adaptive_simpson(f, a, b, 1e-13 * (b - a) * std::pow(a, gamma - 1.0));
}

}  // namespace

std::vector<std::vector<double>> apply_factorization(const SemigroupCache& cache, double gamma,
                                                     const std::vector<std::vector<double>>& f_path,
                                                     double dt) {
    if (!(gamma > 0.0) || gamma > 1.0)
        throw InvalidParameter("apply_factorization: gamma must lie in (0, 1]");
    if (!(dt > 0.0)) throw InvalidParameter("apply_factorization: dt must be positive");

    const int m = static_cast<int>(f_path.size());
    const int n = cache.size();
    std::vector<std::vector<double>> out(m, std::vector<double>(n, 0.0));
    if (m == 0) return out;

    // spectral coefficients of each input slice
    std::vector<Eigen::VectorXd> coeff(m);
    for (int j = 0; j < m; ++j) coeff[j] = cache.coefficients(f_path[j]);

    // kernel weights per mode and lag
    const auto& eig = cache.eigenvalues();
    std::vector<std::vector<double>> w(n, std::vector<double>(m, 0.0));
    for (int q = 0; q < n; ++q)
        for (int l = 0; l < m; ++l)
            w[q][l] = kernel_cell(gamma, eig[q], l * dt, (l + 1) * dt);

    Eigen::MatrixXd basis(n, n);
    for (int q = 0; q < n; ++q) {
        auto v = cache.eigenvector(q);
        for (int i = 0; i < n; ++i) basis(i, q) = v[i];
    }

    Eigen::VectorXd acc(n);
    for (int i = 1; i < m; ++i) {
        acc.setZero();
        for (int j = 0; j < i; ++j) {
            const int lag = i - 1 - j;
            for (int q = 0; q < n; ++q) acc[q] += coeff[j][q] * w[q][lag];
        }
        Eigen::VectorXd val = basis * acc;
        for (int q = 0; q < n; ++q) out[i][q] = val[q];
    }
    return out;
}

}  // namespace srd
