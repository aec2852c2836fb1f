#include "srd/grid.hpp"

#include <cmath>
#include <cstdlib>

#include "srd/errors.hpp"

namespace srd {

std::string to_string(Boundary bc) {
    return bc == Boundary::Dirichlet ? "dirichlet" : "neumann";
}

double compensated_sum(std::span<const double> values) {
    double sum = 0.0;
    double comp = 0.0;
    for (double v : values) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

double SpatialGrid::dot(std::span<const double> u, std::span<const double> v) const {
    double sum = 0.0;
    double comp = 0.0;
    for (int i = 0; i < n; ++i) {
        double term = weights[i] * u[i] * v[i];
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

double SpatialGrid::norm(std::span<const double> u) const {
    return std::sqrt(dot(u, u));
}

SpatialGrid build_grid(int n, double length, Boundary bc) {
    if (n < 2) throw InvalidParameter("build_grid: need at least 2 interior nodes, got " + std::to_string(n));
    if (!(length > 0.0)) throw InvalidParameter("build_grid: domain length must be positive");

    SpatialGrid g;
    g.n = n;
    g.length = length;
    g.spacing = length / static_cast<double>(n + 1);
    g.bc = bc;
    g.nodes.resize(n);
    g.weights.assign(n, g.spacing);
    for (int i = 0; i < n; ++i) g.nodes[i] = static_cast<double>(i + 1) * g.spacing;
    return g;
}

double sup_norm(std::span<const double> u) {
    double m = 0.0;
    for (double v : u) {
        double a = std::abs(v);
        if (a > m) m = a;
    }
    return m;
}

}  // namespace srd
