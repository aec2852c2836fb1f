#include "srd/drift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "srd/errors.hpp"
#include "srd/rng.hpp"

namespace srd {

PolynomialDrift PolynomialDrift::from_samples(const SpatialGrid& grid,
                                              std::vector<std::vector<double>> coeffs) {
    if (coeffs.empty()) throw InvalidParameter("PolynomialDrift: no coefficients");
    const int degree = static_cast<int>(coeffs.size()) - 1;
    if (degree < 1 || degree % 2 == 0)
        throw InvalidParameter("PolynomialDrift: degree must be odd, got " + std::to_string(degree));
    for (const auto& row : coeffs)
        if (static_cast<int>(row.size()) != grid.n)
            throw InvalidParameter("PolynomialDrift: coefficient row length != grid size");

    double lead_max = *std::max_element(coeffs.back().begin(), coeffs.back().end());
    if (!(lead_max < 0.0))
        throw InvalidParameter("PolynomialDrift: leading coefficient must be <= -eps < 0 everywhere");

    PolynomialDrift f;
    f.n_ = grid.n;
    f.degree_ = degree;
    f.eps_lead_ = -lead_max;
    f.coeffs_ = std::move(coeffs);
    return f;
}

PolynomialDrift PolynomialDrift::from_constants(const SpatialGrid& grid,
                                                const std::vector<double>& coeffs) {
    std::vector<std::vector<double>> rows;
    rows.reserve(coeffs.size());
    for (double c : coeffs) rows.emplace_back(grid.n, c);
    return from_samples(grid, std::move(rows));
}

void PolynomialDrift::eval(std::span<const double> u, std::span<double> out) const {
    for (int i = 0; i < n_; ++i) {
        double acc = coeffs_[degree_][i];
        for (int j = degree_ - 1; j >= 0; --j) acc = acc * u[i] + coeffs_[j][i];
        out[i] = acc;
    }
}

std::vector<double> PolynomialDrift::eval(std::span<const double> u) const {
    std::vector<double> out(n_);
    eval(u, out);
    return out;
}

double PolynomialDrift::eval_scalar(int node, double r) const {
    double acc = coeffs_[degree_][node];
    for (int j = degree_ - 1; j >= 0; --j) acc = acc * r + coeffs_[j][node];
    return acc;
}

double PolynomialDrift::sign_radius() const {
    double lower_sum = 0.0;
    for (int j = 0; j < degree_; ++j) {
        double m = 0.0;
        for (double c : coeffs_[j]) m = std::max(m, std::abs(c));
        lower_sum += m;
    }
    return std::max(1.0, lower_sum / eps_lead_ * (1.0 + 1e-9) + 1e-12);
}

DissipativityReport check_dissipativity(const PolynomialDrift& F, double a_const, double b_const,
                                        long samples, std::uint64_t rng_seed) {
    if (!(a_const > 0.0) || !(b_const > 0.0))
        throw InvalidParameter("check_dissipativity: a and b must be positive");

    const auto& c0 = F.coefficients()[0];
    const int n = static_cast<int>(c0.size());
    const int p = F.degree();

    UniformStream amp(derive_stream(rng_seed, {0xA}));
    UniformStream node(derive_stream(rng_seed, {0xB}));

    DissipativityReport report;
    report.samples = samples;
    report.worst_margin = std::numeric_limits<double>::infinity();

    std::vector<double> u(n), v(n), uv(n), fu(n), fv(n);
    for (long s = 0; s < samples; ++s) {
        const std::uint64_t base = static_cast<std::uint64_t>(s) * (2 * n + 2);
        double au = 3.0 * amp.uniform(base);
        double av = 3.0 * amp.uniform(base + 1);
        for (int i = 0; i < n; ++i) {
            u[i] = au * node.uniform(base + 2 + i, -1.0, 1.0);
            v[i] = av * node.uniform(base + 2 + n + i, -1.0, 1.0);
            uv[i] = u[i] + v[i];
        }
        F.eval(uv, fu);
        F.eval(v, fv);

        int x0 = 0;
        double best = std::abs(u[0]);
        for (int i = 1; i < n; ++i) {
            if (std::abs(u[i]) > best) {
                best = std::abs(u[i]);
                x0 = i;
            }
        }
        double sgn = (u[x0] > 0.0) ? 1.0 : (u[x0] < 0.0 ? -1.0 : 0.0);
        double lhs = sgn * (fu[x0] - fv[x0]);

        double norm_u = sup_norm(u);
        double norm_v = sup_norm(v);
        double rhs = a_const * std::pow(1.0 + norm_v, p) - b_const * std::pow(norm_u, p);

        double margin = rhs - lhs;
        report.worst_margin = std::min(report.worst_margin, margin);
        if (margin < -1e-12) ++report.violations;
    }
    return report;
}

}  // namespace srd
