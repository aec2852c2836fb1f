#include "srd/elliptic.hpp"

#include <cmath>
#include <string>

#include "srd/errors.hpp"

namespace srd {

void TriDiag::apply(std::span<const double> u, std::span<double> out) const {
    const int n = size();
    for (int i = 0; i < n; ++i) {
        double v = diag[i] * u[i];
        if (i > 0) v += off[i - 1] * u[i - 1];
        if (i + 1 < n) v += off[i] * u[i + 1];
        out[i] = v;
    }
}

TriDiag TriDiag::zero(int n) {
    TriDiag m;
    m.diag.assign(n, 0.0);
    m.off.assign(n > 0 ? n - 1 : 0, 0.0);
    return m;
}

std::vector<double> EllipticOperator::apply(std::span<const double> u) const {
    std::vector<double> out(grid_.n);
    matrix_.apply(u, out);
    return out;
}

EllipticOperator assemble_operator(const SpatialGrid& grid,
                                   const std::function<double(double)>& a,
                                   double ellipticity_floor) {
    const int n = grid.n;
    const double h = grid.spacing;
    std::vector<double> a_flux(n + 1);
    for (int i = 0; i <= n; ++i) {
        double x = (static_cast<double>(i) + 0.5) * h;
        a_flux[i] = a(x);
        if (!(a_flux[i] >= ellipticity_floor)) {
            throw EllipticityViolation("assemble_operator: a(" + std::to_string(x) + ") = " +
                                       std::to_string(a_flux[i]) + " below ellipticity floor");
        }
    }

    TriDiag m;
    m.diag.resize(n);
    m.off.resize(n - 1);
    const double inv_h2 = 1.0 / (h * h);
    for (int i = 0; i < n; ++i) {
        double left = a_flux[i];
        double right = a_flux[i + 1];
        if (grid.bc == Boundary::Neumann) {
            // ghost reflection u_0 = u_1, u_{n+1} = u_n drops the boundary flux
            if (i == 0) left = 0.0;
            if (i == n - 1) right = 0.0;
        }
        m.diag[i] = -(left + right) * inv_h2;
        if (i + 1 < n) m.off[i] = a_flux[i + 1] * inv_h2;
    }
    return EllipticOperator(grid, std::move(a_flux), std::move(m));
}

}  // namespace srd
