#include "srd/test_function.hpp"

#include <cmath>

#include "srd/errors.hpp"
#include "srd/rng.hpp"

namespace srd {

CylTestFunction CylTestFunction::linear(std::vector<double> xstar) {
    CylTestFunction f;
    f.kind_ = Kind::Linear;
    f.functionals_.push_back(std::move(xstar));
    f.phi_ = [](std::span<const double> s) { return s[0]; };
    f.grad_ = [](std::span<const double>, std::span<double> g) { g[0] = 1.0; };
    f.hess_ = [](std::span<const double>, std::span<double> h) { h[0] = 0.0; };
    return f;
}

CylTestFunction CylTestFunction::square(std::vector<double> xstar) {
    CylTestFunction f;
    f.kind_ = Kind::Square;
    f.functionals_.push_back(std::move(xstar));
    f.phi_ = [](std::span<const double> s) { return s[0] * s[0]; };
    f.grad_ = [](std::span<const double> s, std::span<double> g) { g[0] = 2.0 * s[0]; };
    f.hess_ = [](std::span<const double>, std::span<double> h) { h[0] = 2.0; };
    return f;
}

CylTestFunction CylTestFunction::general(std::vector<std::vector<double>> functionals, Phi phi,
                                         Grad grad, Hess hess) {
    if (functionals.empty()) throw InvalidParameter("CylTestFunction: need at least one functional");
    CylTestFunction f;
    f.kind_ = Kind::General;
    f.functionals_ = std::move(functionals);
    f.phi_ = std::move(phi);
    f.grad_ = std::move(grad);
    f.hess_ = std::move(hess);
    return f;
}

void CylTestFunction::pairings(const SemigroupCache& cache, std::span<const double> u,
                               std::span<double> out) const {
    for (int j = 0; j < arity(); ++j) out[j] = cache.weighted_dot(u, functionals_[j]);
}

double CylTestFunction::value(const SemigroupCache& cache, std::span<const double> u) const {
    std::vector<double> s(arity());
    pairings(cache, u, s);
    return phi_(s);
}

double CylTestFunction::derivative_mismatch(std::uint64_t seed, int probes, double box) const {
    const int m = arity();
    UniformStream pts(derive_stream(seed, {0xFD}));
    std::vector<double> s(m), g(m), h(static_cast<std::size_t>(m) * m), sp(m), sm(m), gp(m), gm(m);
    double worst = 0.0;
    const double eps = 1e-5;
    for (int probe = 0; probe < probes; ++probe) {
        for (int j = 0; j < m; ++j)
            s[j] = pts.uniform(static_cast<std::uint64_t>(probe) * m + j, -box, box);
        grad_(s, g);
        hess_(s, h);
        for (int j = 0; j < m; ++j) {
            sp = s;
            sm = s;
            sp[j] += eps;
            sm[j] -= eps;
            double fd = (phi_(sp) - phi_(sm)) / (2.0 * eps);
            double scale = std::max({1.0, std::abs(fd), std::abs(g[j])});
            worst = std::max(worst, std::abs(fd - g[j]) / scale);
            grad_(sp, gp);
            grad_(sm, gm);
            for (int l = 0; l < m; ++l) {
                double fdh = (gp[l] - gm[l]) / (2.0 * eps);
                double hl = h[static_cast<std::size_t>(l) * m + j];
                double hscale = std::max({1.0, std::abs(fdh), std::abs(hl)});
                worst = std::max(worst, std::abs(fdh - hl) / hscale);
            }
        }
    }
    return worst;
}

}  // namespace srd
