#include "srd/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "srd/errors.hpp"
#include "srd/quadrature.hpp"

namespace srd {

std::string to_string(OsgoodClass c) {
    switch (c) {
        case OsgoodClass::Diverges: return "diverges";
        case OsgoodClass::Converges: return "converges";
        default: return "inconclusive";
    }
}

OsgoodReport validate_osgood(const std::function<double(double)>& h_fn, double r_min, double tol) {
    if (!(r_min > 0.0) || r_min >= 1e-2)
        throw InvalidParameter("validate_osgood: r_min must lie in (0, 1e-2)");
    if (!(tol > 0.0)) throw InvalidParameter("validate_osgood: tol must be positive");

    // precondition: positive and nondecreasing on (0, 1]
    {
        const int probes = 200;
        double prev = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < probes; ++j) {
            double r = std::exp(std::log(r_min) * (1.0 - static_cast<double>(j) / (probes - 1)));
            double v = h_fn(r);
            if (!(v > 0.0) || !std::isfinite(v))
                throw InvalidModulus("validate_osgood: modulus not positive at r = " +
                                     std::to_string(r));
            if (v < prev - 1e-12 * std::max(1.0, prev))
                throw InvalidModulus("validate_osgood: modulus decreasing near r = " +
                                     std::to_string(r));
            prev = v;
        }
    }

    OsgoodReport report;
    for (double rho = 1e-2; rho >= r_min * (1.0 - 1e-9); rho *= 1e-2) report.rho.push_back(rho);

    auto integrand = [&h_fn](double r) {
        double v = h_fn(r);
        return 1.0 / (v * v);
    };
    for (double rho : report.rho) {
        double value = log_substituted_integral(integrand, rho, 1.0, 1e-9);
        report.integral.push_back(value);
    }

    std::vector<double> diffs;
    for (std::size_t j = 1; j < report.integral.size(); ++j)
        diffs.push_back(report.integral[j] - report.integral[j - 1]);

    if (diffs.empty()) {
        report.classification = OsgoodClass::Inconclusive;
        return report;
    }
    bool all_grow = std::all_of(diffs.begin(), diffs.end(), [tol](double d) { return d >= tol; });
    std::size_t tail = std::min<std::size_t>(2, diffs.size());
    bool tail_cauchy = true;
    for (std::size_t j = diffs.size() - tail; j < diffs.size(); ++j)
        tail_cauchy = tail_cauchy && (diffs[j] < tol);

    if (all_grow)
        report.classification = OsgoodClass::Diverges;
    else if (tail_cauchy)
        report.classification = OsgoodClass::Converges;
    else
        report.classification = OsgoodClass::Inconclusive;
    return report;
}

bool NoiseCertificate::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* NoiseCertificate::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

std::string sample_tag(int k, double x, double r) {
    std::ostringstream ss;
    ss << "k=" << k << " x=" << x << " r=" << r;
    return ss.str();
}

void track(CheckResult& res, double margin, const std::string& where, double tol = 1e-12) {
    if (margin > res.worst) {
        res.worst = margin;
        res.where = where;
    }
    if (margin > tol) res.passed = false;
}

}  // namespace

NoiseCertificate validate_noise_family(const NoiseFamily& G, const LatticeSpec& lattice) {
    NoiseCertificate cert;
    const SpatialGrid& grid = G.grid();
    const int K = G.K();

    std::vector<double> xs(lattice.nx), rs(lattice.nr);
    for (int i = 0; i < lattice.nx; ++i)
        xs[i] = grid.length * static_cast<double>(i) / (lattice.nx - 1);
    for (int j = 0; j < lattice.nr; ++j)
        rs[j] = -lattice.r_max + 2.0 * lattice.r_max * static_cast<double>(j) / (lattice.nr - 1);

    CheckResult growth{"growth_linear", true, -std::numeric_limits<double>::infinity(), ""};
    for (int k = 0; k < K; ++k) {
        double a = G.modes()[k].alpha;
        double b = G.modes()[k].beta;
        for (double x : xs)
            for (double r : rs)
                track(growth, std::abs(G.g(k, x, r)) - (a + b * std::abs(r)), sample_tag(k, x, r));
    }
    cert.checks.push_back(growth);

    CheckResult holder{"holder_modulus", true, -std::numeric_limits<double>::infinity(), ""};
    for (int k = 0; k < K; ++k) {
        for (double x : xs) {
            for (int j1 = 0; j1 < lattice.nr; ++j1) {
                for (int j2 = j1 + 1; j2 < lattice.nr; ++j2) {
                    double gap = std::abs(G.g(k, x, rs[j1]) - G.g(k, x, rs[j2]));
                    double bound = G.sigma(k, std::abs(rs[j1] - rs[j2]));
                    track(holder, gap - bound, sample_tag(k, x, rs[j1]) + ".." +
                                                   std::to_string(rs[j2]));
                }
            }
        }
    }
    cert.checks.push_back(holder);

    // Hyp (G)(ii) does not state sigma_k(0) = 0, but h(0+) = 0 underlies the
    // uniqueness argument; families with a jump at zero are flagged.
    CheckResult sigma0{"sigma_zero_at_origin", true, -std::numeric_limits<double>::infinity(), ""};
    for (int k = 0; k < K; ++k)
        track(sigma0, std::abs(G.sigma(k, 0.0)), "k=" + std::to_string(k));
    cert.checks.push_back(sigma0);

    CheckResult hmono{"h_nondecreasing", true, -std::numeric_limits<double>::infinity(), ""};
    double prev = 0.0;
    for (int j = 0; j <= 64; ++j) {
        double r = 2.0 * lattice.r_max * static_cast<double>(j) / 64.0;
        double v = G.h(r);
        if (j > 0) track(hmono, prev - v, "r=" + std::to_string(r));
        prev = v;
    }
    cert.checks.push_back(hmono);

    if (grid.bc == Boundary::Dirichlet) {
        CheckResult bdry{"dirichlet_boundary_zero", true,
                         -std::numeric_limits<double>::infinity(), ""};
        for (int k = 0; k < K; ++k) {
            track(bdry, std::abs(G.g(k, 0.0, 0.0)), sample_tag(k, 0.0, 0.0));
            track(bdry, std::abs(G.g(k, grid.length, 0.0)), sample_tag(k, grid.length, 0.0));
        }
        cert.checks.push_back(bdry);
    }

    CheckResult summ{"l2_summability", true, -std::numeric_limits<double>::infinity(), ""};
    double a2 = 0.0, b2 = 0.0;
    for (int k = 0; k < K; ++k) {
        a2 += G.modes()[k].alpha * G.modes()[k].alpha;
        b2 += G.modes()[k].beta * G.modes()[k].beta;
    }
    summ.passed = std::isfinite(a2) && std::isfinite(b2) && std::isfinite(G.tail_bound());
    summ.worst = G.tail_bound();
    summ.where = "tail beyond K=" + std::to_string(K);
    cert.checks.push_back(summ);

    return cert;
}

NoiseCertificate validate_drift(const PolynomialDrift& F, const SpatialGrid& grid) {
    NoiseCertificate cert;

    CheckResult lead{"leading_coefficient_negative", true,
                     -std::numeric_limits<double>::infinity(), ""};
    const auto& top = F.coefficients().back();
    for (int i = 0; i < grid.n; ++i)
        track(lead, top[i], "node " + std::to_string(i), 0.0);
    cert.checks.push_back(lead);

    if (grid.bc == Boundary::Dirichlet) {
        CheckResult b0{"b0_boundary_decay", true, -std::numeric_limits<double>::infinity(), ""};
        const auto& c0 = F.coefficients().front();
        double cmax = 0.0;
        for (double c : c0) cmax = std::max(cmax, std::abs(c));
        double allowed = 4.0 * cmax * grid.spacing / grid.length;
        track(b0, std::abs(c0.front()) - allowed, "node 0");
        track(b0, std::abs(c0.back()) - allowed, "node " + std::to_string(grid.n - 1));
        cert.checks.push_back(b0);
    }
    return cert;
}

}  // namespace srd
