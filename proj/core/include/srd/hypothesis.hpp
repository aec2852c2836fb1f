#pragma once

#include <functional>
#include <string>
#include <vector>

#include "srd/drift.hpp"
#include "srd/noise.hpp"

namespace srd {

enum class OsgoodClass { Diverges, Converges, Inconclusive };

std::string to_string(OsgoodClass c);

struct OsgoodReport {
    OsgoodClass classification = OsgoodClass::Inconclusive;
    std::vector<double> rho;       // descending cutoffs 1e-2, 1e-4, ...
    std::vector<double> integral;  // I(rho) = int_rho^1 h^{-2}(r) dr
};

/// Classifies the divergence of the Osgood integral of a modulus by the
/// growth of its partial integrals. Divergence is not decidable
/// numerically, so the outcome is a three-way classification: partial
/// integrals that keep growing by at least `tol` per two decades read as
/// Diverges, a Cauchy tail reads as Converges, anything else is
/// Inconclusive.
OsgoodReport validate_osgood(const std::function<double(double)>& h_fn, double r_min = 1e-12,
                             double tol = 1e-3);

struct CheckResult {
    std::string name;
    bool passed = true;
    double worst = 0.0;      // most violating margin observed (<= 0 means compliant)
    std::string where;       // sample location of the worst margin
};

struct NoiseCertificate {
    std::vector<CheckResult> checks;
    bool all_passed() const;
    const CheckResult* find(const std::string& name) const;
};

struct LatticeSpec {
    int nx = 9;
    int nr = 33;
    double r_max = 8.0;
};

/// Samples every hypothesis condition the family claims on an (x, r)
/// lattice: linear growth against (alpha_k, beta_k), the per-mode modulus
/// bound, monotonicity of the summed modulus, sigma_k(0) = 0, the
/// Dirichlet boundary compatibility g_k(x,0) = 0, and l^2 summability of
/// the retained constants plus the shipped tail bound.
NoiseCertificate validate_noise_family(const NoiseFamily& G, const LatticeSpec& lattice = {});

/// Drift-side conditions: negative leading coefficient margin and, under
/// Dirichlet conditions, decay of b_0 at the boundary-adjacent nodes.
NoiseCertificate validate_drift(const PolynomialDrift& F, const SpatialGrid& grid);

}  // namespace srd
