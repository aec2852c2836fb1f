#pragma once

#include <functional>

namespace srd {

/// Adaptive Simpson quadrature with Richardson acceptance. `tol` is an
/// absolute tolerance on the final value; the recursion splits it between
/// halves in the usual way.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 60);

/// Integral of f over [a, b] with 0 < a < b computed after the substitution
/// r = e^x. Keeps adaptive quadrature well-conditioned for integrands that
/// vary over many decades near zero (Osgood integrals, level equations).
double log_substituted_integral(const std::function<double(double)>& f, double a, double b,
                                double tol);

}  // namespace srd
