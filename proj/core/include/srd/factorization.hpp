#pragma once

#include <span>
#include <vector>

#include "srd/semigroup.hpp"

namespace srd {

/// Factorization operator
///   [R_gamma f](t) = int_0^t (t-s)^{gamma-1} S(t-s) f(s) ds
/// discretized by product integration: f is treated as piecewise constant
/// on the step intervals and the singular kernel is integrated exactly
/// (to quadrature tolerance) against each eigenmode, so the scheme is
/// exact for piecewise-constant inputs. R_1 is the plain semigroup
/// convolution. gamma must lie in (0, 1].
std::vector<std::vector<double>> apply_factorization(const SemigroupCache& cache, double gamma,
                                                     const std::vector<std::vector<double>>& f_path,
                                                     double dt);

}  // namespace srd
