#pragma once

#include <span>
#include <vector>

#include "srd/ensemble.hpp"
#include "srd/model.hpp"
#include "srd/test_function.hpp"

namespace srd {

/// Bounded weight functions h_j for conditional-expectation tests; the
/// library is fixed (identity-one, tanh and clip of a pairing) so every
/// member has declared bound 1.
struct WeightFunction {
    enum class Kind { One, Tanh, Clip };
    Kind kind = Kind::One;
    std::vector<double> y;

    double bound() const { return 1.0; }
    double eval(const SemigroupCache& cache, std::span<const double> u) const;
};

struct WeightSpec {
    std::vector<double> times;
    std::vector<WeightFunction> fns;
};

struct MartingaleStatistic {
    double estimate = 0.0;
    double std_error = 0.0;
    long paths = 0;
    double window_start = 0.0;
    double window_end = 0.0;
    double z() const;
};

/// Generator of the discretized equation on a cylindrical test function:
///   Lf(u) = sum_j d_j phi . [<u, A x*_j> + <F(u), x*_j>]
///         + 1/2 sum_{j,l} [G(u)* x*_j, G(u)* x*_l] d2_{jl} phi,
/// with all pairings in the weighted inner product and A self-adjoint.
/// `drift_shift` evaluates the generator with F replaced by F + shift * 1
/// (the corrupted-generator control); it does not touch the dynamics.
double generator_apply(const Model& model, const CylTestFunction& f, std::span<const double> u,
                       double drift_shift = 0.0);

/// M^f along a trajectory: M(t_i) = f(u_i) - trapezoid of Lf(u) up to t_i,
/// frozen after the trajectory's stop index (the stopped martingale).
std::vector<double> mf_path(const Model& model, const CylTestFunction& f, const Trajectory& traj);

/// Weighted martingale-increment test: the mean over paths of
///   [M^f(t ^ tau) - M^f(s ^ tau)] . prod_j h_j(u(s_j)).
/// Throws InsufficientSample when fewer than 30 paths are unstopped at s.
MartingaleStatistic martingale_test(const Model& model, const CylTestFunction& f,
                                    const Ensemble& ensemble, double s, double t,
                                    const WeightSpec& weights = {}, double drift_shift = 0.0);

struct QvReport {
    double realized = 0.0;
    double predicted = 0.0;
    double rel_err = 0.0;
    long paths = 0;
};

/// Compares the realized quadratic variation of the martingale part of
/// <u, x*> against the generator's prediction int ||G(u)* x*||^2 ds, both
/// stopped at tau. rel_err is relative when the prediction is nonzero and
/// absolute otherwise.
QvReport quadratic_variation_test(const Model& model, const std::vector<double>& xstar,
                                  const Ensemble& ensemble, double t);

/// Grid index of a time that must sit on the trajectory grid.
int aligned_index(double time, double dt);

}  // namespace srd
