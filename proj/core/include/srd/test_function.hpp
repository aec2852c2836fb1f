#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "srd/semigroup.hpp"

namespace srd {

/// Cylindrical test function f(u) = phi(<u,x*_1>_w, ..., <u,x*_m>_w) with
/// supplied gradient and Hessian of phi. The linear/square kinds are the
/// minimal class {<.,x*>, <.,x*>^2} that already determines the local
/// martingale problem.
class CylTestFunction {
 public:
    enum class Kind { Linear, Square, General };

    using Phi = std::function<double(std::span<const double>)>;
    using Grad = std::function<void(std::span<const double>, std::span<double>)>;
    using Hess = std::function<void(std::span<const double>, std::span<double>)>;  // m x m row-major

    static CylTestFunction linear(std::vector<double> xstar);
    static CylTestFunction square(std::vector<double> xstar);
    static CylTestFunction general(std::vector<std::vector<double>> functionals, Phi phi, Grad grad,
                                   Hess hess);

    Kind kind() const { return kind_; }
    int arity() const { return static_cast<int>(functionals_.size()); }
    const std::vector<std::vector<double>>& functionals() const { return functionals_; }

    void pairings(const SemigroupCache& cache, std::span<const double> u,
                  std::span<double> out) const;
    double value(const SemigroupCache& cache, std::span<const double> u) const;

    double phi(std::span<const double> s) const { return phi_(s); }
    void gradient(std::span<const double> s, std::span<double> out) const { grad_(s, out); }
    void hessian(std::span<const double> s, std::span<double> out) const { hess_(s, out); }

    /// Max relative mismatch between the supplied derivatives and central
    /// finite differences of phi at `probes` random points.
    double derivative_mismatch(std::uint64_t seed, int probes = 16, double box = 2.0) const;

 private:
    Kind kind_ = Kind::General;
    std::vector<std::vector<double>> functionals_;
    Phi phi_;
    Grad grad_;
    Hess hess_;
};

}  // namespace srd
