#pragma once

#include <stdexcept>
#include <string>

namespace srd {

/// Precondition or parameter-range violation.
class InvalidParameter : public std::invalid_argument {
 public:
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

/// Diffusion coefficient dipped below the ellipticity floor.
class EllipticityViolation : public std::runtime_error {
 public:
    explicit EllipticityViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Modulus handed to the Osgood classifier is not positive/nondecreasing.
class InvalidModulus : public std::runtime_error {
 public:
    explicit InvalidModulus(const std::string& what) : std::runtime_error(what) {}
};

/// Regularization levels requested for a modulus whose Osgood integral converges.
class OsgoodFailure : public std::runtime_error {
 public:
    explicit OsgoodFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Root bracketing for a regularization level a_n failed.
class LevelConstructionFailure : public std::runtime_error {
 public:
    explicit LevelConstructionFailure(const std::string& what) : std::runtime_error(what) {}
};

/// A statistical test was asked to run on too few usable paths.
class InsufficientSample : public std::runtime_error {
 public:
    explicit InsufficientSample(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration file could not be validated; carries the full violation list.
class ConfigError : public std::runtime_error {
 public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace srd
