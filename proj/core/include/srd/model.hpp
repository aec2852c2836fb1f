#pragma once

#include "srd/drift.hpp"
#include "srd/noise.hpp"
#include "srd/semigroup.hpp"

namespace srd {

/// Discretized evolution model [A, F, G]. Null drift means F = 0; a null or
/// zero-mode noise family means a deterministic equation. All components
/// are immutable and shared by reference; the owner must outlive the model.
struct Model {
    const SemigroupCache* cache = nullptr;
    const PolynomialDrift* drift = nullptr;
    const NoiseFamily* noise = nullptr;

    int n() const { return cache->size(); }
    int noise_modes() const { return noise ? noise->K() : 0; }
};

}  // namespace srd
