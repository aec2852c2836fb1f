#pragma once

#include <cstdint>
#include <vector>

namespace srd {

/// Table of truncated cylindrical Wiener increments: steps x K independent
/// N(0, dt) draws. Column k is one scalar Brownian motion of the K-mode
/// truncation. Regenerating with the same (seed, path_index) reproduces the
/// table bit-exactly.
struct WienerIncrements {
    double dt = 0.0;
    int steps = 0;
    int K = 0;
    std::uint64_t seed = 0;
    std::uint64_t path_index = 0;
    std::vector<double> table;  // row-major, table[step * K + k]

    double at(int step, int k) const { return table[static_cast<std::size_t>(step) * K + k]; }

    /// Sum consecutive groups of `factor` rows, producing the increments of
    /// the same Brownian path on a grid coarsened by `factor`.
    WienerIncrements coarsen(int factor) const;
};

WienerIncrements sample_increments(std::uint64_t seed, std::uint64_t path_index, int steps, int K,
                                   double dt);

}  // namespace srd
