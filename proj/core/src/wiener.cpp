#include "srd/wiener.hpp"

#include <cmath>

#include "srd/errors.hpp"
#include "srd/rng.hpp"

namespace srd {

WienerIncrements sample_increments(std::uint64_t seed, std::uint64_t path_index, int steps, int K,
                                   double dt) {
    if (!(dt > 0.0)) throw InvalidParameter("sample_increments: dt must be positive");
    if (steps < 0 || K < 0) throw InvalidParameter("sample_increments: negative table shape");

    WienerIncrements w;
    w.dt = dt;
    w.steps = steps;
    w.K = K;
    w.seed = seed;
    w.path_index = path_index;
    w.table.resize(static_cast<std::size_t>(steps) * K);

    GaussianStream stream(derive_stream(seed, {path_index}));
    const double scale = std::sqrt(dt);
    for (int s = 0; s < steps; ++s)
        for (int k = 0; k < K; ++k)
            w.table[static_cast<std::size_t>(s) * K + k] =
                scale * stream.normal(static_cast<std::uint64_t>(s) * K + k);
    return w;
}

WienerIncrements WienerIncrements::coarsen(int factor) const {
    if (factor < 1 || steps % factor != 0)
        throw InvalidParameter("coarsen: factor must divide the step count");

    WienerIncrements out;
    out.dt = dt * factor;
    out.steps = steps / factor;
    out.K = K;
    out.seed = seed;
    out.path_index = path_index;
    out.table.assign(static_cast<std::size_t>(out.steps) * K, 0.0);
    for (int s = 0; s < steps; ++s) {
        int cs = s / factor;
        for (int k = 0; k < K; ++k)
            out.table[static_cast<std::size_t>(cs) * K + k] += at(s, k);
    }
    return out;
}

}  // namespace srd
