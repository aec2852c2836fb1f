#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "srd/ensemble.hpp"
#include "srd/markov.hpp"

namespace srd {

/// Shortest round-trip decimal form; used for every CSV number so files are
/// byte-identical across runs and worker counts.
std::string format_double(double v);

/// Header: path,step,time,node_0,...,node_{n-1},stopped
void export_trajectories(const Ensemble& ensemble, std::ostream& out);

/// Header: path,time,observable,value ; one row per (path, time, observable),
/// sampled every `stride` steps.
void export_observables(const Ensemble& ensemble,
                        const std::vector<std::pair<std::string, Observable>>& observables,
                        std::ostream& out, int stride = 1);

}  // namespace srd
