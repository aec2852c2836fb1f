#include "srd/export.hpp"

#include <cstdio>

namespace srd {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // prefer the shortest representation that round-trips
    for (int prec = 1; prec <= 16; ++prec) {
        char trial[40];
        std::snprintf(trial, sizeof(trial), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(trial, "%lf", &back);
        if (back == v) return trial;
    }
    return buf;
}

void export_trajectories(const Ensemble& ensemble, std::ostream& out) {
    const int n = ensemble.model().n();
    out << "path,step,time";
    for (int i = 0; i < n; ++i) out << ",node_" << i;
    out << ",stopped\n";

    std::vector<std::string> blocks(ensemble.spec().paths);
    ensemble.for_each_path([&](long p, const Trajectory& traj) {
        std::string block;
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
            block += std::to_string(p);
            block += ',';
            block += std::to_string(i);
            block += ',';
            block += format_double(traj.times[i]);
            for (int j = 0; j < n; ++j) {
                block += ',';
                block += format_double(traj.states[i][j]);
            }
            block += ',';
            block += (traj.stopped() && static_cast<int>(i) >= traj.stop_index) ? '1' : '0';
            block += '\n';
        }
        blocks[p] = std::move(block);
    });
    for (const auto& block : blocks) out << block;
}

void export_observables(const Ensemble& ensemble,
                        const std::vector<std::pair<std::string, Observable>>& observables,
                        std::ostream& out, int stride) {
    out << "path,time,observable,value\n";
    if (stride < 1) stride = 1;

    std::vector<std::string> blocks(ensemble.spec().paths);
    ensemble.for_each_path([&](long p, const Trajectory& traj) {
        std::string block;
        for (std::size_t i = 0; i < traj.states.size(); i += stride) {
            for (const auto& [name, fn] : observables) {
                block += std::to_string(p);
                block += ',';
                block += format_double(traj.times[i]);
                block += ',';
                block += name;
                block += ',';
                block += format_double(fn(traj.states[i]));
                block += '\n';
            }
        }
        blocks[p] = std::move(block);
    });
    for (const auto& block : blocks) out << block;
}

}  // namespace srd
