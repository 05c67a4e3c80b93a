#ifndef BELAB_MONTECARLO_HPP
#define BELAB_MONTECARLO_HPP

#include <cstdint>
#include <vector>

#include "belab/linproc.hpp"
#include "belab/model.hpp"

namespace belab {

// Number of workers to use: explicit request, else BELAB_WORKERS, else
// hardware concurrency.
int resolve_workers(int requested);

// Bulk path collection. Results are written into slots indexed by path, so
// the output is a pure function of (inputs, seed) regardless of the worker
// count or scheduling.
std::vector<double> collect_terminal_values(const MdsModel& model, long paths, std::uint64_t seed,
                                            int workers);
std::vector<PathStats> collect_path_stats(const MdsModel& model, long paths, std::uint64_t seed,
                                          int workers);
std::vector<double> collect_normalized_sums(const PartialSumWeights& weights,
                                            const Innovations& innovations, long paths,
                                            std::uint64_t seed, int workers);

} // namespace belab

#endif
