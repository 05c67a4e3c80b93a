#include "belab/montecarlo.hpp"

#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace belab {

namespace {

// Splits [0, total) into contiguous chunks and runs fn(begin, end) on each
// worker thread. Workers only write to disjoint index ranges.
template <typename Fn>
void parallel_ranges(long total, int workers, Fn&& fn) {
  if (workers <= 1 || total < 2 * workers) {
    fn(0L, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const long chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long begin = static_cast<long>(w) * chunk;
    const long end = std::min(total, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] { fn(begin, end); });
  }
  for (std::thread& t : pool) t.join();
}

} // namespace

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BELAB_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<double> collect_terminal_values(const MdsModel& model, long paths, std::uint64_t seed,
                                            int workers) {
  if (paths < 1) throw std::invalid_argument("collect_terminal_values: paths must be >= 1");
  model.validate();
  std::vector<double> values(static_cast<std::size_t>(paths));
  parallel_ranges(paths, resolve_workers(workers), [&](long begin, long end) {
    for (long j = begin; j < end; ++j)
      values[static_cast<std::size_t>(j)] = sample_terminal(model, seed, static_cast<std::uint64_t>(j));
  });
  return values;
}

std::vector<PathStats> collect_path_stats(const MdsModel& model, long paths, std::uint64_t seed,
                                          int workers) {
  if (paths < 1) throw std::invalid_argument("collect_path_stats: paths must be >= 1");
  model.validate();
  std::vector<PathStats> stats(static_cast<std::size_t>(paths));
  parallel_ranges(paths, resolve_workers(workers), [&](long begin, long end) {
    for (long j = begin; j < end; ++j)
      stats[static_cast<std::size_t>(j)] = sample_path_stats(model, seed, static_cast<std::uint64_t>(j));
  });
  return stats;
}

std::vector<double> collect_normalized_sums(const PartialSumWeights& weights,
                                            const Innovations& innovations, long paths,
                                            std::uint64_t seed, int workers) {
  if (paths < 1) throw std::invalid_argument("collect_normalized_sums: paths must be >= 1");
  std::vector<double> values(static_cast<std::size_t>(paths));
  parallel_ranges(paths, resolve_workers(workers), [&](long begin, long end) {
    for (long j = begin; j < end; ++j)
      values[static_cast<std::size_t>(j)] =
          simulate_normalized_sum(weights, innovations, seed, static_cast<std::uint64_t>(j));
  });
  return values;
}

} // namespace belab
