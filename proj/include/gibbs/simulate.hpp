#ifndef GIBBS_SIMULATE_HPP
#define GIBBS_SIMULATE_HPP

#include "gibbs/model.hpp"
#include "gibbs/prior.hpp"

#include <cstdint>

namespace gibbs {

struct ComplexityRefused : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimState {
  std::vector<long> sizes;  // one entry per block
  long n = 0;
  long j = 0;
  FrequencyCounts counts() const;
};

struct McResult {
  std::string statistic;
  long replicates = 0;
  double mean = 0.0;
  double se = 0.0;
  std::map<long, double> empirical_pmf;
};

// deterministic per-replicate stream: splitmix64(seed, replicate) keys the rng
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t replicate);

SimState sample_partition(const GibbsModel& model, long n, std::uint64_t seed);

struct ContinuationCounts {
  std::map<long, long> o, n_new, m;  // realized O_l, N_l, M_l
};
ContinuationCounts continue_sample(const GibbsModel& model, const PartitionData& data,
                                   long m, std::uint64_t seed);

// exact joint law of the continuation, as a map from the final tagged block
// configuration to its probability; old and new blocks are kept separate
struct TaggedConfig {
  std::map<std::pair<long, bool>, long> blocks;  // (size, is_new) -> count
  bool operator<(const TaggedConfig& o) const { return blocks < o.blocks; }
};
std::map<TaggedConfig, Scalar> enumerate_continuations(const EvalCtx& ctx,
                                                       const GibbsModel& model,
                                                       const PartitionData& data,
                                                       long m);

struct OraclePmfs {
  Pmf o, n_new, m;
};
OraclePmfs oracle_pmfs(const EvalCtx& ctx, const GibbsModel& model,
                       const PartitionData& data, long m, long l);

// hypergeometric subsample: draw k of the n observations without replacement
// and return the induced frequency counts of the species still present
FrequencyCounts subsample_species(const FrequencyCounts& counts, long k,
                                  std::uint64_t seed);

// Monte Carlo mean/SE of a per-replicate statistic
McResult mc_statistic(const std::string& name, long replicates,
                      const std::function<double(std::uint64_t)>& replicate);

}  // namespace gibbs

#endif
