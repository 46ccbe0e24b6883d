#include "gibbs/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace gibbs {

FrequencyCounts SimState::counts() const {
  FrequencyCounts c;
  for (long s : sizes) c.m[s] += 1;
  return c;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t replicate) {
  // splitmix64 over the combined key
  std::uint64_t z = seed + replicate * 0x9E3779B97F4A7C15ULL + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// one sequential allocation step; blocks carry an old/new tag
struct Sampler {
  const GibbsModel& model;
  std::mt19937_64 rng;
  std::vector<long> sizes;
  std::vector<bool> is_new;
  std::vector<long> owner;  // customer -> block index (Dirichlet / Pitman-Yor)
  std::vector<long> slots;  // Gnedin: one entry per customer plus one per block
  long n = 0, j = 0;
  double theta = 0, sigma = 0, gamma = 0, zeta = 0;

  Sampler(const GibbsModel& mdl, std::uint64_t seed) : model(mdl), rng(seed) {
    if (model.is_dirichlet()) {
      theta = model.dp().theta.get_d();
    } else if (model.is_pitman_yor()) {
      theta = model.py().theta.get_d();
      sigma = model.py().sigma.get_d();
    } else {
      gamma = model.gn().gamma.get_d();
      zeta = model.gn().zeta.get_d();
    }
  }

  void seed_block(long size, bool tag_new) {
    long b = static_cast<long>(sizes.size());
    sizes.push_back(size);
    is_new.push_back(tag_new);
    n += size;
    j += 1;
    if (model.is_gnedin()) {
      slots.push_back(b);
      for (long i = 0; i < size; ++i) slots.push_back(b);
    } else {
      for (long i = 0; i < size; ++i) owner.push_back(b);
    }
  }

  void join(long b) {
    sizes[b] += 1;
    n += 1;
    if (model.is_gnedin()) slots.push_back(b);
    else owner.push_back(b);
  }

  void step() {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    if (n == 0) {
      seed_block(1, true);
      return;
    }
    if (model.is_gnedin()) {
      double den = static_cast<double>(n) * n + gamma * n + zeta;
      double p_new = (static_cast<double>(j) * j - gamma * j + zeta) / den;
      if (unif(rng) < p_new) {
        seed_block(1, true);
      } else {
        // join weights n_i + 1: a slot per customer plus one per block
        std::uniform_int_distribution<size_t> pick(0, slots.size() - 1);
        join(slots[pick(rng)]);
      }
      return;
    }
    // new block with probability (theta + j sigma)/(theta + n); otherwise the
    // joined block is chosen with weight n_b - sigma by proposing a uniform
    // customer's block and accepting with (n_b - sigma)/n_b
    if (unif(rng) * (theta + n) < theta + j * sigma) {
      seed_block(1, true);
      return;
    }
    for (;;) {
      std::uniform_int_distribution<size_t> pick(0, owner.size() - 1);
      long b = owner[pick(rng)];
      if (sigma == 0.0 || unif(rng) < (sizes[b] - sigma) / sizes[b]) {
        join(b);
        return;
      }
    }
  }
};

}  // namespace

SimState sample_partition(const GibbsModel& model, long n, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample_partition: n must be >= 1");
  Sampler s(model, seed);
  for (long i = 0; i < n; ++i) s.step();
  SimState out;
  out.sizes = s.sizes;
  out.n = s.n;
  out.j = s.j;
  return out;
}

ContinuationCounts continue_sample(const GibbsModel& model, const PartitionData& data,
                                   long m, std::uint64_t seed) {
  data.validate();
  if (m < 0) throw DomainError("continue_sample: m must be >= 0");
  Sampler s(model, seed);
  for (auto [l, c] : data.counts.m)
    for (long i = 0; i < c; ++i) s.seed_block(l, false);
  s.j = data.j;
  s.n = data.n;
  for (long i = 0; i < m; ++i) s.step();
  ContinuationCounts out;
  for (size_t b = 0; b < s.sizes.size(); ++b) {
    long sz = s.sizes[b];
    if (s.is_new[b]) out.n_new[sz] += 1;
    else out.o[sz] += 1;
    out.m[sz] += 1;
  }
  return out;
}

std::map<TaggedConfig, Scalar> enumerate_continuations(const EvalCtx& ctx,
                                                       const GibbsModel& model,
                                                       const PartitionData& data,
                                                       long m) {
  data.validate();
  if (m > 5 || (m > 3 && data.j > 20))
    throw ComplexityRefused("enumerate_continuations: tree too large");
  std::map<TaggedConfig, Scalar> out;
  TaggedConfig start;
  for (auto [l, c] : data.counts.m)
    if (c > 0) start.blocks[{l, false}] = c;

  std::function<void(const TaggedConfig&, const Scalar&, long)> rec =
      [&](const TaggedConfig& cfg, const Scalar& prob, long steps) {
        if (prob.sgn() == 0) return;
        if (steps == m) {
          auto it = out.find(cfg);
          if (it == out.end()) out.emplace(cfg, prob);
          else it->second += prob;
          return;
        }
        long n = 0, j = 0;
        for (auto& [key, c] : cfg.blocks) {
          n += key.first * c;
          j += c;
        }
        Scalar vnj = v_weight(ctx, model, n, j);
        if (vnj.sgn() == 0) return;
        Scalar p_new = v_weight(ctx, model, n + 1, j + 1) / vnj;
        {
          TaggedConfig next = cfg;
          next.blocks[{1, true}] += 1;
          rec(next, prob * p_new, steps + 1);
        }
        Scalar vr = (j <= n) ? v_weight(ctx, model, n + 1, j) / vnj : Scalar(0);
        Scalar sg = ctx.lift(model.sigma());
        for (auto& [key, c] : cfg.blocks) {
          if (c == 0) continue;
          Scalar p = Scalar(c) * (Scalar(key.first) - sg) * vr;
          TaggedConfig next = cfg;
          if (--next.blocks[key] == 0) next.blocks.erase(key);
          next.blocks[{key.first + 1, key.second}] += 1;
          rec(next, prob * p, steps + 1);
        }
      };
  rec(start, ctx.lift(1), 0);
  return out;
}

OraclePmfs oracle_pmfs(const EvalCtx& ctx, const GibbsModel& model,
                       const PartitionData& data, long m, long l) {
  auto law = enumerate_continuations(ctx, model, data, m);
  OraclePmfs out;
  for (const auto& [cfg, p] : law) {
    long o = 0, nn = 0;
    for (auto& [key, c] : cfg.blocks) {
      if (key.first != l) continue;
      if (key.second) nn += c;
      else o += c;
    }
    out.o.probs[o] += p;
    out.n_new.probs[nn] += p;
    out.m.probs[o + nn] += p;
  }
  for (Pmf* pm : {&out.o, &out.n_new, &out.m}) {
    Scalar tot(0);
    for (auto& [x, p] : pm->probs) tot += p;
    pm->defect = abs(Scalar(1) - tot);
  }
  return out;
}

FrequencyCounts subsample_species(const FrequencyCounts& counts, long k,
                                  std::uint64_t seed) {
  counts.validate();
  long n = counts.n();
  if (k < 1 || k > n) throw DomainError("subsample_species: need 1 <= k <= n");
  std::vector<long> owner;
  owner.reserve(n);
  long species = 0;
  for (auto [l, c] : counts.m)
    for (long i = 0; i < c; ++i, ++species)
      for (long t = 0; t < l; ++t) owner.push_back(species);
  std::mt19937_64 rng(seed);
  std::shuffle(owner.begin(), owner.end(), rng);
  std::vector<long> hits(species, 0);
  for (long i = 0; i < k; ++i) hits[owner[i]] += 1;
  FrequencyCounts out;
  for (long h : hits)
    if (h > 0) out.m[h] += 1;
  return out;
}

McResult mc_statistic(const std::string& name, long replicates,
                      const std::function<double(std::uint64_t)>& replicate) {
  McResult out;
  out.statistic = name;
  out.replicates = replicates;
  double sum = 0.0, sumsq = 0.0;
  for (long r = 0; r < replicates; ++r) {
    double v = replicate(static_cast<std::uint64_t>(r));
    sum += v;
    sumsq += v * v;
    out.empirical_pmf[std::lround(v)] += 1.0;
  }
  out.mean = sum / replicates;
  double var = (sumsq - sum * sum / replicates) / std::max(1L, replicates - 1);
  out.se = std::sqrt(std::max(0.0, var) / replicates);
  for (auto& [k, v] : out.empirical_pmf) v /= replicates;
  return out;
}

}  // namespace gibbs
