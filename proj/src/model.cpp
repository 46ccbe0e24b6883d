#include "gibbs/model.hpp"

#include "gibbs/combinatorics.hpp"

#include <algorithm>

namespace gibbs {

Rat GibbsModel::sigma() const {
  if (is_dirichlet()) return Rat(0);
  if (is_pitman_yor()) return py().sigma;
  return Rat(-1);
}

void GibbsModel::validate() const {
  if (is_dirichlet()) {
    if (dp().theta <= 0) throw DomainError("dirichlet: theta must be > 0");
    return;
  }
  if (is_pitman_yor()) {
    const auto& p = py();
    if (p.sigma <= 0 || p.sigma >= 1)
      throw DomainError("pitman-yor: sigma must be in (0,1)");
    if (p.theta <= -p.sigma) throw DomainError("pitman-yor: theta must be > -sigma");
    return;
  }
  const auto& g = gn();
  if (g.gamma < 0) throw DomainError("gnedin: gamma must be >= 0");
  // min over integer i >= 1 of i^2 - gamma*i + zeta sits next to gamma/2
  auto q = [&](long i) -> Rat { return Rat(i) * i - g.gamma * i + g.zeta; };
  long c = std::max(1L, static_cast<long>(g.gamma.get_d() / 2));
  for (long i : {1L, c, c + 1}) {
    if (i >= 1 && q(i) <= 0)
      throw DomainError("gnedin: i^2 - gamma*i + zeta must be > 0 for all i >= 1");
  }
}

long FrequencyCounts::n() const {
  long s = 0;
  for (auto [l, c] : m) s += l * c;
  return s;
}

long FrequencyCounts::j() const {
  long s = 0;
  for (auto [l, c] : m) s += c;
  return s;
}

long FrequencyCounts::at(long l) const {
  auto it = m.find(l);
  return it == m.end() ? 0 : it->second;
}

void FrequencyCounts::validate() const {
  for (auto [l, c] : m) {
    if (l < 1) throw InvalidPartition("block size must be >= 1");
    if (c < 0) throw InvalidPartition("count must be >= 0");
  }
}

PartitionData PartitionData::from_counts(FrequencyCounts c) {
  c.validate();
  PartitionData d;
  d.counts = std::move(c);
  d.n = d.counts.n();
  d.j = d.counts.j();
  d.validate();
  return d;
}

void PartitionData::validate() const {
  counts.validate();
  if (counts.n() != n || counts.j() != j)
    throw InvalidPartition("inconsistent (n, j, counts)");
  if (n < 1 || j < 1 || j > n) throw InvalidPartition("need 1 <= j <= n");
}

Scalar v_weight(const EvalCtx& ctx, const GibbsModel& model, long n, long j) {
  if (n < 1 || j < 1 || j > n)
    throw IndexOutOfRange("v_weight: need 1 <= j <= n");
  if (model.is_dirichlet()) {
    Scalar th = ctx.lift(model.dp().theta);
    return th.pow_int(j) / rising(th, n);
  }
  if (model.is_pitman_yor()) {
    Scalar th = ctx.lift(model.py().theta);
    Scalar sg = ctx.lift(model.py().sigma);
    Scalar num = ctx.lift(1);
    for (long i = 0; i < j; ++i) num *= th + Scalar(i) * sg;
    return num / rising(th, n);
  }
  const auto& g = model.gn();
  Scalar gam = ctx.lift(g.gamma), zet = ctx.lift(g.zeta);
  Scalar num = rising(gam, n - j);
  for (long i = 1; i < j; ++i) num *= Scalar(i * i) - gam * Scalar(i) + zet;
  Scalar den = ctx.lift(1);
  for (long i = 1; i < n; ++i) den *= Scalar(i * i) + gam * Scalar(i) + zet;
  return num / den;
}

Scalar eppf(const EvalCtx& ctx, const GibbsModel& model,
            const std::vector<long>& block_sizes) {
  if (block_sizes.empty()) throw InvalidPartition("eppf: empty partition");
  long n = 0;
  for (long s : block_sizes) {
    if (s < 1) throw InvalidPartition("eppf: block sizes must be >= 1");
    n += s;
  }
  long j = static_cast<long>(block_sizes.size());
  Scalar sg = ctx.lift(model.sigma());
  Scalar p = v_weight(ctx, model, n, j);
  for (long s : block_sizes) p *= rising(ctx.lift(1) - sg, s - 1);
  return p;
}

Scalar sampling_formula(const EvalCtx& ctx, const GibbsModel& model,
                        const FrequencyCounts& counts) {
  counts.validate();
  long n = counts.n(), j = counts.j();
  if (n < 1) throw InvalidPartition("sampling_formula: empty configuration");
  Scalar sg = ctx.lift(model.sigma());
  Scalar p = v_weight(ctx, model, n, j) * ctx.lift(factorial_rat(n));
  for (auto [i, mi] : counts.m) {
    if (mi == 0) continue;
    Scalar f = rising(ctx.lift(1) - sg, i - 1) / ctx.lift(factorial_rat(i));
    p *= f.pow_int(mi) / ctx.lift(factorial_rat(mi));
  }
  return p;
}

Predictive predictive_probs(const EvalCtx& ctx, const GibbsModel& model,
                            const PartitionData& data) {
  data.validate();
  long n = data.n, j = data.j;
  Scalar vnj = v_weight(ctx, model, n, j);
  Predictive out;
  out.p_new = v_weight(ctx, model, n + 1, j + 1) / vnj;
  Scalar ratio = (j <= n) ? v_weight(ctx, model, n + 1, j) / vnj : Scalar(0);
  Scalar sg = ctx.lift(model.sigma());
  for (auto [l, c] : data.counts.m) {
    if (c == 0) continue;
    out.p_join[l] = (Scalar(l) - sg) * ratio;
  }
  return out;
}

double validate_recursion(const GibbsModel& model, long n_max) {
  EvalCtx ctx;  // exact where parameters are rational
  double worst = 0.0;
  Scalar sg = ctx.lift(model.sigma());
  for (long n = 1; n <= n_max; ++n) {
    for (long j = 1; j <= n; ++j) {
      Scalar lhs = v_weight(ctx, model, n, j);
      Scalar rhs = v_weight(ctx, model, n + 1, j + 1) +
                   (Scalar(n) - sg * Scalar(j)) * v_weight(ctx, model, n + 1, j);
      if (lhs.sgn() == 0 && rhs.sgn() == 0) continue;
      Scalar defect = lhs - rhs;
      double rel = std::abs(defect.to_double()) /
                   std::max(std::abs(lhs.to_double()), std::abs(rhs.to_double()));
      worst = std::max(worst, rel);
    }
  }
  return worst;
}

namespace {

void config_rec(long n, long maxp, FrequencyCounts& cur,
                std::vector<FrequencyCounts>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (long p = std::min(n, maxp); p >= 1; --p) {
    cur.m[p] += 1;
    config_rec(n - p, p, cur, out);
    if (--cur.m[p] == 0) cur.m.erase(p);
  }
}

}  // namespace

std::vector<FrequencyCounts> all_configurations(long n) {
  std::vector<FrequencyCounts> out;
  FrequencyCounts cur;
  config_rec(n, n, cur, out);
  return out;
}

}  // namespace gibbs
