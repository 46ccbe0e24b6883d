#include "gibbs/posterior.hpp"

#include "gibbs/combinatorics.hpp"

#include <algorithm>

namespace gibbs {

namespace {

// unordered selection of distinct observed blocks grouped by frequency value:
// parts (t, a_t) with t <= l, a_t <= m_t, sum a_t = r; weight prod C(m_t, a_t)
struct Selection {
  Rat weight;
  std::vector<std::pair<long, long>> parts;
  long nc = 0;  // sum t * a_t
};

std::vector<Selection> grouped_selections(const FrequencyCounts& counts, long l, long r) {
  std::vector<long> vals;
  for (auto [t, c] : counts.m)
    if (t <= l && c > 0) vals.push_back(t);
  std::vector<Selection> out;
  std::vector<std::pair<long, long>> chosen;
  std::function<void(size_t, long)> rec2 = [&](size_t i, long rem) {
    if (i == vals.size()) {
      if (rem == 0) {
        Selection s;
        s.weight = 1;
        s.nc = 0;
        for (auto [t, a] : chosen) {
          s.weight *= binomial(counts.at(t), a);
          s.nc += t * a;
          s.parts.emplace_back(t, a);
        }
        out.push_back(std::move(s));
      }
      return;
    }
    long t = vals[i];
    long cap = std::min(rem, counts.at(t));
    for (long a = 0; a <= cap; ++a) {
      if (a > 0) chosen.emplace_back(t, a);
      rec2(i + 1, rem - a);
      if (a > 0) chosen.pop_back();
    }
  };
  rec2(0, r);
  return out;
}

Scalar v_ratio(const EvalCtx& ctx, const GibbsModel& model, const Scalar& vnj,
               long n2, long j2) {
  return v_weight(ctx, model, n2, j2) / vnj;
}

void check_query(const ConditionalQuery& q) {
  q.data.validate();
  if (q.m < 0) throw DomainError("conditional query: m must be >= 0");
  if (q.l < 1) throw DomainError("conditional query: l must be >= 1");
}

Scalar require_vnj(const EvalCtx& ctx, const ConditionalQuery& q) {
  Scalar vnj = v_weight(ctx, q.model, q.data.n, q.data.j);
  if (vnj.sgn() == 0)
    throw DomainError("conditional query: observed data has probability zero");
  return vnj;
}

bool closed_family(const GibbsModel& model) {
  return model.is_dirichlet() || model.is_pitman_yor();
}

// collapsed closed O-moment for the sigma >= 0 family (Dirichlet at sigma=0)
Scalar o_moment_closed_pd(const EvalCtx& ctx, const ConditionalQuery& q, long r) {
  Rat sg_r = q.model.sigma();
  Rat th_r = q.model.is_dirichlet() ? q.model.dp().theta : q.model.py().theta;
  Scalar sg = ctx.lift(sg_r), th = ctx.lift(th_r);
  long n = q.data.n, m = q.m, l = q.l;
  Scalar den = rising(th + Scalar(n), m);
  Scalar tot(0);
  for (const auto& sel : grouped_selections(q.data.counts, l, r)) {
    long A = m - r * l + sel.nc;
    if (A < 0) continue;
    std::vector<long> parts;
    Scalar prod = ctx.lift(1);
    for (auto [t, a] : sel.parts)
      for (long i = 0; i < a; ++i) {
        parts.push_back(l - t);
        prod *= rising(Scalar(t) - sg, l - t);
      }
    Rat mult = multinomial(m, parts);
    if (mult == 0) continue;
    tot += ctx.lift(sel.weight * factorial_rat(r) * mult) * prod *
           rising(th + Scalar(n - sel.nc) + Scalar(r) * sg, A) / den;
  }
  return tot;
}

Scalar n_moment_closed_pd(const EvalCtx& ctx, const ConditionalQuery& q, long r) {
  long n = q.data.n, j = q.data.j, m = q.m, l = q.l;
  if (r * l > m) return Scalar(0);
  Rat sg_r = q.model.sigma();
  Rat th_r = q.model.is_dirichlet() ? q.model.dp().theta : q.model.py().theta;
  Scalar sg = ctx.lift(sg_r), th = ctx.lift(th_r);
  Scalar J = ctx.lift(multinomial(m, std::vector<long>(r, l))) *
             rising(ctx.lift(1) - sg, l - 1).pow_int(r);
  Scalar pref = ctx.lift(1);
  for (long i = 0; i < r; ++i) pref *= th + Scalar(j + i) * sg;
  return J * pref * rising(th + Scalar(n) + Scalar(r) * sg, m - r * l) /
         rising(th + Scalar(n), m);
}

Scalar m_moment_closed_pd(const EvalCtx& ctx, const ConditionalQuery& q, long r) {
  Rat sg_r = q.model.sigma();
  Rat th_r = q.model.is_dirichlet() ? q.model.dp().theta : q.model.py().theta;
  Scalar sg = ctx.lift(sg_r), th = ctx.lift(th_r);
  long n = q.data.n, j = q.data.j, m = q.m, l = q.l;
  Scalar den = rising(th + Scalar(n), m);
  Scalar one_minus = rising(ctx.lift(1) - sg, l - 1);
  Scalar tot(0);
  for (long t = 0; t <= r; ++t) {
    for (const auto& sel : grouped_selections(q.data.counts, l, t)) {
      long A = m - r * l + sel.nc;
      if (A < 0) continue;
      std::vector<long> parts(r - t, l);
      Scalar prod = ctx.lift(1);
      for (auto [tt, a] : sel.parts)
        for (long i = 0; i < a; ++i) {
          parts.push_back(l - tt);
          prod *= rising(Scalar(tt) - sg, l - tt);
        }
      Rat mult = multinomial(m, parts);
      if (mult == 0) continue;
      Scalar pref = ctx.lift(1);
      for (long i = 0; i < r - t; ++i) pref *= th + Scalar(j + i) * sg;
      tot += ctx.lift(binomial(r, t) * sel.weight * factorial_rat(t) * mult) *
             one_minus.pow_int(r - t) * prod * pref *
             rising(th + Scalar(n - sel.nc) + Scalar(r) * sg, A) / den;
    }
  }
  return tot;
}

// Gnedin zeta = 0: V(n+m,j+k)/V(n,j) in closed form
Scalar gn0_vratio(const EvalCtx& ctx, const Rat& gamma, long n, long j, long m, long k) {
  Scalar g = ctx.lift(gamma);
  return rising(g + Scalar(n - j), m - k) * rising(ctx.lift(j), k) *
         rising(Scalar(j) - g, k) /
         (rising(ctx.lift(n), m) * rising(g + Scalar(n), m));
}

Scalar gn0_o_hat(const EvalCtx& ctx, const ConditionalQuery& q) {
  const Rat& gamma = q.model.gn().gamma;
  long n = q.data.n, j = q.data.j, m = q.m, l = q.l;
  Scalar tot(0);
  for (long t = 1; t <= l; ++t) {
    long mt = q.data.counts.at(t);
    if (mt == 0 || m - (l - t) < 0) continue;
    long N = m - (l - t);
    Scalar X = ctx.lift(m + n + j - l - 2);
    Scalar inner(0);
    for (long k = 0; k <= N; ++k) {
      inner += gn0_vratio(ctx, gamma, n, j, m, k) *
               falling(X, N - k) / ctx.lift(factorial_rat(N - k)) *
               ctx.lift(factorial_rat(N) / factorial_rat(k));
    }
    tot += ctx.lift(binomial(m, l - t) * mt) * rising(ctx.lift(t + 1), l - t) * inner;
  }
  return tot;
}

Scalar gn0_n_hat(const EvalCtx& ctx, const ConditionalQuery& q) {
  const Rat& gamma = q.model.gn().gamma;
  long n = q.data.n, j = q.data.j, m = q.m, l = q.l;
  if (l > m) return Scalar(0);
  long N = m - l;
  Scalar X = ctx.lift(m - l + n + j - 1);
  Scalar inner(0);
  for (long k = 0; k <= N; ++k) {
    inner += gn0_vratio(ctx, gamma, n, j, m, k + 1) *
             falling(X, N - k) / ctx.lift(factorial_rat(N - k)) *
             ctx.lift(factorial_rat(N) / factorial_rat(k));
  }
  return ctx.lift(binomial(m, l) * factorial_rat(l)) * inner;
}

}  // namespace

Scalar o_factorial_moment_engine(const EvalCtx& ctx, const ConditionalQuery& q, long r) {
  check_query(q);
  if (r == 0) return ctx.lift(1);
  if (r < 0) throw DomainError("moment order must be >= 0");
  long n = q.data.n, j = q.data.j, m = q.m, l = q.l;
  Rat sg_r = q.model.sigma();
  Scalar sg = ctx.lift(sg_r);
  Scalar vnj = require_vnj(ctx, q);
  Scalar tot(0);
  for (const auto& sel : grouped_selections(q.data.counts, l, r)) {
    long A = m - r * l + sel.nc;
    if (A < 0) continue;
    std::vector<long> parts;
    Scalar prod = ctx.lift(1);
    for (auto [t, a] : sel.parts)
      for (long i = 0; i < a; ++i) {
        parts.push_back(l - t);
        prod *= rising(Scalar(t) - sg, l - t);
      }
    Rat mult = multinomial(m, parts);
    if (mult == 0) continue;
    Scalar gamma = ctx.lift(Rat(sel.nc - n) + Rat(j - r) * sg_r);
    Scalar inner(0);
    for (long k = 0; k <= A; ++k)
      inner += v_ratio(ctx, q.model, vnj, n + m, j + k) *
               coeff_ratio(ctx, sg_r, A, k, gamma);
    tot += ctx.lift(sel.weight * factorial_rat(r) * mult) * prod * inner;
  }
  return tot;
}

Scalar n_factorial_moment_engine(const EvalCtx& ctx, const ConditionalQuery& q, long r) {
  check_query(q);
  if (r == 0) return ctx.lift(1);
  if (r < 0) throw DomainError("moment order must be >= 0");
  long n = q.data.n, j = q.data.j, m = q.m, l = q.l;
  if (r * l > m) return Scalar(0);
  Rat sg_r = q.model.sigma();
  Scalar sg = ctx.lift(sg_r);
  Scalar vnj = require_vnj(ctx, q);
  Scalar J = ctx.lift(multinomial(m, std::vector<long>(r, l))) *
             rising(ctx.lift(1) - sg, l - 1).pow_int(r);
  Scalar gamma = ctx.lift(Rat(-n) + Rat(j) * sg_r);
  Scalar inner(0);
  for (long k = 0; k <= m - r * l; ++k)
    inner += v_ratio(ctx, q.model, vnj, n + m, j + k + r) *
             coeff_ratio(ctx, sg_r, m - r * l, k, gamma);
  return J * inner;
}

Scalar m_factorial_moment_engine(const EvalCtx& ctx, const ConditionalQuery& q, long r) {
  check_query(q);
  if (r == 0) return ctx.lift(1);
  if (r < 0) throw DomainError("moment order must be >= 0");
  long n = q.data.n, j = q.data.j, m = q.m, l = q.l;
  Rat sg_r = q.model.sigma();
  Scalar sg = ctx.lift(sg_r);
  Scalar vnj = require_vnj(ctx, q);
  Scalar one_minus = rising(ctx.lift(1) - sg, l - 1);
  Scalar tot(0);
  for (long t = 0; t <= r; ++t) {
    for (const auto& sel : grouped_selections(q.data.counts, l, t)) {
      long A = m - r * l + sel.nc;
      if (A < 0) continue;
      std::vector<long> parts(r - t, l);
      Scalar prod = ctx.lift(1);
      for (auto [tt, a] : sel.parts)
        for (long i = 0; i < a; ++i) {
          parts.push_back(l - tt);
          prod *= rising(Scalar(tt) - sg, l - tt);
        }
      Rat mult = multinomial(m, parts);
      if (mult == 0) continue;
      Scalar gamma = ctx.lift(Rat(sel.nc - n) + Rat(j - t) * sg_r);
      Scalar inner(0);
      for (long k = 0; k <= A; ++k)
        inner += v_ratio(ctx, q.model, vnj, n + m, j + k + r - t) *
                 coeff_ratio(ctx, sg_r, A, k, gamma);
      tot += ctx.lift(binomial(r, t) * sel.weight * factorial_rat(t) * mult) *
             one_minus.pow_int(r - t) * prod * inner;
    }
  }
  return tot;
}

Scalar o_factorial_moment(const EvalCtx& ctx, const ConditionalQuery& q, long r) {
  check_query(q);
  if (r == 0) return ctx.lift(1);
  if (closed_family(q.model)) return o_moment_closed_pd(ctx, q, r);
  return o_factorial_moment_engine(ctx, q, r);
}

Scalar n_factorial_moment(const EvalCtx& ctx, const ConditionalQuery& q, long r) {
  check_query(q);
  if (r == 0) return ctx.lift(1);
  if (closed_family(q.model)) return n_moment_closed_pd(ctx, q, r);
  return n_factorial_moment_engine(ctx, q, r);
}

Scalar m_factorial_moment(const EvalCtx& ctx, const ConditionalQuery& q, long r) {
  check_query(q);
  if (r == 0) return ctx.lift(1);
  if (closed_family(q.model)) return m_moment_closed_pd(ctx, q, r);
  return m_factorial_moment_engine(ctx, q, r);
}

Pmf o_pmf(const EvalCtx& ctx, const ConditionalQuery& q) {
  check_query(q);
  long bound = std::min(q.data.j, (q.data.n + q.m) / q.l);
  return pmf_from_falling_moments(
      ctx, [&](long r) { return o_factorial_moment(ctx, q, r); }, bound);
}

Pmf n_pmf(const EvalCtx& ctx, const ConditionalQuery& q) {
  check_query(q);
  long bound = q.m / q.l;
  return pmf_from_falling_moments(
      ctx, [&](long r) { return n_factorial_moment(ctx, q, r); }, bound);
}

Pmf m_pmf(const EvalCtx& ctx, const ConditionalQuery& q) {
  check_query(q);
  long bound = (q.data.n + q.m) / q.l;
  return pmf_from_falling_moments(
      ctx, [&](long r) { return m_factorial_moment(ctx, q, r); }, bound);
}

Scalar o_hat_closed(const EvalCtx& ctx, const ConditionalQuery& q) {
  check_query(q);
  long n = q.data.n, m = q.m, l = q.l;
  if (q.model.is_dirichlet() || q.model.is_pitman_yor()) {
    Rat sg_r = q.model.sigma();
    Rat th_r = q.model.is_dirichlet() ? q.model.dp().theta : q.model.py().theta;
    Scalar sg = ctx.lift(sg_r), th = ctx.lift(th_r);
    Scalar den = rising(th + Scalar(n), m);
    Scalar tot(0);
    for (long t = 1; t <= l; ++t) {
      long mt = q.data.counts.at(t);
      if (mt == 0 || l - t > m) continue;
      tot += ctx.lift(binomial(m, l - t) * mt) * rising(Scalar(t) - sg, l - t) *
             rising(th + Scalar(n - t) + sg, m - (l - t)) / den;
    }
    return tot;
  }
  if (q.model.gn().zeta == 0) return gn0_o_hat(ctx, q);
  return o_factorial_moment_engine(ctx, q, 1);
}

Scalar n_hat_closed(const EvalCtx& ctx, const ConditionalQuery& q) {
  check_query(q);
  long n = q.data.n, j = q.data.j, m = q.m, l = q.l;
  if (l > m) return Scalar(0);
  if (q.model.is_dirichlet()) {
    Scalar th = ctx.lift(q.model.dp().theta);
    return ctx.lift(factorial_rat(l - 1) * binomial(m, l)) * th /
           rising(th + Scalar(n + m - l), l);
  }
  if (q.model.is_pitman_yor()) {
    Scalar sg = ctx.lift(q.model.py().sigma), th = ctx.lift(q.model.py().theta);
    return ctx.lift(binomial(m, l)) * rising(ctx.lift(1) - sg, l - 1) *
           (th + Scalar(j) * sg) * rising(th + Scalar(n) + sg, m - l) /
           rising(th + Scalar(n), m);
  }
  if (q.model.gn().zeta == 0) return gn0_n_hat(ctx, q);
  return n_factorial_moment_engine(ctx, q, 1);
}

Scalar o_hat(const EvalCtx& ctx, const ConditionalQuery& q) { return o_hat_closed(ctx, q); }
Scalar n_hat(const EvalCtx& ctx, const ConditionalQuery& q) { return n_hat_closed(ctx, q); }

Scalar m_hat(const EvalCtx& ctx, const ConditionalQuery& q) {
  return o_hat(ctx, q) + n_hat(ctx, q);
}

Scalar k_hat(const EvalCtx& ctx, const GibbsModel& model, const PartitionData& data,
             long m) {
  if (m < 1) throw DomainError("k_hat: m must be >= 1");
  Scalar s(0);
  for (long l = 1; l <= m; ++l) {
    ConditionalQuery q{model, data, m, l};
    s += n_hat(ctx, q);
  }
  return s;
}

Scalar k_hat_pd_closed(const EvalCtx& ctx, const GibbsModel& model,
                       const PartitionData& data, long m) {
  if (!model.is_pitman_yor()) throw DomainError("k_hat_pd_closed: Pitman-Yor only");
  Scalar sg = ctx.lift(model.py().sigma), th = ctx.lift(model.py().theta);
  Scalar n = ctx.lift(data.n);
  return (th / sg + ctx.lift(data.j)) *
         (rising(th + n + sg, m) / rising(th + n, m) - ctx.lift(1));
}

RareVariety rare_variety(const EvalCtx& ctx, const GibbsModel& model,
                         const PartitionData& data, long m, long tau) {
  if (tau < 1) throw DomainError("rare_variety: tau must be >= 1");
  RareVariety out{Scalar(0), Scalar(0), Scalar(0)};
  for (long l = 1; l <= tau; ++l) {
    ConditionalQuery q{model, data, m, l};
    if (l <= data.n + m) out.o += o_hat(ctx, q);
    if (l <= m) out.n += n_hat(ctx, q);
  }
  out.m = out.o + out.n;
  return out;
}

}  // namespace gibbs
