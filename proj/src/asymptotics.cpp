#include "gibbs/asymptotics.hpp"

#include "gibbs/combinatorics.hpp"

#include <cmath>

namespace gibbs {

double c_n(double sigma, double n) {
  if (sigma < 0) return 1.0;
  if (sigma == 0) return std::log(n);
  return std::pow(n, sigma);
}

Scalar z_moment(const EvalCtx& ctx, long n, long j, const Rat& sigma, const Rat& theta,
                long r) {
  if (sigma <= 0 || sigma >= 1) throw DomainError("z_moment: sigma must be in (0,1)");
  if (theta <= -sigma) throw DomainError("z_moment: theta must be > -sigma");
  if (j < 0 || j > n || r < 0) throw DomainError("z_moment: bad (n,j,r)");
  if (r == 0) return Scalar(1);
  Scalar sg = ctx.lift(sigma).to_log();
  Scalar th = ctx.lift(theta).to_log();
  Real a = (th + Scalar(n)).value();
  Real b = (th + Scalar(n) + Scalar(r) * sg).value();
  Scalar gamma_ratio = Scalar::log_value(1, lgamma(a) - lgamma(b));
  return gamma_ratio * rising(ctx.lift(Rat(j) + theta / sigma).to_log(), r);
}

double tv_distance(const Pmf& a, const std::function<double(long)>& b, long bound) {
  double s = 0.0;
  for (long x = 0; x <= bound; ++x)
    s += std::abs(a.at(x).to_double() - b(x));
  return 0.5 * s;
}

double dp_poisson_limit(const Rat& theta, long n, long l, bool conditional,
                        long extra_n, const PartitionData* data) {
  GibbsModel model{Dirichlet{theta}};
  EvalCtx ctx;
  ctx.exact = false;
  double lam;
  Pmf pmf;
  long bound;
  if (!conditional) {
    lam = theta.get_d() / l;
    pmf = m_prior_pmf(ctx, model, n, l);
    bound = n / l;
  } else {
    PartitionData d;
    if (data) {
      d = *data;
    } else {
      FrequencyCounts c;
      c.m[1] = n;
      d = PartitionData::from_counts(c);
    }
    lam = (theta.get_d() + d.n) / l;
    ConditionalQuery q{model, d, extra_n, l};
    pmf = n_pmf(ctx, q);
    bound = extra_n / l;
  }
  auto pois = [&](long x) {
    return std::exp(-lam + x * std::log(lam) - std::lgamma(x + 1.0));
  };
  // include the Poisson tail beyond the exact support in the distance
  double tail = 0.0;
  for (long x = 0; x <= bound; ++x) tail += pois(x);
  return tv_distance(pmf, pois, bound) + 0.5 * (1.0 - tail);
}

Scalar raw_from_falling(const EvalCtx& ctx,
                        const std::function<Scalar(long)>& falling_moment, long r) {
  Scalar s(0);
  for (long k = 0; k <= r; ++k) s += stirling2(r, k) * falling_moment(k);
  return s;
}

}  // namespace gibbs
