#include "gibbs/prior.hpp"

#include "gibbs/combinatorics.hpp"

namespace gibbs {

Scalar Pmf::mean() const {
  Scalar s(0);
  for (const auto& [x, p] : probs) s += Scalar(x) * p;
  return s;
}

Pmf pmf_from_falling_moments(const EvalCtx& ctx,
                             const std::function<Scalar(long)>& moment,
                             long support_bound) {
  Pmf out;
  std::vector<Scalar> mu(support_bound + 1);
  int mu_bits = -1;  // precision the cached moments were computed at
  auto fill_mu = [&]() {
    if (!ctx.exact && mu_bits == working_bits()) return;
    for (long r = 0; r <= support_bound; ++r) mu[r] = moment(r);
    mu_bits = working_bits();
  };
  fill_mu();
  Scalar total(0);
  for (long x = 0; x <= support_bound; ++x) {
    Scalar px;
    if (ctx.exact) {
      Scalar s(0);
      for (long k = x; k <= support_bound; ++k) {
        Scalar t = mu[k] / (Scalar(factorial_rat(x)) * Scalar(factorial_rat(k - x)));
        s += ((k - x) % 2 == 0) ? t : -t;
      }
      px = s;
    } else {
      auto gen = [&]() {
        fill_mu();  // regenerate at the current working precision
        std::vector<Scalar> terms;
        for (long k = x; k <= support_bound; ++k) {
          Scalar t = mu[k] / ctx.lift(factorial_rat(x) * factorial_rat(k - x));
          terms.push_back(((k - x) % 2 == 0) ? t : -t);
        }
        return terms;
      };
      SumResult r = signed_sum_escalating(gen, ctx.policy);
      out.precision_warning = out.precision_warning || r.precision_warning;
      px = r.value;
    }
    if (px.sgn() < 0) {
      double v = px.to_double();
      if (v < -1e-8)
        throw PrecisionExhausted("pmf inversion: negative mass " + std::to_string(v));
      px = Scalar(0);
      out.clamped = true;
    }
    out.probs[x] = px;
    total += px;
  }
  out.defect = abs(Scalar(1) - total);
  return out;
}

namespace {

// Gnedin zeta = 0, gamma > 0 unconditional moment
Scalar gnedin0_prior_moment(const EvalCtx& ctx, const Rat& gamma, long n, long l, long r) {
  Scalar g = ctx.lift(gamma);
  Scalar one = ctx.lift(1);
  if (n == r * l) {
    return ctx.lift(factorial_rat(r) * l) * rising(g, r * l - r) *
           rising(one - g, r - 1) / rising(one + g, r * l - 1);
  }
  Scalar s(0);
  for (long k = 0; k <= n - r * l - 1; ++k) {
    s += ctx.lift(binomial(n - r * l - 1, k) * factorial_rat(r + k) / factorial_rat(1 + k)) *
         rising(g + Scalar(r * l - r), n - r * l - 1 - k) *
         rising(Scalar(r + 1) - g, k);
  }
  return Scalar(n) * rising(g, r * l - r) * rising(one - g, r) /
         rising(one + g, n - 1) * s;
}

}  // namespace

Scalar m_prior_factorial_moment_generic(const EvalCtx& ctx, const GibbsModel& model,
                                        long n, long l, long r) {
  if (l < 1 || l > n || r < 1) throw IndexOutOfRange("prior moment: bad (n,l,r)");
  if (r * l > n) return Scalar(0);
  Rat sg = model.sigma();
  Scalar one = ctx.lift(1);
  Scalar pref = (rising(one - ctx.lift(sg), l - 1) / ctx.lift(factorial_rat(l))).pow_int(r) *
                falling(ctx.lift(n), l * r);
  Scalar s(0);
  long A = n - r * l;
  for (long j = r; j <= r + A && j <= n; ++j)
    s += v_weight(ctx, model, n, j) * coeff_ratio(ctx, sg, A, j - r, ctx.lift(0));
  return pref * s;
}

Scalar m_prior_factorial_moment(const EvalCtx& ctx, const GibbsModel& model,
                                long n, long l, long r) {
  if (l < 1 || l > n || r < 1) throw IndexOutOfRange("prior moment: bad (n,l,r)");
  if (r * l > n) return Scalar(0);
  if (model.is_dirichlet()) {
    Scalar th = ctx.lift(model.dp().theta);
    return falling(ctx.lift(n), r * l) * th.pow_int(r) * rising(th, n - r * l) /
           (ctx.lift(l).pow_int(r) * rising(th, n));
  }
  if (model.is_gnedin() && model.gn().zeta == 0) {
    if (model.gn().gamma == 0) {
      // degenerate: all singletons almost surely
      return (l == 1) ? falling(ctx.lift(n), r) : Scalar(0);
    }
    return gnedin0_prior_moment(ctx, model.gn().gamma, n, l, r);
  }
  return m_prior_factorial_moment_generic(ctx, model, n, l, r);
}

Pmf m_prior_pmf(const EvalCtx& ctx, const GibbsModel& model, long n, long l) {
  long bound = n / l;
  return pmf_from_falling_moments(
      ctx,
      [&](long r) {
        return r == 0 ? ctx.lift(1) : m_prior_factorial_moment(ctx, model, n, l, r);
      },
      bound);
}

Pmf m_prior_pmf_generic(const EvalCtx& ctx, const GibbsModel& model, long n, long l) {
  long bound = n / l;
  return pmf_from_falling_moments(
      ctx,
      [&](long r) {
        return r == 0 ? ctx.lift(1)
                      : m_prior_factorial_moment_generic(ctx, model, n, l, r);
      },
      bound);
}

}  // namespace gibbs
