#include "gibbs/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace gibbs {

double log_eppf(double sigma, double theta, const PartitionData& data) {
  if (!(sigma > 0 && sigma < 1)) throw DomainError("log_eppf: sigma must be in (0,1)");
  if (!(theta > -sigma)) throw DomainError("log_eppf: theta must be > -sigma");
  data.validate();
  double s = 0.0;
  for (long i = 1; i < data.j; ++i) s += std::log(theta + i * sigma);
  s -= std::lgamma(theta + data.n) - std::lgamma(theta + 1);
  double lg1 = std::lgamma(1.0 - sigma);
  for (auto [t, mt] : data.counts.m)
    if (t > 1 && mt > 0) s += mt * (std::lgamma(t - sigma) - lg1);
  return s;
}

double log_eppf_dp(double theta, const PartitionData& data) {
  if (!(theta > 0)) throw DomainError("log_eppf_dp: theta must be > 0");
  data.validate();
  double s = (data.j - 1) * std::log(theta);
  s -= std::lgamma(theta + data.n) - std::lgamma(theta + 1);
  for (auto [t, mt] : data.counts.m)
    if (t > 1 && mt > 0) s += mt * std::lgamma(static_cast<double>(t));
  return s;
}

namespace {

// derivative-free simplex descent, deterministic
template <typename F>
std::pair<std::array<double, 2>, double> nelder_mead(F f, std::array<double, 2> x0,
                                                     double step, long max_iter,
                                                     long* evals) {
  using P = std::array<double, 2>;
  struct V {
    P x;
    double fv;
  };
  auto eval = [&](const P& p) {
    ++*evals;
    return f(p);
  };
  std::array<V, 3> s;
  s[0] = {x0, eval(x0)};
  for (int i = 0; i < 2; ++i) {
    P p = x0;
    p[i] += step;
    s[i + 1] = {p, eval(p)};
  }
  for (long it = 0; it < max_iter; ++it) {
    std::sort(s.begin(), s.end(), [](const V& a, const V& b) { return a.fv < b.fv; });
    if (std::abs(s[2].fv - s[0].fv) < 1e-12) break;
    P c{(s[0].x[0] + s[1].x[0]) / 2, (s[0].x[1] + s[1].x[1]) / 2};
    auto at = [&](double t) {
      return P{c[0] + t * (c[0] - s[2].x[0]), c[1] + t * (c[1] - s[2].x[1])};
    };
    P xr = at(1.0);
    double fr = eval(xr);
    if (fr < s[0].fv) {
      P xe = at(2.0);
      double fe = eval(xe);
      if (fe < fr) s[2] = {xe, fe};
      else s[2] = {xr, fr};
    } else if (fr < s[1].fv) {
      s[2] = {xr, fr};
    } else {
      P xc = at(-0.5);
      double fc = eval(xc);
      if (fc < s[2].fv) {
        s[2] = {xc, fc};
      } else {
        for (int i = 1; i < 3; ++i) {
          for (int d = 0; d < 2; ++d)
            s[i].x[d] = s[0].x[d] + 0.5 * (s[i].x[d] - s[0].x[d]);
          s[i].fv = eval(s[i].x);
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), [](const V& a, const V& b) { return a.fv < b.fv; });
  return {s[0].x, s[0].fv};
}

}  // namespace

FitResult fit_pd(const PartitionData& data, const FitGrid& grid) {
  data.validate();
  if (data.j <= 1 || data.j >= data.n)
    throw DegenerateData("fit_pd: optimum lies on the parameter boundary");
  double theta_max = grid.theta_max > 0 ? grid.theta_max : 10.0 * data.n;
  FitResult out;
  double best = -HUGE_VAL;
  for (long i = 1; i <= grid.sigma_points; ++i) {
    double sg = static_cast<double>(i) / (grid.sigma_points + 1);
    for (long k = 0; k < grid.theta_points; ++k) {
      double th = grid.theta_min *
                  std::pow(theta_max / grid.theta_min,
                           static_cast<double>(k) / (grid.theta_points - 1));
      double v = log_eppf(sg, th, data);
      ++out.evaluations;
      if (v > best + 1e-10) {
        best = v;
        out.grid_sigma = sg;
        out.grid_theta = th;
      }
    }
  }
  // refine on (logit sigma, log(theta + sigma)) to stay feasible
  auto obj = [&](const std::array<double, 2>& p) {
    double sg = 1.0 / (1.0 + std::exp(-p[0]));
    double th = std::exp(p[1]) - sg;
    if (!(sg > 0 && sg < 1) || !(th > -sg)) return HUGE_VAL;
    return -log_eppf(sg, th, data);
  };
  std::array<double, 2> x0{std::log(out.grid_sigma / (1 - out.grid_sigma)),
                           std::log(out.grid_theta + out.grid_sigma)};
  auto [xb, fb] = nelder_mead(obj, x0, 0.1, 500, &out.evaluations);
  out.sigma = 1.0 / (1.0 + std::exp(-xb[0]));
  out.theta = std::exp(xb[1]) - out.sigma;
  out.log_eppf = -fb;
  out.converged = out.log_eppf >= best - 1e-9;
  return out;
}

FitResult fit_dp(const PartitionData& data, const FitGrid& grid) {
  data.validate();
  if (data.j <= 1 || data.j >= data.n)
    throw DegenerateData("fit_dp: optimum lies on the parameter boundary");
  double theta_max = grid.theta_max > 0 ? grid.theta_max : 10.0 * data.n;
  FitResult out;
  double best = -HUGE_VAL, best_log_th = 0;
  long pts = grid.theta_points * 4;
  for (long k = 0; k < pts; ++k) {
    double lth = std::log(grid.theta_min) +
                 (std::log(theta_max) - std::log(grid.theta_min)) * k / (pts - 1);
    double v = log_eppf_dp(std::exp(lth), data);
    ++out.evaluations;
    if (v > best + 1e-12) {
      best = v;
      best_log_th = lth;
    }
  }
  // golden-section refinement on log theta
  double a = best_log_th - 0.2, b = best_log_th + 0.2;
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = log_eppf_dp(std::exp(c), data), fd = log_eppf_dp(std::exp(d), data);
  for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = log_eppf_dp(std::exp(c), data);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = log_eppf_dp(std::exp(d), data);
    }
    out.evaluations += 1;
  }
  out.sigma = 0;
  out.theta = std::exp((a + b) / 2);
  out.log_eppf = log_eppf_dp(out.theta, data);
  out.grid_theta = std::exp(best_log_th);
  out.converged = out.log_eppf >= best - 1e-9;
  return out;
}

}  // namespace gibbs
