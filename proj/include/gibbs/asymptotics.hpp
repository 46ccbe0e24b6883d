#ifndef GIBBS_ASYMPTOTICS_HPP
#define GIBBS_ASYMPTOTICS_HPP

#include "gibbs/posterior.hpp"

namespace gibbs {

struct LimitCheck {
  std::vector<std::pair<double, double>> points;  // (scale, value)
  double target = 0.0;
  bool converging = false;  // gaps to target shrink along the sequence
};

// scaling constant for the block-count growth rate: 1 for sigma < 0,
// log n at sigma = 0, n^sigma for sigma in (0,1)
double c_n(double sigma, double n);

// E[Z_{n,j}^r] = Gamma(theta+n) * (j + theta/sigma)_r / Gamma(theta + n + r*sigma)
Scalar z_moment(const EvalCtx& ctx, long n, long j, const Rat& sigma, const Rat& theta,
                long r);

// total-variation distance between two pmfs over their joint support
double tv_distance(const Pmf& a, const std::function<double(long)>& b, long bound);

// TV between the exact law of the count of size-l blocks and its Poisson limit:
// unconditional at sample size n -> Poisson(theta/l); conditional on data of
// size n with extra_n further draws -> Poisson((theta+n)/l)
double dp_poisson_limit(const Rat& theta, long n, long l, bool conditional,
                        long extra_n, const PartitionData* data = nullptr);

// falling -> raw moment conversion: E[X^r] = sum_k S(r,k) E[(X)_[k]]
Scalar raw_from_falling(const EvalCtx& ctx, const std::function<Scalar(long)>& falling_moment,
                        long r);

}  // namespace gibbs

#endif
