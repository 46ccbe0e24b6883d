#ifndef GIBBS_FIT_HPP
#define GIBBS_FIT_HPP

#include "gibbs/model.hpp"

namespace gibbs {

struct DegenerateData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FitGrid {
  long sigma_points = 99;                 // evenly spaced in (0,1)
  long theta_points = 60;                 // log-spaced in (theta_min, theta_max]
  double theta_min = 1e-2;
  double theta_max = 0;                   // 0 -> default 10*n
};

struct FitResult {
  double sigma = 0, theta = 0;
  double log_eppf = 0;
  long evaluations = 0;
  bool converged = false;
  double grid_sigma = 0, grid_theta = 0;  // best grid point before refinement
};

// log of prod_{i=1}^{j-1}(theta + i*sigma) / (theta+1)_{n-1} * prod (1-sigma)_{n_i-1}
double log_eppf(double sigma, double theta, const PartitionData& data);
double log_eppf_dp(double theta, const PartitionData& data);  // sigma = 0

FitResult fit_pd(const PartitionData& data, const FitGrid& grid = {});
FitResult fit_dp(const PartitionData& data, const FitGrid& grid = {});

}  // namespace gibbs

#endif
