#include "doctest.h"

#include "gibbs/fit.hpp"
#include "gibbs/freq_io.hpp"
#include "gibbs/simulate.hpp"

#include <cmath>

using namespace gibbs;

namespace {

PartitionData pd_from(std::map<long, long> m) {
  FrequencyCounts c;
  c.m = std::move(m);
  return PartitionData::from_counts(c);
}

}  // namespace

TEST_CASE("log likelihood sanity") {
  PartitionData one = pd_from({{1, 1}});
  CHECK(log_eppf(0.5, 1.0, one) == doctest::Approx(0.0));
  CHECK(log_eppf_dp(2.0, one) == doctest::Approx(0.0));
  PartitionData d = pd_from({{2, 1}, {1, 1}});
  // dirichlet(1), config {2,1}: eppf = 1/6, two arrangements irrelevant here
  CHECK(log_eppf_dp(1.0, d) == doctest::Approx(std::log(1.0 / 6.0)));
  // sigma -> 0 recovers the dirichlet likelihood
  CHECK(log_eppf(1e-9, 1.0, d) == doctest::Approx(log_eppf_dp(1.0, d)).epsilon(1e-6));
}

TEST_CASE("bundled dataset optimum") {
  const PartitionData& tomato = tomato_dataset();
  FitResult r = fit_pd(tomato);
  CHECK(r.converged);
  CHECK(r.sigma == doctest::Approx(0.612).epsilon(0.01));
  CHECK(r.theta == doctest::Approx(741.0).epsilon(0.02));
  // spot optimality against nearby parameter values
  double best = log_eppf(r.sigma, r.theta, tomato);
  for (double ds : {-0.02, 0.02})
    CHECK(best >= log_eppf(r.sigma + ds, r.theta, tomato));
  for (double dt : {-30.0, 30.0})
    CHECK(best >= log_eppf(r.sigma, r.theta + dt, tomato));
  CHECK(best >= log_eppf(0.612, 741.0, tomato) - 1e-6);
}

TEST_CASE("recovers parameters from simulated data") {
  GibbsModel py{PitmanYor{Rat(1, 2), Rat(10)}};
  SimState s = sample_partition(py, 5000, stream_seed(101, 0));
  FitResult r = fit_pd(PartitionData::from_counts(s.counts()));
  CHECK(std::abs(r.sigma - 0.5) < 0.05);
  CHECK(r.log_eppf >= log_eppf(0.5, 10.0, PartitionData::from_counts(s.counts())));
}

TEST_CASE("dirichlet-only fit") {
  GibbsModel dp{Dirichlet{Rat(5)}};
  SimState s = sample_partition(dp, 5000, stream_seed(103, 0));
  PartitionData d = PartitionData::from_counts(s.counts());
  FitResult r = fit_dp(d);
  CHECK(r.converged);
  CHECK(std::abs(r.theta - 5.0) / 5.0 < 0.5);
  for (double f : {0.8, 1.25})
    CHECK(r.log_eppf >= log_eppf_dp(r.theta * f, d));
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(fit_pd(pd_from({{1, 50}})), DegenerateData);  // all singletons
  CHECK_THROWS_AS(fit_pd(pd_from({{50, 1}})), DegenerateData);  // one block
  CHECK_THROWS_AS(fit_pd(pd_from({{1, 1}})), DegenerateData);
}
