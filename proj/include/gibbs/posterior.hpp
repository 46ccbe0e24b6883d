#ifndef GIBBS_POSTERIOR_HPP
#define GIBBS_POSTERIOR_HPP

#include "gibbs/prior.hpp"

namespace gibbs {

struct ConditionalQuery {
  GibbsModel model;
  PartitionData data;
  long m = 0;  // additional sample size
  long l = 1;  // block size of interest
};

// generic engine: sums over selections of observed blocks with the
// model-appropriate coefficient family
Scalar o_factorial_moment_engine(const EvalCtx& ctx, const ConditionalQuery& q, long r);
Scalar n_factorial_moment_engine(const EvalCtx& ctx, const ConditionalQuery& q, long r);
Scalar m_factorial_moment_engine(const EvalCtx& ctx, const ConditionalQuery& q, long r);

// production path: closed forms where the model family admits them
Scalar o_factorial_moment(const EvalCtx& ctx, const ConditionalQuery& q, long r);
Scalar n_factorial_moment(const EvalCtx& ctx, const ConditionalQuery& q, long r);
Scalar m_factorial_moment(const EvalCtx& ctx, const ConditionalQuery& q, long r);

Pmf o_pmf(const EvalCtx& ctx, const ConditionalQuery& q);
Pmf n_pmf(const EvalCtx& ctx, const ConditionalQuery& q);
Pmf m_pmf(const EvalCtx& ctx, const ConditionalQuery& q);

// closed-form estimators (model-specific displays); the generic
// o_hat/n_hat/m_hat agree with these and with the engine at r = 1
Scalar o_hat(const EvalCtx& ctx, const ConditionalQuery& q);
Scalar n_hat(const EvalCtx& ctx, const ConditionalQuery& q);
Scalar m_hat(const EvalCtx& ctx, const ConditionalQuery& q);

Scalar o_hat_closed(const EvalCtx& ctx, const ConditionalQuery& q);
Scalar n_hat_closed(const EvalCtx& ctx, const ConditionalQuery& q);

// expected number of new distinct species in m further draws
Scalar k_hat(const EvalCtx& ctx, const GibbsModel& model, const PartitionData& data,
             long m);
Scalar k_hat_pd_closed(const EvalCtx& ctx, const GibbsModel& model,
                       const PartitionData& data, long m);

struct RareVariety {
  Scalar o, n, m;  // cumulated over l = 1..tau; m = o + n
};
RareVariety rare_variety(const EvalCtx& ctx, const GibbsModel& model,
                         const PartitionData& data, long m, long tau);

}  // namespace gibbs

#endif
