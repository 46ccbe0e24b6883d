#ifndef GIBBS_PRIOR_HPP
#define GIBBS_PRIOR_HPP

#include "gibbs/model.hpp"

#include <functional>

namespace gibbs {

// falling-factorial moment sequence r -> E[(X)_[r]], r = 0..support_bound
struct MomentSequence {
  std::vector<Scalar> values;  // values[0] == 1
  long support_bound = 0;

  const Scalar& at(long r) const { return values.at(r); }
};

struct Pmf {
  std::map<long, Scalar> probs;
  Scalar defect = Scalar(0);     // |1 - total mass|
  bool clamped = false;          // negative entries within tolerance zeroed
  bool precision_warning = false;

  Scalar at(long x) const {
    auto it = probs.find(x);
    return it == probs.end() ? Scalar(0) : it->second;
  }
  Scalar mean() const;
};

// P[X=x] = sum_{k>=x} (-1)^{k-x} E[(X)_[k]] / (x! (k-x)!)
// moment(r) must be valid for r = 0..support_bound
Pmf pmf_from_falling_moments(const EvalCtx& ctx,
                             const std::function<Scalar(long)>& moment,
                             long support_bound);

// E[(M_{l,n})_[r]]; model-specific closed forms with a generic fallback
Scalar m_prior_factorial_moment(const EvalCtx& ctx, const GibbsModel& model,
                                long n, long l, long r);

// generic route (the sieve over j with the model's coefficient family)
Scalar m_prior_factorial_moment_generic(const EvalCtx& ctx, const GibbsModel& model,
                                        long n, long l, long r);

Pmf m_prior_pmf(const EvalCtx& ctx, const GibbsModel& model, long n, long l);
Pmf m_prior_pmf_generic(const EvalCtx& ctx, const GibbsModel& model, long n, long l);

}  // namespace gibbs

#endif
