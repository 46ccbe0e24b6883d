#ifndef GIBBS_COMBINATORICS_HPP
#define GIBBS_COMBINATORICS_HPP

#include "gibbs/scalar.hpp"

#include <vector>

namespace gibbs {

struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// triangular coefficient table, entries (n,k) for 0 <= k <= n <= n_max
class CoeffTable {
 public:
  explicit CoeffTable(long n_max);
  long n_max() const { return n_max_; }
  const Scalar& at(long n, long k) const;
  Scalar& at(long n, long k);

 private:
  long n_max_;
  std::vector<Scalar> e_;
};

Rat binomial(long n, long k);          // 0 when k < 0 or k > n
Rat factorial_rat(long n);
Rat multinomial(long m, const std::vector<long>& parts);  // m!/(rest! prod parts!)

// exact global tables, grown on demand
Scalar stirling1_unsigned(long n, long k);
Scalar stirling2(long n, long k);

// central generalized factorial coefficient table via the recurrence
// C(n+1,k) = sigma*C(n,k-1) + (n - k*sigma)*C(n,k), C(0,0)=1
CoeffTable gfc_table(long n_max, const Scalar& sigma);

// direct alternating-sum definitions (validation path / noncentral)
Scalar gfc_direct(long n, long k, const Scalar& sigma, const PrecisionPolicy& policy = {});
Scalar gfc_noncentral(long n, long k, const Scalar& sigma, const Scalar& gamma,
                      const PrecisionPolicy& policy = {});

// limit of gfc_noncentral(n,k,s,gamma)/s^k as s -> 0
Scalar gfc_zero_limit(long n, long k, const Scalar& gamma);

// gfc_noncentral(n,k,-1,gamma)/(-1)^k via the closed binomial form
// binom(n-gamma-1, n-k) * n!/k!  (generalized binomial; gamma real)
Scalar gfc_neg1_ratio(long n, long k, const Scalar& gamma);

// gfc_noncentral(A,k,sigma,gamma)/sigma^k with the right family at
// sigma = 0 (zero limit) and sigma = -1 (binomial form)
Scalar coeff_ratio(const EvalCtx& ctx, const Rat& sigma, long A, long k,
                   const Scalar& gamma);

}  // namespace gibbs

#endif
