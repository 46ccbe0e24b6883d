#ifndef GIBBS_SCALAR_HPP
#define GIBBS_SCALAR_HPP

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>
#include <functional>
#include <stdexcept>
#include <vector>

namespace gibbs {

using Rat = mpq_class;
using Real = boost::multiprecision::mpfr_float;

struct PrecisionPolicy {
  double target_rel_error = 1e-9;
  int initial_bits = 128;
  int max_bits = 1024;
  int escalation_factor = 2;
};

// thread-local working precision for all LogFloat arithmetic
int working_bits();
void set_working_bits(int bits);

struct PrecisionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two-mode signed number: exact rational, or sign + log-magnitude at the
// current working precision. Exact ops are lossless; mixed ops promote to log.
class Scalar {
 public:
  Scalar() : exact_(true), q_(0) {}
  Scalar(int v) : exact_(true), q_(v) {}
  Scalar(long v) : exact_(true), q_(static_cast<signed long>(v)) {}
  Scalar(const Rat& q) : exact_(true), q_(q) { q_.canonicalize(); }

  static Scalar log_value(int sign, const Real& log_mag);
  static Scalar from_double(double v);

  bool is_exact() const { return exact_; }
  int sgn() const;
  const Rat& rat() const;        // exact mode only
  Real log_abs() const;          // nonzero only; exact values converted on demand
  Real value() const;            // numeric value at working precision
  Scalar to_log() const;         // force LogFloat representation
  double to_double() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
  Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
  Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator<(const Scalar& a, const Scalar& b);

  Scalar pow_int(long e) const;

 private:
  bool exact_;
  Rat q_;
  int s_ = 0;   // LogFloat sign
  Real lm_;     // LogFloat log-magnitude (ignored when s_ == 0)
};

inline bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
inline bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
inline bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
inline bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

Scalar rising(const Scalar& a, long q);
Scalar falling(const Scalar& a, long q);
Scalar abs(const Scalar& a);

struct SumResult {
  Scalar value;
  bool precision_warning = false;  // target unattainable even at max_bits
  double cancellation = 0.0;       // |result| / largest one-signed part
};

// compensated signed sum: positive and negative parts accumulated separately
SumResult signed_sum(const std::vector<Scalar>& terms, const PrecisionPolicy& policy);

// regenerates the terms at escalated precision until the cancellation
// diagnostic meets target_rel_error or max_bits is reached
SumResult signed_sum_escalating(const std::function<std::vector<Scalar>()>& gen,
                                const PrecisionPolicy& policy);

// evaluation context: chooses how model parameters enter formulas
struct EvalCtx {
  bool exact = true;
  PrecisionPolicy policy{};
  Scalar lift(const Rat& q) const {
    Scalar s(q);
    return exact ? s : s.to_log();
  }
  Scalar lift(long v) const { return lift(Rat(static_cast<signed long>(v))); }
};

}  // namespace gibbs

#endif
