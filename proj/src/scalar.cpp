#include "gibbs/scalar.hpp"

#include <algorithm>
#include <cmath>

namespace gibbs {

namespace {

thread_local int g_bits = 0;

int bits_to_digits(int bits) {
  return static_cast<int>(bits * 0.30103) + 2;
}

void ensure_init() {
  if (g_bits == 0) {
    g_bits = 128;
    Real::default_precision(bits_to_digits(g_bits));
  }
}

}  // namespace

int working_bits() {
  ensure_init();
  return g_bits;
}

void set_working_bits(int bits) {
  g_bits = bits;
  Real::default_precision(bits_to_digits(bits));
}

Scalar Scalar::log_value(int sign, const Real& log_mag) {
  Scalar s;
  s.exact_ = false;
  s.q_ = 0;
  s.s_ = sign;
  if (sign != 0) s.lm_ = log_mag;
  return s;
}

Scalar Scalar::from_double(double v) {
  ensure_init();
  if (v == 0.0) return log_value(0, Real(0));
  return log_value(v > 0 ? 1 : -1, Real(log(Real(std::abs(v)))));
}

int Scalar::sgn() const {
  if (exact_) return mpq_sgn(q_.get_mpq_t());
  return s_;
}

const Rat& Scalar::rat() const {
  if (!exact_) throw std::logic_error("Scalar: rational value of a LogFloat");
  return q_;
}

Real Scalar::log_abs() const {
  ensure_init();
  if (sgn() == 0) throw std::logic_error("Scalar: log of zero");
  if (!exact_) return lm_;
  Real v(q_.get_mpq_t());
  return log(boost::multiprecision::abs(v));
}

Real Scalar::value() const {
  ensure_init();
  if (exact_) return Real(q_.get_mpq_t());
  if (s_ == 0) return Real(0);
  return s_ * exp(lm_);
}

Scalar Scalar::to_log() const {
  if (!exact_) return *this;
  int s = sgn();
  if (s == 0) return log_value(0, Real(0));
  return log_value(s, log_abs());
}

double Scalar::to_double() const {
  if (exact_) return q_.get_d();
  if (s_ == 0) return 0.0;
  return static_cast<double>(s_ * exp(lm_));
}

Scalar Scalar::operator-() const {
  if (exact_) {
    Scalar r(*this);
    r.q_ = -r.q_;
    return r;
  }
  return log_value(-s_, lm_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.exact_ && b.exact_) return Scalar(Rat(a.q_ * b.q_));
  int s = a.sgn() * b.sgn();
  if (s == 0) return Scalar::log_value(0, Real(0));
  return Scalar::log_value(s, a.log_abs() + b.log_abs());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.sgn() == 0) throw std::domain_error("Scalar: division by zero");
  if (a.exact_ && b.exact_) return Scalar(Rat(a.q_ / b.q_));
  if (a.sgn() == 0) return Scalar::log_value(0, Real(0));
  return Scalar::log_value(a.sgn() * b.sgn(), a.log_abs() - b.log_abs());
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.exact_ && b.exact_) return Scalar(Rat(a.q_ + b.q_));
  int sa = a.sgn(), sb = b.sgn();
  if (sa == 0) return b.exact_ ? b.to_log() : b;
  if (sb == 0) return a.exact_ ? a.to_log() : a;
  Real la = a.log_abs(), lb = b.log_abs();
  if (sa == sb) {
    const Real& hi = la > lb ? la : lb;
    const Real& lo = la > lb ? lb : la;
    return Scalar::log_value(sa, hi + log1p(exp(lo - hi)));
  }
  if (la == lb) return Scalar::log_value(0, Real(0));
  bool a_big = la > lb;
  const Real& hi = a_big ? la : lb;
  const Real& lo = a_big ? lb : la;
  // log(e^hi - e^lo) = hi + log(1 - e^{lo-hi})
  return Scalar::log_value(a_big ? sa : sb, hi + log(-expm1(lo - hi)));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.exact_ && b.exact_) return a.q_ == b.q_;
  int sa = a.sgn(), sb = b.sgn();
  if (sa != sb) return false;
  if (sa == 0) return true;
  return a.log_abs() == b.log_abs();
}

bool operator<(const Scalar& a, const Scalar& b) {
  if (a.exact_ && b.exact_) return a.q_ < b.q_;
  int sa = a.sgn(), sb = b.sgn();
  if (sa != sb) return sa < sb;
  if (sa == 0) return false;
  if (sa > 0) return a.log_abs() < b.log_abs();
  return b.log_abs() < a.log_abs();
}

Scalar Scalar::pow_int(long e) const {
  if (e == 0) return Scalar(1);
  if (e < 0) return (Scalar(1) / *this).pow_int(-e);
  if (exact_) {
    Rat base = q_, acc = 1;
    long k = e;
    while (k > 0) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return Scalar(acc);
  }
  int s = s_;
  if (s == 0) return log_value(0, Real(0));
  return log_value((e % 2 == 0) ? 1 : s, Real(lm_ * e));
}

Scalar abs(const Scalar& a) {
  return a.sgn() < 0 ? -a : a;
}

Scalar rising(const Scalar& a, long q) {
  if (q < 0) throw std::domain_error("rising: negative length");
  if (q == 0) return Scalar(1);
  if (a.is_exact()) {
    Rat p = 1;
    for (long i = 0; i < q; ++i) p *= a.rat() + static_cast<signed long>(i);
    return Scalar(p);
  }
  if (a.sgn() == 0 && q >= 1) {
    // first factor is 0 ... but later factors are i; product is 0
    return Scalar::log_value(0, Real(0));
  }
  Real v = a.value();
  if (a.sgn() > 0 && q > 48) {
    return Scalar::log_value(1, lgamma(Real(v + q)) - lgamma(v));
  }
  int sign = 1;
  Real lm(0);
  for (long i = 0; i < q; ++i) {
    Real f = v + i;
    int fs = f.sign();
    if (fs == 0) return Scalar::log_value(0, Real(0));
    sign *= fs;
    lm += log(boost::multiprecision::abs(f));
  }
  return Scalar::log_value(sign, lm);
}

Scalar falling(const Scalar& a, long q) {
  if (q < 0) throw std::domain_error("falling: negative length");
  if (q == 0) return Scalar(1);
  if (a.is_exact()) {
    Rat p = 1;
    for (long i = 0; i < q; ++i) p *= a.rat() - static_cast<signed long>(i);
    return Scalar(p);
  }
  Scalar r = rising(-a, q);
  return (q % 2 == 0) ? r : -r;
}

namespace {

SumResult signed_sum_once(const std::vector<Scalar>& terms) {
  bool all_exact = true;
  for (const auto& t : terms)
    if (!t.is_exact()) { all_exact = false; break; }
  if (all_exact) {
    Rat acc = 0;
    for (const auto& t : terms) acc += t.rat();
    return {Scalar(acc), false, 1.0};
  }
  Scalar pos = Scalar::log_value(0, Real(0));
  Scalar neg = Scalar::log_value(0, Real(0));
  for (const auto& t : terms) {
    int s = t.sgn();
    if (s > 0) pos += t.is_exact() ? t.to_log() : t;
    else if (s < 0) neg += -(t.is_exact() ? t.to_log() : t);
  }
  Scalar res = pos - neg;
  SumResult out{res, false, 1.0};
  if (pos.sgn() == 0 && neg.sgn() == 0) return out;
  Real big = (neg.sgn() == 0 || (pos.sgn() != 0 && pos.log_abs() > neg.log_abs()))
                 ? pos.log_abs()
                 : neg.log_abs();
  if (res.sgn() == 0) {
    out.cancellation = 0.0;
  } else {
    Real ratio = exp(res.log_abs() - big);
    out.cancellation = static_cast<double>(ratio);
  }
  return out;
}

double est_rel_error(const SumResult& r, size_t n_terms, int bits) {
  if (r.cancellation <= 0.0) return 1.0;
  return static_cast<double>(n_terms + 1) * std::ldexp(1.0, 2 - bits) / r.cancellation;
}

}  // namespace

SumResult signed_sum(const std::vector<Scalar>& terms, const PrecisionPolicy& policy) {
  SumResult r = signed_sum_once(terms);
  if (r.value.is_exact()) return r;
  if (est_rel_error(r, terms.size(), working_bits()) > policy.target_rel_error)
    r.precision_warning = true;
  return r;
}

SumResult signed_sum_escalating(const std::function<std::vector<Scalar>()>& gen,
                                const PrecisionPolicy& policy) {
  int saved = working_bits();
  int bits = std::max(saved, policy.initial_bits);
  for (;;) {
    set_working_bits(bits);
    std::vector<Scalar> terms = gen();
    SumResult r = signed_sum_once(terms);
    if (r.value.is_exact()) {
      set_working_bits(saved);
      return r;
    }
    if (est_rel_error(r, terms.size(), bits) <= policy.target_rel_error) {
      set_working_bits(saved);
      return r;
    }
    if (bits >= policy.max_bits) {
      set_working_bits(saved);
      r.precision_warning = true;
      return r;
    }
    bits = std::min(policy.max_bits, bits * policy.escalation_factor);
  }
}

}  // namespace gibbs
