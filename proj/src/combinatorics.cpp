#include "gibbs/combinatorics.hpp"

#include <mutex>

namespace gibbs {

CoeffTable::CoeffTable(long n_max) : n_max_(n_max), e_((n_max + 1) * (n_max + 2) / 2) {}

const Scalar& CoeffTable::at(long n, long k) const {
  if (n < 0 || n > n_max_ || k < 0 || k > n)
    throw IndexOutOfRange("CoeffTable index (" + std::to_string(n) + "," +
                          std::to_string(k) + ")");
  return e_[n * (n + 1) / 2 + k];
}

Scalar& CoeffTable::at(long n, long k) {
  return const_cast<Scalar&>(static_cast<const CoeffTable&>(*this).at(n, k));
}

Rat binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return Rat(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(r);
}

Rat factorial_rat(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(r);
}

Rat multinomial(long m, const std::vector<long>& parts) {
  long used = 0;
  for (long p : parts) {
    if (p < 0) return Rat(0);
    used += p;
  }
  if (used > m) return Rat(0);
  Rat v = factorial_rat(m) / factorial_rat(m - used);
  for (long p : parts) v /= factorial_rat(p);
  return v;
}

namespace {

// grow-on-demand exact triangular tables guarded by a mutex
struct GrowTable {
  std::vector<std::vector<Rat>> rows;  // rows[n][k]
  std::mutex mu;

  Rat get(long n, long k, bool second_kind) {
    if (n < 0 || k < 0)
      throw IndexOutOfRange("stirling index");
    if (k > n) return Rat(0);
    std::lock_guard<std::mutex> g(mu);
    if (rows.empty()) rows.push_back({Rat(1)});
    while (static_cast<long>(rows.size()) <= n) {
      long nn = static_cast<long>(rows.size());
      std::vector<Rat> row(nn + 1, Rat(0));
      for (long kk = 1; kk <= nn; ++kk) {
        const auto& prev = rows[nn - 1];
        Rat up = (kk <= nn - 1) ? prev[kk] : Rat(0);
        Rat diag = prev[kk - 1];
        row[kk] = second_kind ? Rat(kk * up + diag) : Rat((nn - 1) * up + diag);
      }
      rows.push_back(std::move(row));
    }
    return rows[n][k];
  }
};

GrowTable g_s1, g_s2;

}  // namespace

Scalar stirling1_unsigned(long n, long k) { return Scalar(g_s1.get(n, k, false)); }
Scalar stirling2(long n, long k) { return Scalar(g_s2.get(n, k, true)); }

CoeffTable gfc_table(long n_max, const Scalar& sigma) {
  CoeffTable t(n_max);
  t.at(0, 0) = Scalar(1);
  for (long n = 0; n < n_max; ++n) {
    for (long k = 0; k <= n + 1; ++k) {
      Scalar v(0);
      if (k >= 1 && k - 1 <= n) v += sigma * t.at(n, k - 1);
      if (k <= n) v += (Scalar(n) - Scalar(k) * sigma) * t.at(n, k);
      t.at(n + 1, k) = v;
    }
  }
  return t;
}

Scalar gfc_direct(long n, long k, const Scalar& sigma, const PrecisionPolicy& policy) {
  return gfc_noncentral(n, k, sigma, Scalar(0), policy);
}

Scalar gfc_noncentral(long n, long k, const Scalar& sigma, const Scalar& gamma,
                      const PrecisionPolicy& policy) {
  if (n < 0 || k < 0 || k > n) throw IndexOutOfRange("gfc_noncentral index");
  if (n == 0) return Scalar(1);
  auto gen = [&]() {
    std::vector<Scalar> terms;
    terms.reserve(k + 1);
    for (long j = 0; j <= k; ++j) {
      Scalar t = Scalar(binomial(k, j)) * rising(-sigma * Scalar(j) - gamma, n);
      terms.push_back(j % 2 == 0 ? t : -t);
    }
    return terms;
  };
  if (sigma.is_exact() && gamma.is_exact()) {
    SumResult r = signed_sum(gen(), policy);
    return r.value / Scalar(factorial_rat(k));
  }
  SumResult r = signed_sum_escalating(gen, policy);
  if (r.precision_warning)
    throw PrecisionExhausted("gfc_noncentral: cancellation beyond max_bits");
  return r.value / Scalar(factorial_rat(k)).to_log();
}

Scalar gfc_zero_limit(long n, long k, const Scalar& gamma) {
  if (n < 0 || k < 0 || k > n) throw IndexOutOfRange("gfc_zero_limit index");
  if (n == 0) return Scalar(1);
  Scalar s(0);
  for (long i = k; i <= n; ++i)
    s += Scalar(binomial(n, i)) * stirling1_unsigned(i, k) * rising(-gamma, n - i);
  return s;
}

Scalar gfc_neg1_ratio(long n, long k, const Scalar& gamma) {
  if (n < 0 || k < 0 || k > n) throw IndexOutOfRange("gfc_neg1_ratio index");
  if (n == 0) return Scalar(1);
  Scalar x = Scalar(n) - gamma - Scalar(1);
  return falling(x, n - k) / Scalar(factorial_rat(n - k)) *
         (Scalar(factorial_rat(n)) / Scalar(factorial_rat(k)));
}

Scalar coeff_ratio(const EvalCtx& ctx, const Rat& sigma, long A, long k,
                   const Scalar& gamma) {
  if (sigma == 0) return gfc_zero_limit(A, k, gamma);
  if (sigma == -1) return gfc_neg1_ratio(A, k, gamma);
  Scalar s = ctx.lift(sigma);
  return gfc_noncentral(A, k, s, gamma, ctx.policy) / s.pow_int(k);
}

}  // namespace gibbs
