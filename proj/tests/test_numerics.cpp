#include "doctest.h"

#include "gibbs/scalar.hpp"

#include <random>

using namespace gibbs;

TEST_CASE("rising factorial basics") {
  CHECK(rising(Scalar(1), 3).rat() == Rat(6));
  CHECK(rising(Scalar(Rat(7, 2)), 0).rat() == Rat(1));
  CHECK(rising(Scalar(Rat(-1, 2)), 3).rat() == Rat(-3, 8));
  CHECK(rising(Scalar(0), 2).rat() == Rat(0));
}

TEST_CASE("falling factorial basics") {
  CHECK(falling(Scalar(5), 2).rat() == Rat(20));
  CHECK(falling(Scalar(3), 4).rat() == Rat(0));
  CHECK(falling(Scalar(Rat(1, 2)), 2).rat() == Rat(-1, 4));
}

TEST_CASE("rising/falling identities on random rationals") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 10), len(0, 20);
  for (int it = 0; it < 200; ++it) {
    Rat a(num(rng), den(rng));
    a.canonicalize();
    long q = len(rng), p = len(rng);
    Scalar sa(a);
    CHECK(rising(sa, q) * rising(Scalar(a + static_cast<signed long>(q)), p) ==
          rising(sa, q + p));
    Scalar lhs = falling(sa, q);
    Scalar rhs = rising(-sa, q);
    if (q % 2 == 1) rhs = -rhs;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("exact and log modes agree") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 9), len(0, 15);
  for (int it = 0; it < 100; ++it) {
    Rat a(num(rng), den(rng));
    a.canonicalize();
    long q = len(rng);
    Scalar ex = rising(Scalar(a), q);
    Scalar lg = rising(Scalar(a).to_log(), q);
    if (ex.sgn() == 0) {
      // the log representation cannot promise exact zeros, only tiny residue
      double scale = 1.0;
      for (long i = 0; i < q; ++i) scale *= std::abs(a.get_d()) + i + 1;
      CHECK(std::abs(lg.to_double()) < 1e-25 * scale);
    } else {
      CHECK(lg.sgn() == ex.sgn());
      double rel = std::abs((lg.to_double() - ex.to_double()) / ex.to_double());
      CHECK(rel < 1e-12);
    }
  }
}

TEST_CASE("log-mode lgamma fast path matches products") {
  Scalar base = Scalar(Rat(741)).to_log();
  Scalar big = rising(base, 1000);  // lgamma route
  Scalar acc = Scalar(1).to_log();
  for (long i = 0; i < 1000; ++i) acc *= base + Scalar(i);
  double rel = std::abs(static_cast<double>((big.log_abs() - acc.log_abs())));
  CHECK(rel < 1e-20);
}

TEST_CASE("signed_sum basics") {
  PrecisionPolicy pol;
  std::vector<Scalar> v{Scalar(1), Scalar(-1), Scalar(Rat(1, 4))};
  CHECK(signed_sum(v, pol).value.rat() == Rat(1, 4));
  CHECK(signed_sum({}, pol).value.rat() == Rat(0));
  std::vector<Scalar> lv;
  for (const auto& s : v) lv.push_back(s.to_log());
  auto r = signed_sum(lv, pol);
  CHECK(std::abs(r.value.to_double() - 0.25) < 1e-15);
}

TEST_CASE("signed_sum escalates through cancellation") {
  PrecisionPolicy pol;
  pol.initial_bits = 64;
  // sum_k (-1)^k C(60,k) (1+eps)^k = eps^60 -- catastrophic at 64 bits
  Rat eps(1, 128);
  auto gen = [&]() {
    std::vector<Scalar> terms;
    Scalar x = Scalar(Rat(1) + eps).to_log();
    mpz_class c;
    for (long k = 0; k <= 60; ++k) {
      mpz_bin_uiui(c.get_mpz_t(), 60, k);
      Scalar t = Scalar(Rat(c)).to_log() * x.pow_int(k);
      terms.push_back(k % 2 == 0 ? t : -t);
    }
    return terms;
  };
  auto r = signed_sum_escalating(gen, pol);
  // exact value is eps^60
  double want = 60 * std::log(eps.get_d());
  CHECK(r.value.sgn() == 1);
  double got = static_cast<double>(r.value.log_abs());
  CHECK(std::abs(got - want) / std::abs(want) < 1e-9);
}

TEST_CASE("precision warning raised when max bits insufficient") {
  PrecisionPolicy pol;
  pol.initial_bits = 64;
  pol.max_bits = 64;
  Rat eps(1, 1);
  eps /= 1 << 30;
  auto gen = [&]() {
    std::vector<Scalar> terms;
    Scalar x = Scalar(Rat(1) + eps).to_log();
    mpz_class c;
    for (long k = 0; k <= 60; ++k) {
      mpz_bin_uiui(c.get_mpz_t(), 60, k);
      Scalar t = Scalar(Rat(c)).to_log() * x.pow_int(k);
      terms.push_back(k % 2 == 0 ? t : -t);
    }
    return terms;
  };
  auto r = signed_sum_escalating(gen, pol);
  CHECK(r.precision_warning);
}
