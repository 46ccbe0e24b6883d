// command line front end: fit / estimate / simulate / validate / crossval

#include "gibbs/asymptotics.hpp"
#include "gibbs/combinatorics.hpp"
#include "gibbs/fit.hpp"
#include "gibbs/freq_io.hpp"
#include "gibbs/posterior.hpp"
#include "gibbs/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>

using namespace gibbs;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct ModelFlags {
  std::string model = "pd";
  double sigma = 0.5;
  double theta = 1.0;
  double gamma = 0.5;
  double zeta = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model, "model family: dp | pd | gnedin")
        ->check(CLI::IsMember({"dp", "pd", "gnedin"}));
    cmd->add_option("--sigma", sigma, "discount parameter (pd)");
    cmd->add_option("--theta", theta, "concentration parameter (dp, pd)");
    cmd->add_option("--gamma", gamma, "gnedin gamma");
    cmd->add_option("--zeta", zeta, "gnedin zeta");
  }

  GibbsModel build() const {
    if (model == "dp") return GibbsModel{Dirichlet{Rat(theta)}};
    if (model == "pd") return GibbsModel{PitmanYor{Rat(sigma), Rat(theta)}};
    return GibbsModel{Gnedin{Rat(gamma), Rat(zeta)}};
  }

  json to_json() const {
    json j{{"model", model}};
    if (model == "dp") j["theta"] = theta;
    if (model == "pd") {
      j["sigma"] = sigma;
      j["theta"] = theta;
    }
    if (model == "gnedin") {
      j["gamma"] = gamma;
      j["zeta"] = zeta;
    }
    return j;
  }
};

struct PrecisionFlags {
  int bits = 128;
  bool exact = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--precision-bits", bits, "working precision for log-space math");
    cmd->add_flag("--exact", exact, "exact rational evaluation");
  }

  EvalCtx ctx() const {
    EvalCtx c;
    c.exact = exact;
    c.policy.initial_bits = bits;
    if (c.policy.max_bits < bits) c.policy.max_bits = bits;
    set_working_bits(bits);
    return c;
  }
};

long round_half_away(double v) {
  return static_cast<long>(v < 0 ? std::ceil(v - 0.5) : std::floor(v + 0.5));
}

PartitionData load_data(const std::string& path) {
  return PartitionData::from_counts(load_frequency_file(path));
}

// ---------------------------------------------------------------------------

int cmd_fit(const std::string& input, const std::string& model, bool as_json) {
  PartitionData data = load_data(input);
  FitResult r = model == "dp" ? fit_dp(data) : fit_pd(data);
  if (as_json) {
    json out{{"version", kVersion},
             {"model", model},
             {"theta", r.theta},
             {"log_eppf", r.log_eppf},
             {"evaluations", r.evaluations},
             {"converged", r.converged}};
    if (model != "dp") out["sigma"] = r.sigma;
    std::cout << out.dump(2) << "\n";
  } else {
    if (model == "dp") std::printf("theta\t%.6g\n", r.theta);
    else std::printf("sigma\t%.6g\ntheta\t%.6g\n", r.sigma, r.theta);
    std::printf("log_eppf\t%.10g\n", r.log_eppf);
  }
  return r.converged ? 0 : 2;
}

int cmd_estimate(const std::string& input, const ModelFlags& mf,
                 const PrecisionFlags& pf, const std::vector<long>& ms,
                 const std::vector<long>& taus, bool per_l, bool as_json) {
  PartitionData data = load_data(input);
  GibbsModel model = mf.build();
  EvalCtx ctx = pf.ctx();
  json rows = json::array();
  if (!as_json) {
    if (per_l) std::printf("m\tl\to_hat\tn_hat\tm_hat\n");
    else std::printf("m\ttau\to_hat\tn_hat\tm_hat\n");
  }
  for (long m : ms) {
    for (long tau : taus) {
      if (per_l) {
        for (long l = 1; l <= tau; ++l) {
          ConditionalQuery q{model, data, m, l};
          double o = l <= data.n + m ? o_hat(ctx, q).to_double() : 0.0;
          double n = l <= m ? n_hat(ctx, q).to_double() : 0.0;
          if (as_json)
            rows.push_back({{"m", m}, {"l", l}, {"o_hat", o}, {"n_hat", n},
                            {"m_hat", o + n}});
          else
            std::printf("%ld\t%ld\t%.6f\t%.6f\t%.6f\n", m, l, o, n, o + n);
        }
      } else {
        RareVariety rv = rare_variety(ctx, model, data, m, tau);
        double o = rv.o.to_double(), n = rv.n.to_double(), mm = rv.m.to_double();
        if (as_json)
          rows.push_back({{"m", m}, {"tau", tau},
                          {"o_hat", o}, {"n_hat", n}, {"m_hat", mm},
                          {"o_hat_rounded", round_half_away(o)},
                          {"n_hat_rounded", round_half_away(n)},
                          {"m_hat_rounded", round_half_away(mm)}});
        else
          std::printf("%ld\t%ld\t%ld\t%ld\t%ld\n", m, tau, round_half_away(o),
                      round_half_away(n), round_half_away(mm));
      }
    }
  }
  if (as_json) {
    json out{{"version", kVersion}, {"model", mf.to_json()},
             {"n", data.n}, {"j", data.j}, {"rows", rows}};
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int cmd_simulate(const std::string& input, bool prior, const ModelFlags& mf,
                 long n, long m, long replicates, std::uint64_t seed,
                 const std::string& stat, long l) {
  GibbsModel model = mf.build();
  PartitionData data = prior ? PartitionData{} : load_data(input);
  auto one = [&](std::uint64_t rep) -> double {
    std::uint64_t s = stream_seed(seed, rep);
    if (prior) {
      SimState st = sample_partition(model, n, s);
      if (stat == "single-block") return st.j == 1 ? 1.0 : 0.0;
      if (stat == "K") return static_cast<double>(st.j);
      return static_cast<double>(st.counts().at(l));  // M_l
    }
    ContinuationCounts c = continue_sample(model, data, m, s);
    if (stat == "K") {
      double k = 0;
      for (auto [sz, cnt] : c.n_new) k += cnt;
      return k;
    }
    if (stat == "N_l") return static_cast<double>(c.n_new.count(l) ? c.n_new.at(l) : 0);
    if (stat == "O_l") return static_cast<double>(c.o.count(l) ? c.o.at(l) : 0);
    return static_cast<double>(c.m.count(l) ? c.m.at(l) : 0);  // M_l
  };
  McResult r = mc_statistic(stat, replicates, one);
  json pmf;
  for (auto [x, p] : r.empirical_pmf) pmf[std::to_string(x)] = p;
  json out{{"version", kVersion}, {"model", mf.to_json()}, {"seed", seed},
           {"replicates", r.replicates}, {"statistic", r.statistic},
           {"n", n}, {"mean", r.mean}, {"se", r.se}, {"empirical_pmf", pmf}};
  if (!prior) out["m"] = m;
  if (stat == "M_l" || stat == "N_l" || stat == "O_l") out["l"] = l;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_validate(const std::string& suite) {
  bool ok = true;
  auto report = [&](const std::string& name, bool pass, const std::string& info) {
    std::printf("%s: %s%s%s\n", pass ? "PASS" : "FAIL", name.c_str(),
                info.empty() ? "" : " - ", info.c_str());
    ok = ok && pass;
  };
  EvalCtx exact;
  std::vector<GibbsModel> models{GibbsModel{Dirichlet{Rat(1)}},
                                 GibbsModel{PitmanYor{Rat(1, 2), Rat(1)}},
                                 GibbsModel{PitmanYor{Rat(612, 1000), Rat(741)}},
                                 GibbsModel{Gnedin{Rat(1, 2), Rat(0)}},
                                 GibbsModel{Gnedin{Rat(1, 3), Rat(2)}}};
  if (suite == "recursion" || suite == "all") {
    double worst = 0;
    for (const auto& model : models)
      worst = std::max(worst, validate_recursion(model, 60));
    report("recursion", worst <= 1e-12, "max defect " + std::to_string(worst));
  }
  if (suite == "normalization" || suite == "all") {
    bool pass = true;
    for (const auto& model : models)
      for (long n = 1; n <= 10 && pass; ++n) {
        Scalar total(0);
        for (const auto& c : all_configurations(n))
          total += sampling_formula(exact, model, c);
        pass = total.rat() == Rat(1);
      }
    report("normalization", pass, "exact for n <= 10");
  }
  if (suite == "oracle" || suite == "all") {
    bool pass = true;
    for (const auto& model : models) {
      FrequencyCounts c{{{2, 1}, {1, 2}}};
      PartitionData d = PartitionData::from_counts(c);
      for (long m = 1; m <= 3 && pass; ++m) {
        for (long l = 1; l <= d.n + m && pass; ++l) {
          OraclePmfs want = oracle_pmfs(exact, model, d, m, l);
          ConditionalQuery q{model, d, m, l};
          Pmf o = o_pmf(exact, q), nn = n_pmf(exact, q), mm = m_pmf(exact, q);
          for (const auto& [x, p] : want.o.probs) pass = pass && o.at(x) == p;
          for (const auto& [x, p] : want.n_new.probs) pass = pass && nn.at(x) == p;
          for (const auto& [x, p] : want.m.probs) pass = pass && mm.at(x) == p;
        }
      }
    }
    report("oracle", pass, "pmfs equal exact enumeration");
  }
  if (suite == "closed" || suite == "all") {
    bool pass = true;
    std::mt19937_64 rng(5);
    for (const auto& model : models) {
      for (int it = 0; it < 40 && pass; ++it) {
        FrequencyCounts c;
        long budget = 2 + static_cast<long>(rng() % 9);
        while (budget > 0) {
          long l = 1 + static_cast<long>(rng() % budget);
          c.m[l] += 1;
          budget -= l;
        }
        PartitionData d = PartitionData::from_counts(c);
        ConditionalQuery q{model, d, 1 + static_cast<long>(rng() % 6),
                           1 + static_cast<long>(rng() % 4)};
        pass = o_hat_closed(exact, q) == o_factorial_moment_engine(exact, q, 1) &&
               n_hat_closed(exact, q) == n_factorial_moment_engine(exact, q, 1);
      }
    }
    report("closed", pass, "estimator displays equal the generic engine");
  }
  if (suite == "table2" || suite == "all") {
    EvalCtx ctx;
    ctx.exact = false;
    ctx.policy.initial_bits = 256;
    set_working_bits(256);
    GibbsModel model{PitmanYor{Rat(612, 1000), Rat(741)}};
    const PartitionData& data = tomato_dataset();
    struct Cell { long m, tau, o, n, mm; };
    const Cell cells[] = {
        {250, 3, 1745, 138, 1882},  {250, 4, 1782, 138, 1920},
        {250, 5, 1798, 138, 1935},  {500, 3, 1730, 272, 2002},
        {500, 4, 1773, 272, 2045},  {500, 5, 1793, 272, 2064},
        {750, 3, 1715, 402, 2117},  {750, 4, 1763, 402, 2165},
        {750, 5, 1787, 403, 2189},  {1000, 3, 1700, 529, 2229},
        {1000, 4, 1753, 530, 2283}, {1000, 5, 1780, 530, 2310},
    };
    long good = 0;
    for (const Cell& c : cells) {
      RareVariety rv = rare_variety(ctx, model, data, c.m, c.tau);
      if (std::labs(round_half_away(rv.o.to_double()) - c.o) <= 1 &&
          std::labs(round_half_away(rv.n.to_double()) - c.n) <= 1 &&
          std::labs(round_half_away(rv.m.to_double()) - c.mm) <= 1)
        ++good;
    }
    set_working_bits(128);
    report("table2", good == 12, std::to_string(3 * good) + "/36 cells within +/-1");
  }
  return ok ? 0 : 2;
}

int cmd_crossval(const std::string& input, long size, long folds, std::uint64_t seed,
                 long tau, const PrecisionFlags& pf, bool as_json) {
  PartitionData full = load_data(input);
  if (size >= full.n) throw ParseError("subsample size must be smaller than n");
  EvalCtx ctx = pf.ctx();
  long truth = 0;
  for (long l = 1; l <= tau; ++l) truth += full.counts.at(l);
  json rows = json::array();
  if (!as_json)
    std::printf("fold\tsigma\ttheta\tm_hat\ttruth\trel_err\n");
  for (long fold = 0; fold < folds; ++fold) {
    FrequencyCounts sub = subsample_species(full.counts, size, stream_seed(seed, fold));
    PartitionData d = PartitionData::from_counts(sub);
    FitResult f = fit_pd(d);
    GibbsModel model{PitmanYor{Rat(f.sigma), Rat(f.theta)}};
    RareVariety rv = rare_variety(ctx, model, d, full.n - size, tau);
    double pred = rv.m.to_double();
    double rel = std::abs(pred - truth) / truth;
    if (as_json)
      rows.push_back({{"fold", fold}, {"sigma", f.sigma}, {"theta", f.theta},
                      {"m_hat", pred}, {"truth", truth}, {"rel_err", rel}});
    else
      std::printf("%ld\t%.4f\t%.2f\t%ld\t%ld\t%.4f\n", fold, f.sigma, f.theta,
                  round_half_away(pred), truth, rel);
  }
  if (as_json) {
    json out{{"version", kVersion}, {"seed", seed}, {"subsample_size", size},
             {"folds", folds}, {"tau", tau}, {"rows", rows}};
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conditional and unconditional block-count analysis for "
               "Gibbs-type partition models"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "JSON output (default TSV)");

  // fit
  auto* fit = app.add_subcommand("fit", "empirical Bayes parameter fit");
  std::string fit_input, fit_model = "pd";
  fit->add_option("input", fit_input, "frequency counts file")->required();
  fit->add_option("--model", fit_model, "dp | pd")->check(CLI::IsMember({"dp", "pd"}));

  // estimate
  auto* est = app.add_subcommand("estimate", "posterior block-count estimators");
  std::string est_input;
  ModelFlags est_mf;
  PrecisionFlags est_pf;
  std::vector<long> est_m{0}, est_tau{1};
  bool per_l = false;
  est->add_option("input", est_input, "frequency counts file")->required();
  est_mf.attach(est);
  est_pf.attach(est);
  est->add_option("-m", est_m, "additional sample sizes")->required();
  est->add_option("--tau", est_tau, "cumulate sizes l = 1..tau");
  est->add_flag("--per-l", per_l, "emit one row per block size l");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo sampler");
  std::string sim_input;
  bool sim_prior = false;
  ModelFlags sim_mf;
  long sim_n = 10, sim_m = 0, sim_R = 1000, sim_l = 1;
  std::uint64_t sim_seed = 0;
  std::string sim_stat = "M_l";
  sim->add_option("input", sim_input, "frequency counts file (conditional mode)");
  sim->add_flag("--prior", sim_prior, "sample fresh partitions");
  sim_mf.attach(sim);
  sim->add_option("-n", sim_n, "sample size (prior mode)");
  sim->add_option("-m", sim_m, "additional draws (conditional mode)");
  sim->add_option("-R", sim_R, "replicates");
  sim->add_option("--seed", sim_seed, "rng seed");
  sim->add_option("--stat", sim_stat, "single-block | K | M_l | N_l | O_l");
  sim->add_option("-l", sim_l, "block size for *_l statistics");

  // validate
  auto* val = app.add_subcommand("validate", "internal consistency suites");
  std::string suite = "all";
  val->add_option("--suite", suite,
                  "recursion | normalization | oracle | closed | table2 | all");

  // crossval
  auto* cv = app.add_subcommand("crossval", "subsample refit and prediction");
  std::string cv_input;
  long cv_size = 1000, cv_folds = 10, cv_tau = 3;
  std::uint64_t cv_seed = 4242;
  PrecisionFlags cv_pf;
  cv->add_option("input", cv_input, "frequency counts file")->required();
  cv->add_option("--subsample-size", cv_size, "observations kept per fold");
  cv->add_option("--folds", cv_folds, "number of folds");
  cv->add_option("--seed", cv_seed, "rng seed");
  cv->add_option("--tau", cv_tau, "cumulate sizes l = 1..tau");
  cv_pf.attach(cv);

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed()) return cmd_fit(fit_input, fit_model, as_json);
    if (est->parsed())
      return cmd_estimate(est_input, est_mf, est_pf, est_m, est_tau, per_l, as_json);
    if (sim->parsed()) {
      if (!sim_prior && sim_input.empty())
        throw ParseError("simulate needs an input file or --prior");
      return cmd_simulate(sim_input, sim_prior, sim_mf, sim_n, sim_m, sim_R,
                          sim_seed, sim_stat, sim_l);
    }
    if (val->parsed()) return cmd_validate(suite);
    if (cv->parsed())
      return cmd_crossval(cv_input, cv_size, cv_folds, cv_seed, cv_tau, cv_pf,
                          as_json);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const InvalidPartition& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const DegenerateData& e) {
    std::fprintf(stderr, "degenerate data: %s\n", e.what());
    return 2;
  } catch (const PrecisionExhausted& e) {
    std::fprintf(stderr, "precision failure: %s\n", e.what());
    return 2;
  }
  return 0;
}
