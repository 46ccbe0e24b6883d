#ifndef GIBBS_MODEL_HPP
#define GIBBS_MODEL_HPP

#include "gibbs/scalar.hpp"

#include <map>
#include <variant>
#include <vector>

namespace gibbs {

struct InvalidPartition : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Dirichlet {
  Rat theta;
};
struct PitmanYor {
  Rat sigma;
  Rat theta;
};
struct Gnedin {
  Rat gamma;
  Rat zeta;
};

struct GibbsModel {
  std::variant<Dirichlet, PitmanYor, Gnedin> v;

  GibbsModel(Dirichlet d) : v(d) { validate(); }
  GibbsModel(PitmanYor p) : v(p) { validate(); }
  GibbsModel(Gnedin g) : v(g) { validate(); }

  Rat sigma() const;     // 0 | sigma | -1
  void validate() const;  // throws DomainError
  bool is_dirichlet() const { return std::holds_alternative<Dirichlet>(v); }
  bool is_pitman_yor() const { return std::holds_alternative<PitmanYor>(v); }
  bool is_gnedin() const { return std::holds_alternative<Gnedin>(v); }
  const Dirichlet& dp() const { return std::get<Dirichlet>(v); }
  const PitmanYor& py() const { return std::get<PitmanYor>(v); }
  const Gnedin& gn() const { return std::get<Gnedin>(v); }
};

// sparse map block size l -> number of blocks of that size
struct FrequencyCounts {
  std::map<long, long> m;

  long n() const;  // sum l*m_l
  long j() const;  // sum m_l
  long at(long l) const;
  void validate() const;
};

struct PartitionData {
  long n = 0;
  long j = 0;
  FrequencyCounts counts;

  static PartitionData from_counts(FrequencyCounts c);
  void validate() const;
};

Scalar v_weight(const EvalCtx& ctx, const GibbsModel& model, long n, long j);

Scalar eppf(const EvalCtx& ctx, const GibbsModel& model,
            const std::vector<long>& block_sizes);

Scalar sampling_formula(const EvalCtx& ctx, const GibbsModel& model,
                        const FrequencyCounts& counts);

struct Predictive {
  Scalar p_new;
  std::map<long, Scalar> p_join;  // per-block probability for a block of size l
};
Predictive predictive_probs(const EvalCtx& ctx, const GibbsModel& model,
                            const PartitionData& data);

// max relative defect of V(n,j) = V(n+1,j+1) + (n - sigma j) V(n+1,j)
double validate_recursion(const GibbsModel& model, long n_max);

// all frequency-count configurations with total size n
std::vector<FrequencyCounts> all_configurations(long n);

}  // namespace gibbs

#endif
