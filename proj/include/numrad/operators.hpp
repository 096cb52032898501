#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "numrad/lpspace.hpp"
#include "numrad/sphere_search.hpp"

namespace numrad {

/// Dense matrix (codomain.dim x domain.dim) between two l^p spaces.
struct Operator {
  Operator(Mat m, LpSpace dom, LpSpace cod);
  /// Square operator on a single space.
  Operator(Mat m, LpSpace space);

  Mat matrix;
  LpSpace domain;
  LpSpace codomain;

  bool is_endomorphism() const { return domain == codomain; }
};

enum class Method {
  automatic,  // exact where a finite or spectral formula exists, sampling otherwise
  exact,      // vertex enumeration (p in {1, inf}) or Jacobi (p = 2); errors if unavailable
  sample,     // multi-start ascent on the sphere, always
};

enum class NormKind { operator_norm, numerical_radius };

std::string to_string(Method m);
std::string to_string(NormKind k);
Method parse_method(const std::string& s);
NormKind parse_norm_kind(const std::string& s);

struct SearchOptions {
  Method method = Method::automatic;
  int starts = 64;
  std::uint64_t seed = 0;
};

/// Norm or numerical radius together with the pair that attains it.
struct RadiusResult {
  double value = 0.0;
  Vec witness_x;
  Vec witness_y;
  bool diagonal = false;  // witness_y(witness_x) = 1
  bool attained = true;   // false only for the zero operator
  std::string method;
};

/// sup ||Tx|| over the unit sphere of the domain.
/// Throws std::length_error("vertex enumeration too large") for an exact
/// request with domain p = inf and dim > 20.
RadiusResult operator_norm(const Operator& t, const SearchOptions& opts = {});

/// Values y(Tx) for sampled unit x and every extremal y of x.
/// Throws std::invalid_argument for a non-square operator.
std::vector<double> numerical_range_sample(const Operator& t, std::size_t count, std::uint64_t seed);

/// sup |y(Tx)| over diagonal pairs (x unit, y unit, y(x) = 1).
RadiusResult numerical_radius(const Operator& t, const SearchOptions& opts = {});

RadiusResult evaluate(const Operator& t, NormKind kind, const SearchOptions& opts = {});

struct IndexEstimate {
  double value = 0.0;  // upper bound on n(X)
  std::size_t trials = 0;
  Mat worst;           // operator achieving the minimum ratio
  std::string bound = "upper";
};

/// Minimum of ||T||_w / ||T|| over random operators (plus `extra`), an upper
/// bound on the numerical index.
IndexEstimate numerical_index_estimate(const LpSpace& space, std::size_t trials, std::uint64_t seed,
                                       const std::vector<Mat>& extra = {});

/// Degree-zero objective whose maximum over the sphere is the norm
/// (operator kind, value is ||Tz||/||z||) or the numerical radius.
search::SphereObjective sphere_objective(const Mat& t, const LpSpace& domain, const LpSpace& codomain,
                                         NormKind kind);

/// Completes a unit domain vector into a witness pair and evaluates it.
RadiusResult witness_from_point(const Mat& t, const LpSpace& domain, const LpSpace& codomain, NormKind kind,
                                const Vec& point);

/// True when evaluate() has a closed-form or finite-enumeration path for the
/// given space and method.
bool has_exact_path(const LpSpace& space, NormKind kind, Method method);

/// Repeated norm evaluation over a slowly varying family of matrices on one
/// space. Warm starts from previously found maximizers; full() re-runs the
/// global search and refreshes the warm pool.
class NormEvaluator {
 public:
  NormEvaluator(LpSpace space, NormKind kind, SearchOptions opts, int warm_random_starts = 0);

  double value(const Mat& t);
  RadiusResult full(const Mat& t);

  /// While frozen, value() still starts from the pool but no longer
  /// replaces it; full() always refreshes it.
  void freeze_pool(bool frozen) { frozen_ = frozen; }

  std::size_t evaluations() const { return evaluations_; }
  const LpSpace& space() const { return space_; }
  NormKind kind() const { return kind_; }

 private:
  void absorb(const std::vector<search::LocalMax>& maxima);

  LpSpace space_;
  NormKind kind_;
  SearchOptions opts_;
  int warm_random_;
  bool exact_;
  bool frozen_ = false;
  std::vector<Vec> pool_;
  std::mt19937_64 rng_;
  std::size_t evaluations_ = 0;
};

}  // namespace numrad
