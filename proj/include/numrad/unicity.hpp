#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "numrad/operators.hpp"
#include "numrad/projections.hpp"

namespace numrad {

struct UnicityOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  double min_radius = 1e-3;     // local perturbation radii are log-uniform in [min_radius, max_radius]
  double max_radius = 1.0;
  double global_spread = 1.0;   // std. deviation of theta for global draws
  std::size_t verify_top = 32;  // smallest screened ratios re-evaluated by full search
  SearchOptions inner;
  std::vector<Mat> extra;       // candidates added to the sample (e.g. a second minimizer)
};

struct UnicityEstimate {
  double r_hat = 0.0;        // sampled minimum, an upper estimate of the constant
  double reference = 0.0;    // norm of P_o
  std::size_t sample_count = 0;
  std::size_t rejected = 0;  // samples equal to P_o
  Mat worst_direction;       // P - P_o at the minimum
  std::vector<Mat> degenerate_directions;  // ||D||_w ~ 0 but D != 0
};

/// min over sampled P in the family, P != P_o, of
/// (N(P) - N(P_o)) / N(P - P_o), with N the numerical radius (or the
/// operator norm for kind = operator_norm). Half of the samples are local
/// perturbations of P_o, half are global draws. Throws std::invalid_argument
/// if P_o is not in the family and std::domain_error if no sample has a
/// nondegenerate direction.
UnicityEstimate strong_unicity_estimate(const ProjectionProblem& problem, const Mat& p_o, NormKind kind,
                                        const UnicityOptions& opts = {});

/// The same ratio minimized over an explicit candidate list only, with full
/// inner searches throughout.
UnicityEstimate strong_unicity_from_candidates(const ProjectionProblem& problem, const Mat& p_o, NormKind kind,
                                               const std::vector<Mat>& candidates, const SearchOptions& inner = {});

struct Dim4Construction {
  double lambda = 0.0;
  Vec y;
  Vec z;
  Mat p1;  // x - f(x) y
  Mat p2;  // x - f(x) z
};

/// Closed-form minimal projection constant for V = ker f in l^inf_n, with
/// f = (0, f_2, ..., f_n), f_i > 0, sum f_i = 1, f_i < 1/2, and two distinct
/// minimal projections built from y_i = (lambda - 1) / (1 - 2 f_i).
/// Throws std::invalid_argument naming the violated condition.
Dim4Construction dim4_lambda(const Vec& f);

/// V = ker f in l^inf_n.
ProjectionProblem dim4_problem(const Vec& f);

struct Instance {
  std::string name;
  std::string description;
  ProjectionProblem problem;
  double expected_operator = 0.0;
  double expected_radius = 0.0;
  std::vector<Mat> known_minimizers;
};

/// "example" (l^{4/3}_3), "normone" (l^inf_3, V = ker(x1 + x2)) and "dim4"
/// (l^inf_4, f = (0, 1/3, 1/3, 1/3)).
std::vector<Instance> builtin_instances();

/// Throws std::invalid_argument for an unknown name.
Instance builtin_instance(const std::string& name);

}  // namespace numrad
