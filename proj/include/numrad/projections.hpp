#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "numrad/lpspace.hpp"
#include "numrad/operators.hpp"

namespace numrad {

/// The affine family P_A(X, V) = {P : X -> V linear, P|_V = A}, where A acts
/// on coordinates with respect to v_basis (A = identity gives the
/// projections onto V).
struct ProjectionProblem {
  /// Throws std::invalid_argument if the basis is empty, of the wrong
  /// length, linearly dependent, or the restriction has the wrong shape.
  ProjectionProblem(LpSpace space, std::vector<Vec> v_basis, std::optional<Mat> restriction = std::nullopt);

  LpSpace space;
  std::vector<Vec> v_basis;
  Mat restriction;

  std::size_t subspace_dim() const { return v_basis.size(); }
  Mat basis_matrix() const;
  /// Matrix identity P V = V A, the defining constraint of the family.
  bool contains(const Mat& p, double tol = 1e-9) const;
};

/// base + sum_k theta_k directions[k]; every direction vanishes on V.
struct Parametrization {
  Mat base;
  std::vector<Mat> directions;

  std::size_t size() const { return directions.size(); }
  Mat at(const Vec& theta) const;
};

/// Basis of V^perp = {y : y(v) = 0 for all v in V}.
std::vector<Vec> annihilator_basis(const ProjectionProblem& problem);

/// base = V A L with L the pseudo-inverse of the basis matrix; directions are
/// the rank-one maps v_j delta_l^T, ordered by annihilator then basis vector.
Parametrization parametrize(const ProjectionProblem& problem);

struct MinimizerOptions {
  int restarts = 32;
  double shrink_tolerance = 1e-8;
  int budget = 10000;         // inner norm evaluations per restart
  double initial_step = 0.1;
  double restart_spread = 0.5;
  std::uint64_t seed = 0;
  SearchOptions inner;
};

struct MinimalProjection {
  Mat op;
  Vec theta;
  double value = 0.0;
  bool converged = false;
  NormKind kind = NormKind::operator_norm;
  int best_restart = 0;
  std::size_t inner_evaluations = 0;
};

/// Minimizes the chosen norm over the family by Nelder-Mead restarts on the
/// parameters with warm-started inner evaluation; the reported value comes
/// from a full global inner search at the returned operator.
MinimalProjection minimal_projection(const ProjectionProblem& problem, NormKind kind,
                                     const MinimizerOptions& opts = {});

/// A unit vector and a unit functional attaining the norm (or, when
/// diagonal, the numerical radius with y(x) = 1). value = y(P x) is signed.
struct ExtremalPair {
  Vec x;
  Vec y;
  double value = 0.0;
  bool diagonal = false;

  /// sign(value) * (y (x) x): z -> sign(value) <z, y> x.
  Mat signed_rank_one() const;
};

struct PairSearchOptions {
  double tol = 1e-6;
  int starts = 256;
  std::uint64_t seed = 0;
  double dedup_radius = 1e-4;
};

struct PairSearchResult {
  std::vector<ExtremalPair> pairs;
  double reference = 0.0;  // the norm or radius the pairs are measured against
  bool empty_flag = false;
};

/// Pairs whose |value| is within tol of the norm (operator kind) or the
/// numerical radius (radius kind). Throws std::invalid_argument if P is not
/// in the family of the problem.
PairSearchResult extremal_pairs(const Mat& p, const ProjectionProblem& problem, NormKind kind,
                                const PairSearchOptions& opts = {});

struct Certificate {
  bool feasible = false;
  std::vector<double> weights;  // convex weights over the pair list
  double residual = 0.0;        // max_k dist(E v_k, V) for unit basis vectors v_k
  Mat combination;              // E = sum_j weights_j * pairs[j].signed_rank_one()
};

/// Searches the convex hull of the pairs' rank-one operators for one that
/// maps V into V, by a linear program over the weights.
/// Throws std::invalid_argument for an empty pair list.
Certificate invariance_certificate(const std::vector<ExtremalPair>& pairs, const ProjectionProblem& problem,
                                   double tol);

}  // namespace numrad
