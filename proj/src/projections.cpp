#include "numrad/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "numrad/linalg.hpp"
#include "numrad/nelder_mead.hpp"
#include "numrad/simplex_lp.hpp"

namespace numrad {

ProjectionProblem::ProjectionProblem(LpSpace space_, std::vector<Vec> v_basis_, std::optional<Mat> restriction_)
    : space(space_), v_basis(std::move(v_basis_)) {
  if (v_basis.empty()) {
    throw std::invalid_argument("v_basis must contain at least one vector");
  }
  for (const auto& v : v_basis) {
    if (v.size() != static_cast<Eigen::Index>(space.dim)) {
      throw std::invalid_argument("v_basis vector length does not match the space dimension");
    }
  }
  const auto m = static_cast<Eigen::Index>(v_basis.size());
  if (linalg::rank(basis_matrix()) != m) {
    throw std::invalid_argument("v_basis is linearly dependent");
  }
  restriction = restriction_.value_or(Mat::Identity(m, m));
  if (restriction.rows() != m || restriction.cols() != m) {
    throw std::invalid_argument("restriction must be a square matrix of size dim V");
  }
}

Mat ProjectionProblem::basis_matrix() const {
  return linalg::columns(v_basis, static_cast<Eigen::Index>(space.dim));
}

bool ProjectionProblem::contains(const Mat& p, double tol) const {
  const Mat v = basis_matrix();
  if (p.rows() != v.rows() || p.cols() != v.rows()) {
    return false;
  }
  const Mat diff = p * v - v * restriction;
  return diff.cwiseAbs().maxCoeff() <= tol * (1.0 + v.cwiseAbs().maxCoeff());
}

Mat Parametrization::at(const Vec& theta) const {
  if (theta.size() != static_cast<Eigen::Index>(directions.size())) {
    throw std::invalid_argument("parameter vector length does not match the family");
  }
  Mat p = base;
  for (std::size_t k = 0; k < directions.size(); ++k) {
    p += theta[static_cast<Eigen::Index>(k)] * directions[k];
  }
  return p;
}

std::vector<Vec> annihilator_basis(const ProjectionProblem& problem) {
  const Mat vt = problem.basis_matrix().transpose();
  return linalg::null_space(vt);
}

Parametrization parametrize(const ProjectionProblem& problem) {
  const Mat v = problem.basis_matrix();
  const Mat gram = v.transpose() * v;
  const Mat left_inverse = gram.ldlt().solve(v.transpose());
  Parametrization out;
  out.base = v * problem.restriction * left_inverse;
  for (const auto& delta : annihilator_basis(problem)) {
    for (const auto& vj : problem.v_basis) {
      out.directions.push_back(vj * delta.transpose());
    }
  }
  return out;
}

MinimalProjection minimal_projection(const ProjectionProblem& problem, NormKind kind, const MinimizerOptions& opts) {
  const Parametrization family = parametrize(problem);
  NormEvaluator evaluator(problem.space, kind, opts.inner);
  MinimalProjection out;
  out.kind = kind;
  if (family.size() == 0) {
    out.theta = Vec(0);
    out.op = family.base;
    out.value = evaluator.full(family.base).value;
    out.converged = true;
    out.inner_evaluations = evaluator.evaluations();
    return out;
  }

  const auto k = static_cast<Eigen::Index>(family.size());
  evaluator.full(family.base);
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto objective = [&](const Vec& theta) { return evaluator.value(family.at(theta)); };

  search::NelderMeadOptions nm;
  nm.initial_step = opts.initial_step;
  nm.tolerance = opts.shrink_tolerance;
  nm.max_evaluations = opts.budget;

  bool have = false;
  for (int r = 0; r < opts.restarts; ++r) {
    Vec start = Vec::Zero(k);
    if (r > 0) {
      for (auto& t : start) {
        t = opts.restart_spread * gauss(rng);
      }
    }
    auto res = search::nelder_mead(objective, start, nm);
    double verified = evaluator.full(family.at(res.x)).value;
    // A larger global value means the warm pool missed a maximizer; the pool
    // now holds it, so polish again from the same point.
    for (int again = 0; again < 3 && verified > res.value + 1e-12; ++again) {
      search::NelderMeadOptions polish = nm;
      polish.initial_step = std::max(10.0 * nm.tolerance, 0.1 * nm.initial_step);
      auto next = search::nelder_mead(objective, res.x, polish);
      next.evaluations += res.evaluations;
      res = next;
      verified = evaluator.full(family.at(res.x)).value;
    }
    if (!have || verified < out.value) {
      have = true;
      out.value = verified;
      out.theta = res.x;
      out.converged = res.converged;
      out.best_restart = r;
    }
  }
  out.op = family.at(out.theta);
  out.inner_evaluations = evaluator.evaluations();
  return out;
}

Mat ExtremalPair::signed_rank_one() const {
  const double s = value < 0.0 ? -1.0 : 1.0;
  return s * x * y.transpose();
}

namespace {

void add_pair(std::vector<ExtremalPair>& pairs, ExtremalPair cand, double radius) {
  for (const auto& kept : pairs) {
    const double dx = std::min((cand.x - kept.x).cwiseAbs().maxCoeff(), (cand.x + kept.x).cwiseAbs().maxCoeff());
    const double dy = std::min((cand.y - kept.y).cwiseAbs().maxCoeff(), (cand.y + kept.y).cwiseAbs().maxCoeff());
    if (dx < radius && dy < radius) {
      return;
    }
  }
  pairs.push_back(std::move(cand));
}

}  // namespace

PairSearchResult extremal_pairs(const Mat& p, const ProjectionProblem& problem, NormKind kind,
                                const PairSearchOptions& opts) {
  if (!problem.contains(p, 1e-8)) {
    throw std::invalid_argument("operator is not a member of the problem's family");
  }
  const LpSpace& space = problem.space;
  const Operator op(p, space);
  PairSearchResult out;
  const bool diagonal = kind == NormKind::numerical_radius;

  std::vector<ExtremalPair> candidates;
  if (space.p.is_polyhedral()) {
    SearchOptions exact;
    exact.method = Method::automatic;
    out.reference = evaluate(op, kind, exact).value;
    for (const auto& x : sphere_vertices(space, 20, true)) {
      const Vec px = p * x;
      if (diagonal) {
        for (const auto& y : ext_functionals(x, space.p)) {
          candidates.push_back({x, y, y.dot(px), true});
        }
      } else if (lp_norm(px, space.p) > 0.0) {
        for (const auto& y : ext_functionals(px, space.p)) {
          candidates.push_back({x, y, y.dot(px), false});
        }
      }
    }
  } else {
    const auto f = sphere_objective(p, space, space, kind);
    search::MultiStartOptions ms;
    ms.random_starts = opts.starts;
    ms.seed = opts.seed;
    const auto res = search::maximize(f, space.dim, ms);
    out.reference = res.best.value;
    if (space.p.is_two()) {
      out.reference = std::max(out.reference, evaluate(op, kind).value);
    }
    for (const auto& lm : res.local_maxima) {
      const RadiusResult w = witness_from_point(p, space, space, kind, lm.point);
      candidates.push_back({w.witness_x, w.witness_y, w.witness_y.dot(p * w.witness_x), diagonal});
    }
  }
  for (auto& c : candidates) {
    if (std::abs(c.value) >= out.reference - opts.tol) {
      add_pair(out.pairs, std::move(c), opts.dedup_radius);
    }
  }
  out.empty_flag = out.pairs.empty();
  return out;
}

Certificate invariance_certificate(const std::vector<ExtremalPair>& pairs, const ProjectionProblem& problem,
                                   double tol) {
  if (pairs.empty()) {
    throw std::invalid_argument("invariance certificate needs at least one extremal pair");
  }
  const Exponent& p = problem.space.p;
  const Exponent q = p.dual();
  std::vector<Vec> basis;
  for (const auto& v : problem.v_basis) {
    basis.push_back(normalized(v, p));
  }
  std::vector<Vec> annihilators;
  for (const auto& d : annihilator_basis(problem)) {
    annihilators.push_back(normalized(d, q));
  }
  const auto n_pairs = static_cast<Eigen::Index>(pairs.size());
  const auto rows = static_cast<Eigen::Index>(basis.size() * annihilators.size());

  // Coefficient of weight j in delta_l(E v_k).
  Mat coeff(rows, n_pairs);
  for (Eigen::Index j = 0; j < n_pairs; ++j) {
    const auto& pr = pairs[static_cast<std::size_t>(j)];
    const double s = pr.value < 0.0 ? -1.0 : 1.0;
    Eigen::Index r = 0;
    for (const auto& v : basis) {
      for (const auto& d : annihilators) {
        coeff(r++, j) = s * pr.y.dot(v) * d.dot(pr.x);
      }
    }
  }
  // Variables (lambda_1..lambda_J, t): minimize t subject to |coeff lambda| <= t, sum lambda = 1.
  const Eigen::Index nv = n_pairs + 1;
  Vec cost = Vec::Zero(nv);
  cost[n_pairs] = 1.0;
  Mat a_eq = Mat::Zero(1, nv);
  a_eq.block(0, 0, 1, n_pairs).setOnes();
  Vec b_eq = Vec::Ones(1);
  Mat a_le = Mat::Zero(2 * rows, nv);
  for (Eigen::Index r = 0; r < rows; ++r) {
    a_le.block(r, 0, 1, n_pairs) = coeff.row(r);
    a_le(r, n_pairs) = -1.0;
    a_le.block(rows + r, 0, 1, n_pairs) = -coeff.row(r);
    a_le(rows + r, n_pairs) = -1.0;
  }
  const Vec b_le = Vec::Zero(2 * rows);
  const auto sol = lp::minimize(cost, a_eq, b_eq, a_le, b_le);
  if (sol.status != lp::Status::optimal) {
    throw std::runtime_error("certificate LP failed to reach optimality");
  }

  Certificate cert;
  const auto n = static_cast<Eigen::Index>(problem.space.dim);
  cert.combination = Mat::Zero(n, n);
  double total = 0.0;
  for (Eigen::Index j = 0; j < n_pairs; ++j) {
    total += std::max(0.0, sol.x[j]);
  }
  for (Eigen::Index j = 0; j < n_pairs; ++j) {
    const double w = std::max(0.0, sol.x[j]) / total;
    cert.weights.push_back(w);
    cert.combination += w * pairs[static_cast<std::size_t>(j)].signed_rank_one();
  }
  cert.residual = 0.0;
  for (const auto& v : basis) {
    cert.residual = std::max(cert.residual, linalg::distance_to_span(cert.combination * v, basis, p));
  }
  cert.feasible = cert.residual <= tol;
  return cert;
}

}  // namespace numrad
