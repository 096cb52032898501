#include "numrad/unicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "numrad/linalg.hpp"

namespace numrad {

namespace {

constexpr double kDegenerate = 1e-10;

struct Sample {
  Mat p;
  Mat delta;
  double ratio = 0.0;
};

struct Tally {
  std::vector<Sample> kept;
  std::size_t rejected = 0;
  std::vector<Mat> degenerate;
};

bool is_zero(const Mat& delta, const Mat& p_o) {
  return delta.cwiseAbs().maxCoeff() <= 1e-14 * (1.0 + p_o.cwiseAbs().maxCoeff());
}

// Sorts one candidate into kept / rejected / degenerate.
void classify(Tally& t, Mat p, Mat delta, double num, double den, const LpSpace& space, const SearchOptions& inner) {
  if (den < kDegenerate) {
    const double size = operator_norm(Operator(delta, space), inner).value;
    if (size > 1e-6) {
      t.degenerate.push_back(std::move(delta));
    } else {
      ++t.rejected;
    }
    return;
  }
  t.kept.push_back({std::move(p), std::move(delta), num / den});
}

UnicityEstimate finish(Tally& t, double reference) {
  if (t.kept.empty()) {
    throw std::domain_error("no valid sample directions");
  }
  UnicityEstimate out;
  out.reference = reference;
  out.rejected = t.rejected;
  out.degenerate_directions = std::move(t.degenerate);
  out.sample_count = t.kept.size();
  std::size_t best = 0;
  for (std::size_t k = 1; k < t.kept.size(); ++k) {
    if (t.kept[k].ratio < t.kept[best].ratio) {
      best = k;
    }
  }
  out.r_hat = t.kept[best].ratio;
  out.worst_direction = t.kept[best].delta;
  return out;
}

}  // namespace

UnicityEstimate strong_unicity_estimate(const ProjectionProblem& problem, const Mat& p_o, NormKind kind,
                                        const UnicityOptions& opts) {
  if (!problem.contains(p_o, 1e-8)) {
    throw std::invalid_argument("P_o is not a member of the problem's family");
  }
  const Parametrization family = parametrize(problem);
  const auto k = static_cast<Eigen::Index>(family.size());
  if (k == 0) {
    throw std::domain_error("no valid sample directions");
  }
  const LpSpace& space = problem.space;

  NormEvaluator numerator(space, kind, opts.inner);
  const double reference = numerator.full(p_o).value;
  numerator.freeze_pool(true);
  NormEvaluator denominator(space, kind, opts.inner);

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_lo = std::log10(opts.min_radius);
  const double log_hi = std::log10(opts.max_radius);

  std::vector<Mat> candidates;
  candidates.reserve(opts.samples + opts.extra.size());
  for (const auto& e : opts.extra) {
    if (!problem.contains(e, 1e-8)) {
      throw std::invalid_argument("extra candidate is not a member of the problem's family");
    }
    candidates.push_back(e);
  }
  for (std::size_t s = 0; s < opts.samples; ++s) {
    Vec theta(k);
    for (auto& v : theta) {
      v = gauss(rng);
    }
    if (s % 2 == 0) {
      const double r = std::pow(10.0, log_lo + (log_hi - log_lo) * unit(rng));
      const double len = theta.norm();
      Mat delta = Mat::Zero(p_o.rows(), p_o.cols());
      for (Eigen::Index j = 0; j < k; ++j) {
        delta += (r * theta[j] / len) * family.directions[static_cast<std::size_t>(j)];
      }
      candidates.push_back(p_o + delta);
    } else {
      candidates.push_back(family.at(opts.global_spread * theta));
    }
  }

  // Screen with warm-started evaluations, then re-evaluate the smallest
  // ratios with full searches.
  Tally screened;
  for (auto& p : candidates) {
    Mat delta = p - p_o;
    if (is_zero(delta, p_o)) {
      ++screened.rejected;
      continue;
    }
    const double num = numerator.value(p) - reference;
    const double den = denominator.value(delta);
    classify(screened, std::move(p), std::move(delta), num, den, space, opts.inner);
  }
  std::vector<std::size_t> order(screened.kept.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  const std::size_t top = std::min(opts.verify_top, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                    [&](std::size_t a, std::size_t b) { return screened.kept[a].ratio < screened.kept[b].ratio; });
  NormEvaluator check(space, kind, opts.inner);
  Tally verified;
  verified.rejected = screened.rejected;
  verified.degenerate = std::move(screened.degenerate);
  std::vector<bool> replaced(screened.kept.size(), false);
  for (std::size_t i = 0; i < top; ++i) {
    Sample& s = screened.kept[order[i]];
    const double num = check.full(s.p).value - reference;
    const double den = check.full(s.delta).value;
    replaced[order[i]] = true;
    classify(verified, s.p, s.delta, num, den, space, opts.inner);
  }
  for (std::size_t i = 0; i < screened.kept.size(); ++i) {
    if (!replaced[i]) {
      verified.kept.push_back(std::move(screened.kept[i]));
    }
  }
  UnicityEstimate out = finish(verified, reference);
  return out;
}

UnicityEstimate strong_unicity_from_candidates(const ProjectionProblem& problem, const Mat& p_o, NormKind kind,
                                               const std::vector<Mat>& candidates, const SearchOptions& inner) {
  if (!problem.contains(p_o, 1e-8)) {
    throw std::invalid_argument("P_o is not a member of the problem's family");
  }
  const LpSpace& space = problem.space;
  NormEvaluator eval(space, kind, inner);
  const double reference = eval.full(p_o).value;
  Tally t;
  for (const auto& p : candidates) {
    if (!problem.contains(p, 1e-8)) {
      throw std::invalid_argument("candidate is not a member of the problem's family");
    }
    Mat delta = p - p_o;
    if (is_zero(delta, p_o)) {
      ++t.rejected;
      continue;
    }
    const double num = eval.full(p).value - reference;
    const double den = eval.full(delta).value;
    classify(t, p, std::move(delta), num, den, space, inner);
  }
  return finish(t, reference);
}

Dim4Construction dim4_lambda(const Vec& f) {
  const Eigen::Index n = f.size();
  if (n < 3) {
    throw std::invalid_argument("f must have at least 3 coordinates");
  }
  if (f[0] != 0.0) {
    throw std::invalid_argument("f_1 must be 0");
  }
  double sum = 0.0;
  double s = 0.0;
  for (Eigen::Index i = 1; i < n; ++i) {
    if (!(f[i] > 0.0)) {
      throw std::invalid_argument("f_" + std::to_string(i + 1) + " must be positive");
    }
    if (!(f[i] < 0.5)) {
      throw std::invalid_argument("f_" + std::to_string(i + 1) + " must be below 1/2");
    }
    sum += f[i];
    s += f[i] / (1.0 - 2.0 * f[i]);
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("coordinates of f must sum to 1");
  }
  Dim4Construction out;
  out.lambda = 1.0 + 1.0 / s;
  out.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.y[i] = (out.lambda - 1.0) / (1.0 - 2.0 * f[i]);
  }
  out.z = out.y;
  out.z[0] = 0.0;
  const Mat id = Mat::Identity(n, n);
  out.p1 = id - out.y * f.transpose();
  out.p2 = id - out.z * f.transpose();
  return out;
}

ProjectionProblem dim4_problem(const Vec& f) {
  const Mat row = f.transpose();
  return ProjectionProblem(LpSpace(static_cast<std::size_t>(f.size()), Exponent::infinity()), linalg::null_space(row));
}

std::vector<Instance> builtin_instances() {
  std::vector<Instance> out;
  {
    Vec v1(3), v2(3);
    v1 << 1.0, 1.0, 1.0;
    v2 << -1.0, 0.0, 1.0;
    ProjectionProblem pr(LpSpace(3, Exponent::parse("4/3")), {v1, v2});
    out.push_back({"example", "l^{4/3}_3 onto span{(1,1,1), (-1,0,1)}; norm and radius minimizers differ", pr,
                   1.05251, 1.02751, {}});
  }
  {
    Vec v1(3), v2(3);
    v1 << 1.0, -1.0, 0.0;
    v2 << 0.0, 0.0, 1.0;
    ProjectionProblem pr(LpSpace(3, Exponent::infinity()), {v1, v2});
    Vec f(3);
    f << 1.0, 1.0, 0.0;
    const Mat id = Mat::Identity(3, 3);
    const Mat p1 = id - Vec::Unit(3, 0) * f.transpose();
    const Mat p2 = id - Vec::Unit(3, 1) * f.transpose();
    out.push_back({"normone", "l^inf_3 onto ker(x1 + x2); two distinct minimal projections of norm 1", pr, 1.0,
                   1.0, {p1, p2}});
  }
  {
    Vec f(4);
    f << 0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0;
    const auto c = dim4_lambda(f);
    out.push_back({"dim4", "l^inf_4 onto ker f, f = (0, 1/3, 1/3, 1/3); two distinct minimal projections",
                   dim4_problem(f), c.lambda, c.lambda, {c.p1, c.p2}});
  }
  return out;
}

Instance builtin_instance(const std::string& name) {
  for (auto& inst : builtin_instances()) {
    if (inst.name == name) {
      return inst;
    }
  }
  throw std::invalid_argument("unknown instance '" + name + "' (expected example, normone or dim4)");
}

}  // namespace numrad
