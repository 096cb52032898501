#include "numrad/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "numrad/linalg.hpp"

namespace numrad {

namespace {

constexpr std::size_t kMaxEnumerationDim = 20;
constexpr std::size_t kAutoEnumerationDim = 12;
constexpr std::size_t kWarmPoolSize = 8;

double pow_sum(const Vec& z, double p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    s += std::pow(std::abs(z[i]), p);
  }
  return s;
}

bool is_zero(const Mat& m) { return m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0; }

RadiusResult zero_result(const LpSpace& domain, const LpSpace& codomain, NormKind kind) {
  RadiusResult r;
  r.value = 0.0;
  r.witness_x = Vec::Unit(static_cast<Eigen::Index>(domain.dim), 0);
  r.witness_y = kind == NormKind::numerical_radius
                    ? duality_map(r.witness_x, domain.p)
                    : Vec(Vec::Unit(static_cast<Eigen::Index>(codomain.dim), 0));
  r.diagonal = kind == NormKind::numerical_radius;
  r.attained = false;
  r.method = "zero-operator";
  return r;
}

Vec sign_vector(std::uint64_t mask, Eigen::Index n) {
  Vec s(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s[i] = (mask >> i) & 1U ? -1.0 : 1.0;
  }
  return s;
}

double sign_or_one(double v) { return v < 0.0 ? -1.0 : 1.0; }

void require_endomorphism(const Operator& t) {
  if (!t.is_endomorphism()) {
    throw std::invalid_argument("numerical range needs a square operator on a single space");
  }
}

// ---- operator norm -------------------------------------------------------

RadiusResult norm_from_columns(const Operator& t) {
  RadiusResult best;
  best.value = -1.0;
  for (Eigen::Index j = 0; j < t.matrix.cols(); ++j) {
    const Vec col = t.matrix.col(j);
    const double v = lp_norm(col, t.codomain.p);
    if (v > best.value) {
      best.value = v;
      best.witness_x = Vec::Unit(t.matrix.cols(), j);
      best.witness_y = duality_map(col, t.codomain.p);
    }
  }
  best.method = "vertex-enumeration";
  return best;
}

RadiusResult norm_from_sign_vectors(const Operator& t) {
  const Eigen::Index n = t.matrix.cols();
  RadiusResult best;
  best.value = -1.0;
  const std::uint64_t combos = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 0; mask < combos; ++mask) {
    const Vec x = sign_vector(mask << 1, n);
    const Vec tx = t.matrix * x;
    const double v = lp_norm(tx, t.codomain.p);
    if (v > best.value) {
      best.value = v;
      best.witness_x = x;
      best.witness_y = duality_map(tx, t.codomain.p);
    }
  }
  best.method = "vertex-enumeration";
  return best;
}

RadiusResult norm_from_row_sums(const Operator& t) {
  RadiusResult best;
  best.value = -1.0;
  for (Eigen::Index i = 0; i < t.matrix.rows(); ++i) {
    const double v = t.matrix.row(i).cwiseAbs().sum();
    if (v > best.value) {
      best.value = v;
      Vec x(t.matrix.cols());
      for (Eigen::Index j = 0; j < x.size(); ++j) {
        x[j] = sign_or_one(t.matrix(i, j));
      }
      best.witness_x = x;
      best.witness_y = Vec::Unit(t.matrix.rows(), i);
    }
  }
  best.method = "closed-form";
  return best;
}

RadiusResult norm_hilbert(const Operator& t) {
  const Mat gram = t.matrix.transpose() * t.matrix;
  const auto eig = linalg::jacobi_eigen(gram);
  const Eigen::Index last = eig.values.size() - 1;
  RadiusResult r;
  r.witness_x = eig.vectors.col(last);
  const Vec tx = t.matrix * r.witness_x;
  r.value = tx.norm();
  r.witness_y = tx / r.value;
  r.method = "jacobi";
  return r;
}

// ---- numerical radius ----------------------------------------------------

RadiusResult radius_hilbert(const Operator& t) {
  const auto eig = linalg::jacobi_eigen(0.5 * (t.matrix + t.matrix.transpose()));
  const Eigen::Index last = eig.values.size() - 1;
  const Eigen::Index k = std::abs(eig.values[0]) > std::abs(eig.values[last]) ? 0 : last;
  RadiusResult r;
  r.witness_x = eig.vectors.col(k);
  r.witness_y = r.witness_x;
  r.value = std::abs(r.witness_y.dot(t.matrix * r.witness_x));
  r.diagonal = true;
  r.method = "jacobi";
  return r;
}

// p = 1: x = e_j, y_j = 1 and the remaining y_i = s * sign(T_ij).
RadiusResult radius_l1_closed(const Operator& t) {
  const Mat& m = t.matrix;
  RadiusResult best;
  best.value = -1.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double s = sign_or_one(m(j, j));
    Vec y(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      y[i] = i == j ? 1.0 : s * sign_or_one(m(i, j));
    }
    const Vec x = Vec::Unit(m.cols(), j);
    const double v = std::abs(y.dot(m.col(j)));
    if (v > best.value) {
      best = RadiusResult{v, x, y, true, true, "closed-form"};
    }
  }
  return best;
}

// p = inf: y = e_i, x_i = 1 and the remaining x_j = s * sign(T_ij).
RadiusResult radius_linf_closed(const Operator& t) {
  const Mat& m = t.matrix;
  RadiusResult best;
  best.value = -1.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double s = sign_or_one(m(i, i));
    Vec x(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      x[j] = j == i ? 1.0 : s * sign_or_one(m(i, j));
    }
    const double v = std::abs(m.row(i).dot(x));
    const Vec y = Vec::Unit(m.rows(), i);
    if (v > best.value) {
      best = RadiusResult{v, x, y, true, true, "closed-form"};
    }
  }
  return best;
}

// Vertex x of the unit ball, inner maximum over the finite extremal set.
RadiusResult radius_enumerate(const Operator& t) {
  const Eigen::Index n = t.matrix.cols();
  const Exponent& p = t.domain.p;
  std::vector<Vec> vertices;
  if (p.is_one()) {
    for (Eigen::Index j = 0; j < n; ++j) {
      vertices.push_back(Vec::Unit(n, j));
    }
  } else {
    const std::uint64_t combos = std::uint64_t{1} << (n - 1);
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
      vertices.push_back(sign_vector(mask << 1, n));
    }
  }
  RadiusResult best;
  best.value = -1.0;
  for (const auto& x : vertices) {
    const Vec tx = t.matrix * x;
    for (const auto& y : ext_functionals(x, p)) {
      const double v = std::abs(y.dot(tx));
      if (v > best.value) {
        best = RadiusResult{v, x, y, true, true, "vertex-enumeration"};
      }
    }
  }
  return best;
}

RadiusResult sampled(const Operator& t, NormKind kind, const SearchOptions& opts) {
  const auto f = sphere_objective(t.matrix, t.domain, t.codomain, kind);
  search::MultiStartOptions ms;
  ms.random_starts = opts.starts;
  ms.seed = opts.seed;
  const auto res = search::maximize(f, t.domain.dim, ms);
  RadiusResult r = witness_from_point(t.matrix, t.domain, t.codomain, kind, res.best.point);
  r.method = "multi-start";
  return r;
}

}  // namespace

Operator::Operator(Mat m, LpSpace dom, LpSpace cod) : matrix(std::move(m)), domain(dom), codomain(cod) {
  if (matrix.rows() != static_cast<Eigen::Index>(codomain.dim) ||
      matrix.cols() != static_cast<Eigen::Index>(domain.dim)) {
    throw std::invalid_argument("matrix shape does not match domain/codomain dimensions");
  }
}

Operator::Operator(Mat m, LpSpace space) : Operator(std::move(m), space, space) {}

std::string to_string(Method m) {
  switch (m) {
    case Method::automatic:
      return "auto";
    case Method::exact:
      return "exact";
    case Method::sample:
      return "sample";
  }
  return "auto";
}

std::string to_string(NormKind k) { return k == NormKind::operator_norm ? "operator" : "radius"; }

Method parse_method(const std::string& s) {
  if (s == "auto") return Method::automatic;
  if (s == "exact") return Method::exact;
  if (s == "sample") return Method::sample;
  throw std::invalid_argument("unknown method '" + s + "' (expected auto|exact|sample)");
}

NormKind parse_norm_kind(const std::string& s) {
  if (s == "operator") return NormKind::operator_norm;
  if (s == "radius") return NormKind::numerical_radius;
  throw std::invalid_argument("unknown norm kind '" + s + "' (expected operator|radius)");
}

search::SphereObjective sphere_objective(const Mat& t, const LpSpace& domain, const LpSpace& codomain,
                                         NormKind kind) {
  const Exponent pd = domain.p;
  const Exponent pc = codomain.p;
  // Per-objective scratch for T z; objectives are not shared across threads.
  auto tz = std::make_shared<Vec>(t.rows());
  if (kind == NormKind::operator_norm) {
    if (!pd.is_polyhedral() && !pc.is_polyhedral()) {
      return [t, tz, a = pd.value(), b = pc.value()](const Vec& z) {
        tz->noalias() = t * z;
        return std::pow(pow_sum(*tz, b), 1.0 / b) / std::pow(pow_sum(z, a), 1.0 / a);
      };
    }
    return [t, tz, pd, pc](const Vec& z) {
      tz->noalias() = t * z;
      return lp_norm(*tz, pc) / lp_norm(z, pd);
    };
  }
  if (pd.is_two()) {
    return [t, tz](const Vec& z) {
      tz->noalias() = t * z;
      return std::abs(z.dot(*tz)) / z.squaredNorm();
    };
  }
  if (!pd.is_polyhedral()) {
    return [t, tz, p = pd.value()](const Vec& z) {
      tz->noalias() = t * z;
      double num = 0.0;
      double den = 0.0;
      for (Eigen::Index i = 0; i < z.size(); ++i) {
        const double a = std::abs(z[i]);
        if (a == 0.0) {
          continue;
        }
        const double w = std::pow(a, p - 1.0);
        num += std::copysign(w, z[i]) * (*tz)[i];
        den += w * a;
      }
      return std::abs(num) / den;
    };
  }
  return [t, tz, pd](const Vec& z) {
    tz->noalias() = t * z;
    double best = 0.0;
    for (const auto& y : ext_functionals(z, pd)) {
      best = std::max(best, std::abs(y.dot(*tz)));
    }
    return best / lp_norm(z, pd);
  };
}

RadiusResult witness_from_point(const Mat& t, const LpSpace& domain, const LpSpace& codomain, NormKind kind,
                                const Vec& point) {
  RadiusResult r;
  r.witness_x = normalized(point, domain.p);
  const Vec tx = t * r.witness_x;
  if (kind == NormKind::operator_norm) {
    r.value = lp_norm(tx, codomain.p);
    r.witness_y = r.value > 0.0 ? duality_map(tx, codomain.p)
                                : Vec(Vec::Unit(static_cast<Eigen::Index>(codomain.dim), 0));
    r.diagonal = false;
    return r;
  }
  r.value = -1.0;
  for (const auto& y : ext_functionals(r.witness_x, domain.p)) {
    const double v = std::abs(y.dot(tx));
    if (v > r.value) {
      r.value = v;
      r.witness_y = y;
    }
  }
  r.diagonal = true;
  return r;
}

bool has_exact_path(const LpSpace& space, NormKind kind, Method method) {
  (void)kind;
  if (method == Method::sample) {
    return false;
  }
  return space.p.is_two() || space.p.is_polyhedral();
}

RadiusResult operator_norm(const Operator& t, const SearchOptions& opts) {
  if (is_zero(t.matrix)) {
    return zero_result(t.domain, t.codomain, NormKind::operator_norm);
  }
  if (opts.method != Method::sample) {
    const Exponent& pd = t.domain.p;
    if (pd.is_one()) {
      return norm_from_columns(t);
    }
    if (pd.is_infinite()) {
      if (opts.method == Method::automatic && t.codomain.p.is_infinite()) {
        return norm_from_row_sums(t);
      }
      if (t.domain.dim > kMaxEnumerationDim) {
        if (opts.method == Method::exact) {
          throw std::length_error("vertex enumeration too large");
        }
      } else {
        return norm_from_sign_vectors(t);
      }
    }
    if (pd.is_two() && t.codomain.p.is_two()) {
      return norm_hilbert(t);
    }
    if (opts.method == Method::exact) {
      throw std::invalid_argument("no exact operator-norm method for p = " + pd.to_string());
    }
  }
  return sampled(t, NormKind::operator_norm, opts);
}

RadiusResult numerical_radius(const Operator& t, const SearchOptions& opts) {
  require_endomorphism(t);
  if (is_zero(t.matrix)) {
    return zero_result(t.domain, t.codomain, NormKind::numerical_radius);
  }
  if (opts.method != Method::sample) {
    const Exponent& p = t.domain.p;
    if (p.is_two()) {
      return radius_hilbert(t);
    }
    if (p.is_polyhedral()) {
      if (opts.method == Method::automatic && t.domain.dim > kAutoEnumerationDim) {
        return p.is_one() ? radius_l1_closed(t) : radius_linf_closed(t);
      }
      if (t.domain.dim > kMaxEnumerationDim) {
        throw std::length_error("vertex enumeration too large");
      }
      return radius_enumerate(t);
    }
    if (opts.method == Method::exact) {
      throw std::invalid_argument("no exact numerical-radius method for p = " + p.to_string());
    }
  }
  return sampled(t, NormKind::numerical_radius, opts);
}

RadiusResult evaluate(const Operator& t, NormKind kind, const SearchOptions& opts) {
  return kind == NormKind::operator_norm ? operator_norm(t, opts) : numerical_radius(t, opts);
}

std::vector<double> numerical_range_sample(const Operator& t, std::size_t count, std::uint64_t seed) {
  require_endomorphism(t);
  std::vector<double> out;
  for (const auto& x : sphere_sample(t.domain, count, seed)) {
    const Vec tx = t.matrix * x;
    for (const auto& y : ext_functionals(x, t.domain.p)) {
      out.push_back(y.dot(tx) / y.dot(x));
    }
  }
  return out;
}

IndexEstimate numerical_index_estimate(const LpSpace& space, std::size_t trials, std::uint64_t seed,
                                       const std::vector<Mat>& extra) {
  if (trials == 0) {
    throw std::invalid_argument("numerical index estimate needs at least one trial");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(space.dim);
  std::vector<Mat> candidates = extra;
  for (std::size_t k = 0; k < trials; ++k) {
    Mat m(n, n);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      m.data()[i] = gauss(rng);
    }
    candidates.push_back(std::move(m));
  }
  IndexEstimate est;
  est.value = std::numeric_limits<double>::infinity();
  SearchOptions opts;
  opts.seed = seed;
  for (const auto& m : candidates) {
    const Operator t(m, space);
    const double nrm = operator_norm(t, opts).value;
    if (nrm == 0.0) {
      continue;
    }
    const double ratio = numerical_radius(t, opts).value / nrm;
    if (ratio < est.value) {
      est.value = ratio;
      est.worst = m / nrm;
    }
    ++est.trials;
  }
  return est;
}

// ---- warm-started evaluator ----------------------------------------------

NormEvaluator::NormEvaluator(LpSpace space, NormKind kind, SearchOptions opts, int warm_random_starts)
    : space_(space),
      kind_(kind),
      opts_(opts),
      warm_random_(warm_random_starts),
      exact_(has_exact_path(space, kind, opts.method)),
      rng_(opts.seed ^ 0x9E3779B97F4A7C15ULL) {}

void NormEvaluator::absorb(const std::vector<search::LocalMax>& maxima) {
  auto sorted = maxima;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const search::LocalMax& a, const search::LocalMax& b) { return a.value > b.value; });
  auto kept = search::distinct(sorted, 1e-6);
  if (kept.size() > kWarmPoolSize) {
    kept.resize(kWarmPoolSize);
  }
  pool_.clear();
  for (auto& k : kept) {
    pool_.push_back(std::move(k.point));
  }
}

double NormEvaluator::value(const Mat& t) {
  if (exact_) {
    ++evaluations_;
    return evaluate(Operator(t, space_), kind_, opts_).value;
  }
  if (pool_.empty()) {
    return full(t).value;
  }
  const auto f = sphere_objective(t, space_, space_, kind_);
  search::AscentOptions warm;
  warm.initial_step = 0.005;
  std::vector<search::LocalMax> found;
  double best = 0.0;
  for (const auto& start : pool_) {
    auto lm = search::ascend(f, start, warm);
    evaluations_ += static_cast<std::size_t>(lm.evaluations);
    best = std::max(best, lm.value);
    found.push_back(std::move(lm));
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 0; k < warm_random_; ++k) {
    Vec g(static_cast<Eigen::Index>(space_.dim));
    for (auto& v : g) {
      v = gauss(rng_);
    }
    auto lm = search::ascend(f, g, search::AscentOptions{});
    evaluations_ += static_cast<std::size_t>(lm.evaluations);
    best = std::max(best, lm.value);
    found.push_back(std::move(lm));
  }
  if (!frozen_) {
    absorb(found);
  }
  return best;
}

RadiusResult NormEvaluator::full(const Mat& t) {
  const Operator op(t, space_);
  if (exact_) {
    ++evaluations_;
    return evaluate(op, kind_, opts_);
  }
  const auto f = sphere_objective(t, space_, space_, kind_);
  search::MultiStartOptions ms;
  ms.random_starts = opts_.starts;
  ms.seed = opts_.seed;
  const auto res = search::maximize(f, space_.dim, ms, pool_);
  evaluations_ += static_cast<std::size_t>(res.evaluations);
  absorb(res.local_maxima);
  RadiusResult r = witness_from_point(t, space_, space_, kind_, res.best.point);
  r.method = "multi-start";
  return r;
}

}  // namespace numrad
