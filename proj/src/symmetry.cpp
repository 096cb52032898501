#include "numrad/symmetry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "numrad/linalg.hpp"

namespace numrad {

namespace {

constexpr double kMatchTol = 1e-10;

bool same(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff() <= kMatchTol * (1.0 + a.cwiseAbs().maxCoeff());
}

std::optional<std::size_t> find(const std::vector<Mat>& elements, const Mat& m) {
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (same(elements[k], m)) {
      return k;
    }
  }
  return std::nullopt;
}

double commutator_defect(const Mat& q, const IsometryGroup& g) {
  double worst = 0.0;
  for (const auto& t : g.elements()) {
    worst = std::max(worst, (q * t - t * q).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

IsometryGroup::IsometryGroup(LpSpace space, std::vector<Mat> elements)
    : space_(space), elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw std::invalid_argument("group needs at least one element");
  }
  const auto n = static_cast<Eigen::Index>(space_.dim);
  for (const auto& e : elements_) {
    if (e.rows() != n || e.cols() != n) {
      throw std::invalid_argument("group element shape does not match the space dimension");
    }
  }
  const Mat id = Mat::Identity(n, n);
  identity_ = find(elements_, id);
  inverse_.resize(elements_.size());
  for (std::size_t a = 0; a < elements_.size(); ++a) {
    for (std::size_t b = 0; b < elements_.size(); ++b) {
      if (same(elements_[a] * elements_[b], id)) {
        inverse_[a] = b;
        break;
      }
    }
  }
}

std::size_t IsometryGroup::inverse_index(std::size_t g) const {
  if (g >= inverse_.size() || !inverse_[g]) {
    throw std::logic_error("element " + std::to_string(g) + " has no inverse in the group");
  }
  return *inverse_[g];
}

IsometryGroup cyclic_shift_group(const LpSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dim);
  Mat shift = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    shift((i + 1) % n, i) = 1.0;
  }
  std::vector<Mat> elements;
  Mat power = Mat::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    elements.push_back(power);
    power = shift * power;
  }
  return IsometryGroup(space, std::move(elements));
}

IsometryGroup sign_change_group(const LpSpace& space) {
  const std::size_t n = space.dim;
  if (n > 16) {
    throw std::length_error("sign change group too large");
  }
  std::vector<Mat> elements;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vec d(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      d[static_cast<Eigen::Index>(i)] = (mask >> i) & 1U ? -1.0 : 1.0;
    }
    elements.push_back(d.asDiagonal());
  }
  return IsometryGroup(space, std::move(elements));
}

IsometryGroup trivial_group(const LpSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dim);
  return IsometryGroup(space, {Mat::Identity(n, n)});
}

GroupReport verify_group(const IsometryGroup& g, std::size_t sample_count, std::uint64_t seed) {
  GroupReport r;
  const auto& el = g.elements();
  if (!g.identity_index()) {
    r.passed = false;
    r.axiom = "identity";
    r.detail = "identity matrix is not an element";
    return r;
  }
  for (std::size_t a = 0; a < el.size(); ++a) {
    for (std::size_t b = 0; b < el.size(); ++b) {
      if (!find(el, el[a] * el[b])) {
        r.passed = false;
        r.axiom = "closure";
        r.element = a;
        r.detail = "product of elements " + std::to_string(a) + " and " + std::to_string(b) + " is not an element";
        return r;
      }
    }
  }
  for (std::size_t a = 0; a < el.size(); ++a) {
    try {
      g.inverse_index(a);
    } catch (const std::logic_error&) {
      r.passed = false;
      r.axiom = "inverse";
      r.element = a;
      r.detail = "element " + std::to_string(a) + " has no inverse in the group";
      return r;
    }
  }
  const auto& p = g.space().p;
  const auto samples = sphere_sample(g.space(), std::max<std::size_t>(sample_count, 1), seed);
  for (std::size_t a = 0; a < el.size(); ++a) {
    for (const auto& x : samples) {
      const double nx = lp_norm(x, p);
      const double ngx = lp_norm(el[a] * x, p);
      if (std::abs(ngx - nx) > kMatchTol * (1.0 + nx)) {
        r.passed = false;
        r.axiom = "isometry";
        r.element = a;
        r.detail = "element " + std::to_string(a) + " changes a norm from " + std::to_string(nx) + " to " +
                   std::to_string(ngx);
        return r;
      }
    }
  }
  return r;
}

Mat rudin_average(const Mat& p, const IsometryGroup& g) {
  const auto n = static_cast<Eigen::Index>(g.space().dim);
  if (p.rows() != n || p.cols() != n) {
    throw std::invalid_argument("operator shape does not match the group's space");
  }
  Mat q = Mat::Zero(n, n);
  const auto& el = g.elements();
  for (std::size_t k = 0; k < el.size(); ++k) {
    q += el[g.inverse_index(k)] * p * el[k];
  }
  q /= static_cast<double>(el.size());
  if (commutator_defect(q, g) > 1e-10 * (1.0 + p.cwiseAbs().maxCoeff())) {
    throw std::logic_error("averaged operator does not commute with the group");
  }
  return q;
}

Mat rudin_average(const Mat& p, const IsometryGroup& g, const ProjectionProblem& problem) {
  Mat q = rudin_average(p, g);
  if (problem.contains(p, 1e-10) && !non_invariant_element(g, problem) && !problem.contains(q, 1e-10)) {
    throw std::logic_error("averaged operator left the family");
  }
  return q;
}

std::optional<std::size_t> non_invariant_element(const IsometryGroup& g, const ProjectionProblem& problem) {
  if (!(g.space() == problem.space)) {
    throw std::invalid_argument("group and problem live on different spaces");
  }
  const Mat v = problem.basis_matrix();
  const auto m = static_cast<int>(v.cols());
  const auto& el = g.elements();
  for (std::size_t k = 0; k < el.size(); ++k) {
    Mat both(v.rows(), 2 * v.cols());
    both << v, el[k] * v;
    if (linalg::rank(both, 1e-9) > m) {
      return k;
    }
  }
  return std::nullopt;
}

int commutant_projections_dimension(const IsometryGroup& g, const ProjectionProblem& problem) {
  if (auto bad = non_invariant_element(g, problem)) {
    throw std::invalid_argument("subspace is not invariant under group element " + std::to_string(*bad));
  }
  const Parametrization family = parametrize(problem);
  const auto k = static_cast<Eigen::Index>(family.size());
  if (k == 0) {
    return 0;
  }
  const auto n = static_cast<Eigen::Index>(problem.space.dim);
  const auto& el = g.elements();
  const Eigen::Index block = n * n;
  Mat system(static_cast<Eigen::Index>(el.size()) * block, k + 1);
  for (std::size_t e = 0; e < el.size(); ++e) {
    const Mat& t = el[e];
    const Eigen::Index row = static_cast<Eigen::Index>(e) * block;
    for (Eigen::Index j = 0; j < k; ++j) {
      const Mat& d = family.directions[static_cast<std::size_t>(j)];
      const Mat c = d * t - t * d;
      system.block(row, j, block, 1) = c.reshaped();
    }
    const Mat c0 = family.base * t - t * family.base;
    system.block(row, k, block, 1) = -c0.reshaped();
  }
  const int r = linalg::rank(system.leftCols(k));
  if (linalg::rank(system) != r) {
    throw std::logic_error("no member of the family commutes with the group");
  }
  return static_cast<int>(k) - r;
}

FourierGrid::FourierGrid(int n_, int N_) : n(n_), N(N_) {
  if (n < 0) {
    throw std::invalid_argument("degree n must be nonnegative");
  }
  if (N < 4 * n + 2) {
    throw std::invalid_argument("grid size N must be at least 4n+2");
  }
}

double FourierGrid::node(int i) const { return 2.0 * std::numbers::pi * i / N; }

Mat FourierGrid::basis() const {
  Mat b(N, 2 * n + 1);
  for (int i = 0; i < N; ++i) {
    const double t = node(i);
    b(i, 0) = 1.0;
    for (int m = 1; m <= n; ++m) {
      b(i, 2 * m - 1) = std::cos(m * t);
      b(i, 2 * m) = std::sin(m * t);
    }
  }
  return b;
}

ProjectionProblem FourierGrid::problem() const {
  const Mat b = basis();
  std::vector<Vec> cols;
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    cols.push_back(b.col(j));
  }
  return ProjectionProblem(LpSpace(static_cast<std::size_t>(N), Exponent::infinity()), std::move(cols));
}

namespace {

double kernel(const FourierGrid& grid, int offset) {
  const double t = grid.node(offset);
  double s = 0.5;
  for (int m = 1; m <= grid.n; ++m) {
    s += std::cos(m * t);
  }
  return 2.0 * s / grid.N;
}

}  // namespace

Mat fourier_projection(const FourierGrid& grid) {
  Vec row(grid.N);
  for (int d = 0; d < grid.N; ++d) {
    row[d] = kernel(grid, d);
  }
  Mat m(grid.N, grid.N);
  for (int i = 0; i < grid.N; ++i) {
    for (int j = 0; j < grid.N; ++j) {
      m(i, j) = row[((i - j) % grid.N + grid.N) % grid.N];
    }
  }
  return m;
}

double lebesgue_constant(const FourierGrid& grid) {
  double s = 0.0;
  for (int d = 0; d < grid.N; ++d) {
    s += std::abs(kernel(grid, d));
  }
  return s;
}

LebesgueSweep lebesgue_limit(int n, int start_N, double tol, int max_N) {
  LebesgueSweep out;
  int N = std::max(start_N, 4 * n + 2);
  double prev = lebesgue_constant(FourierGrid(n, N));
  out.history.emplace_back(N, prev);
  while (N <= max_N / 2) {
    N *= 2;
    const double cur = lebesgue_constant(FourierGrid(n, N));
    out.history.emplace_back(N, cur);
    const bool done = std::abs(cur - prev) < tol;
    prev = cur;
    if (done) {
      out.converged = true;
      break;
    }
  }
  out.value = prev;
  out.N = N;
  return out;
}

Mat interpolation_projection(const FourierGrid& grid) {
  const int k = 2 * grid.n + 1;
  const Mat b = grid.basis();
  Mat bs(k, k);
  Mat select = Mat::Zero(k, grid.N);
  for (int s = 0; s < k; ++s) {
    const int idx = static_cast<int>(std::lround(static_cast<double>(s) * grid.N / k)) % grid.N;
    bs.row(s) = b.row(idx);
    select(s, idx) = 1.0;
  }
  return b * linalg::solve(bs, select);
}

IsometryGroup translation_group(const FourierGrid& grid) {
  return cyclic_shift_group(LpSpace(static_cast<std::size_t>(grid.N), Exponent::infinity()));
}

Mat marcinkiewicz_average(const Mat& p, const FourierGrid& grid) {
  const int N = grid.N;
  if (p.rows() != N || p.cols() != N) {
    throw std::invalid_argument("operator shape does not match the grid");
  }
  const Mat b = grid.basis();
  const Mat f = fourier_projection(grid);
  const double scale = 1.0 + p.cwiseAbs().maxCoeff();
  if ((p * b - b).cwiseAbs().maxCoeff() > 1e-8 * scale || (f * p - p).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw std::invalid_argument("operator is not a projection onto grid trigonometric polynomials");
  }
  // (S_{-g} P S_g)_{ij} = P_{i+g, j+g} for the cyclic shift S.
  Mat q = Mat::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      double s = 0.0;
      for (int g = 0; g < N; ++g) {
        s += p((i + g) % N, (j + g) % N);
      }
      q(i, j) = s / N;
    }
  }
  if ((q - f).cwiseAbs().maxCoeff() > 1e-8) {
    throw std::logic_error("translation average differs from the Fourier projection");
  }
  return q;
}

}  // namespace numrad
