#include "numrad/acceptance.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "numrad/operators.hpp"
#include "numrad/projections.hpp"
#include "numrad/symmetry.hpp"
#include "numrad/unicity.hpp"

namespace numrad {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

json matrix_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      r.push_back(m(i, j));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

Mat gaussian_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = g(rng);
    }
  }
  return m;
}

Vec gaussian_vector(std::mt19937_64& rng, Eigen::Index n) {
  return gaussian_matrix(rng, n, 1).col(0);
}

Mat right_shift(Eigen::Index n) {
  Mat s = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    s(i + 1, i) = 1.0;
  }
  return s;
}

// Minimizers of the built-in example, shared by criteria 2, 7 and 8.
struct ExampleRun {
  Instance inst = builtin_instance("example");
  MinimalProjection by_norm;
  MinimalProjection by_radius;
  double seconds = 0.0;
};

template <class F>
CriterionOutcome timed(int id, std::string title, double limit, F&& body) {
  CriterionOutcome c;
  c.id = id;
  c.title = std::move(title);
  c.time_limit = limit;
  const auto t0 = Clock::now();
  body(c);
  c.seconds += std::chrono::duration<double>(Clock::now() - t0).count();
  return c;
}

CriterionOutcome shift_radius(std::uint64_t seed) {
  return timed(1, "shift operator numerical radius equals cos(pi/(n+1))", 1.0, [&](CriterionOutcome& c) {
    bool ok = true;
    json rows = json::array();
    for (Eigen::Index n = 2; n <= 8; ++n) {
      const Operator t(right_shift(n), LpSpace(static_cast<std::size_t>(n), Exponent(2.0)));
      const double expected = std::cos(std::numbers::pi / static_cast<double>(n + 1));
      SearchOptions fast;
      fast.seed = seed;
      SearchOptions general;
      general.method = Method::sample;
      general.seed = seed;
      const double a = numerical_radius(t, fast).value;
      const double b = numerical_radius(t, general).value;
      const bool row_ok = std::abs(a - expected) <= 1e-6 && std::abs(b - expected) <= 1e-4;
      ok = ok && row_ok;
      rows.push_back({{"n", n}, {"expected", expected}, {"jacobi", a}, {"multi_start", b}, {"ok", row_ok}});
    }
    c.passed = ok;
    c.measured = {{"rows", rows}};
  });
}

CriterionOutcome example_regression(ExampleRun& ex, std::uint64_t seed) {
  return timed(2, "example minimal norm and minimal radius", 60.0, [&](CriterionOutcome& c) {
    MinimizerOptions opts;
    opts.seed = seed;
    opts.inner.seed = seed;
    ex.by_norm = minimal_projection(ex.inst.problem, NormKind::operator_norm, opts);
    ex.by_radius = minimal_projection(ex.inst.problem, NormKind::numerical_radius, opts);
    const double diff = (ex.by_norm.op - ex.by_radius.op).cwiseAbs().maxCoeff();
    const bool norm_ok = std::abs(ex.by_norm.value - ex.inst.expected_operator) <= 2e-3;
    const bool radius_ok = std::abs(ex.by_radius.value - ex.inst.expected_radius) <= 2e-3;
    const bool apart = diff > 1e-2;
    c.passed = norm_ok && radius_ok && apart;
    c.measured = {{"minimal_norm", ex.by_norm.value},
                  {"expected_norm", ex.inst.expected_operator},
                  {"minimal_radius", ex.by_radius.value},
                  {"expected_radius", ex.inst.expected_radius},
                  {"minimizer_max_norm_difference", diff},
                  {"norm_ok", norm_ok},
                  {"radius_ok", radius_ok},
                  {"minimizers_apart", apart},
                  {"norm_minimizer", matrix_json(ex.by_norm.op)},
                  {"radius_minimizer", matrix_json(ex.by_radius.op)}};
  });
}

ProjectionProblem random_problem(std::mt19937_64& rng, const Exponent& p) {
  std::uniform_int_distribution<int> pick(1, 2);
  const int m = pick(rng);
  std::vector<Vec> basis;
  for (int k = 0; k < m; ++k) {
    basis.push_back(gaussian_vector(rng, 3));
  }
  return ProjectionProblem(LpSpace(3, p), std::move(basis));
}

CriterionOutcome coincidence(std::uint64_t seed) {
  return timed(3, "minimal norm and minimal radius coincide on l^1, l^inf; equal 1 on l^2", 0.0,
               [&](CriterionOutcome& c) {
                 std::mt19937_64 rng(seed + 3);
                 bool ok = true;
                 double worst_gap = 0.0;
                 double worst_hilbert = 0.0;
                 json rows = json::array();
                 const std::vector<std::pair<std::string, int>> plan = {{"1", 20}, {"inf", 20}, {"2", 5}};
                 for (const auto& [p, count] : plan) {
                   const Exponent e = Exponent::parse(p);
                   for (int i = 0; i < count; ++i) {
                     const ProjectionProblem pr = random_problem(rng, e);
                     MinimizerOptions opts;
                     opts.seed = seed + static_cast<std::uint64_t>(i);
                     const double a = minimal_projection(pr, NormKind::operator_norm, opts).value;
                     const double b = minimal_projection(pr, NormKind::numerical_radius, opts).value;
                     bool row_ok = std::abs(a - b) <= 2e-3;
                     worst_gap = std::max(worst_gap, std::abs(a - b));
                     if (e.is_two()) {
                       const double h = std::max(std::abs(a - 1.0), std::abs(b - 1.0));
                       worst_hilbert = std::max(worst_hilbert, h);
                       row_ok = h <= 1e-6;
                     }
                     ok = ok && row_ok;
                     rows.push_back({{"p", p}, {"dim_v", pr.subspace_dim()}, {"norm", a}, {"radius", b}, {"ok", row_ok}});
                   }
                 }
                 c.passed = ok;
                 c.measured = {{"max_gap", worst_gap}, {"max_hilbert_deviation", worst_hilbert}, {"problems", rows}};
               });
}

CriterionOutcome seminorm_invariants(std::uint64_t seed) {
  return timed(4, "dominance, homogeneity, triangle inequality, numerical index 1", 0.0, [&](CriterionOutcome& c) {
    std::mt19937_64 rng(seed + 4);
    std::uniform_real_distribution<double> alpha_dist(-3.0, 3.0);
    const std::vector<std::string> exps = {"1", "4/3", "2", "4", "inf"};
    bool ok = true;
    int failures = 0;
    double dominance = -1e300, homogeneity = 0.0, triangle = -1e300, index_gap = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Exponent p = Exponent::parse(exps[static_cast<std::size_t>(i) % exps.size()]);
      const auto n = static_cast<Eigen::Index>(2 + (i / 5) % 3);
      const LpSpace space(static_cast<std::size_t>(n), p);
      const Mat t = gaussian_matrix(rng, n, n);
      const Mat s = gaussian_matrix(rng, n, n);
      const double alpha = alpha_dist(rng);
      SearchOptions so;
      so.seed = seed + static_cast<std::uint64_t>(i);
      const double rt = numerical_radius(Operator(t, space), so).value;
      const double nt = operator_norm(Operator(t, space), so).value;
      const double rs = numerical_radius(Operator(s, space), so).value;
      const double rts = numerical_radius(Operator(t + s, space), so).value;
      const double rat = numerical_radius(Operator(alpha * t, space), so).value;
      const double d = rt - nt;
      const double h = std::abs(rat - std::abs(alpha) * rt);
      const double tr = rts - rt - rs;
      bool row_ok = d <= 1e-9 && h <= 1e-9 && tr <= 1e-9;
      dominance = std::max(dominance, d);
      homogeneity = std::max(homogeneity, h);
      triangle = std::max(triangle, tr);
      if (p.is_polyhedral()) {
        index_gap = std::max(index_gap, nt - rt);
        row_ok = row_ok && rt >= nt - 2e-3;
      }
      if (!row_ok) {
        ++failures;
      }
      ok = ok && row_ok;
    }
    c.passed = ok;
    c.measured = {{"operators", 200},
                  {"failures", failures},
                  {"max_radius_minus_norm", dominance},
                  {"max_homogeneity_error", homogeneity},
                  {"max_triangle_excess", triangle},
                  {"max_norm_minus_radius_polyhedral", index_gap}};
  });
}

CriterionOutcome rudin_averaging(std::uint64_t seed) {
  return timed(5, "group averaging commutes, stays in the family, does not raise the radius", 0.0,
               [&](CriterionOutcome& c) {
                 std::mt19937_64 rng(seed + 5);
                 std::normal_distribution<double> g(0.0, 1.0);
                 const std::vector<std::string> exps = {"1", "4/3", "2", "4", "inf"};
                 bool ok = true;
                 double commute = 0.0, membership = 0.0, excess = -1e300;
                 for (int i = 0; i < 100; ++i) {
                   const Exponent p = Exponent::parse(exps[static_cast<std::size_t>(i) % exps.size()]);
                   const LpSpace space(3, p);
                   const bool cyclic = (i / 5) % 2 == 0;
                   const IsometryGroup group = cyclic ? cyclic_shift_group(space) : sign_change_group(space);
                   std::vector<Vec> basis;
                   if (cyclic) {
                     if ((i / 10) % 2 == 0) {
                       basis.push_back(Vec::Ones(3));
                     } else {
                       basis.push_back((Vec(3) << 1.0, -1.0, 0.0).finished());
                       basis.push_back((Vec(3) << 0.0, 1.0, -1.0).finished());
                     }
                   } else {
                     basis.push_back(Vec::Unit(3, i % 3));
                     if ((i / 10) % 2 == 0) {
                       basis.push_back(Vec::Unit(3, (i + 1) % 3));
                     }
                   }
                   const ProjectionProblem pr(space, basis);
                   const Parametrization fam = parametrize(pr);
                   Vec theta(static_cast<Eigen::Index>(fam.size()));
                   for (auto& v : theta) {
                     v = g(rng);
                   }
                   const Mat pm = fam.at(theta);
                   const Mat q = rudin_average(pm, group, pr);
                   double cm = 0.0;
                   for (const auto& t : group.elements()) {
                     cm = std::max(cm, (q * t - t * q).cwiseAbs().maxCoeff());
                   }
                   const Mat v = pr.basis_matrix();
                   const double mem = (q * v - v).cwiseAbs().maxCoeff();
                   SearchOptions so;
                   so.seed = seed + static_cast<std::uint64_t>(i);
                   const double rp = numerical_radius(Operator(pm, space), so).value;
                   const double rq = numerical_radius(Operator(q, space), so).value;
                   commute = std::max(commute, cm);
                   membership = std::max(membership, mem);
                   excess = std::max(excess, rq - rp);
                   ok = ok && cm <= 1e-10 && mem <= 1e-10 && rq <= rp + 1e-9;
                 }
                 c.passed = ok;
                 c.measured = {{"projections", 100},
                               {"max_commutator", commute},
                               {"max_family_defect", membership},
                               {"max_radius_increase", excess}};
               });
}

CriterionOutcome fourier(std::uint64_t) {
  return timed(6, "Marcinkiewicz average and Lebesgue constants on the grid", 0.0, [&](CriterionOutcome& c) {
    bool ok = true;
    json avg = json::array();
    for (int n = 0; n <= 4; ++n) {
      const FourierGrid grid(n, 4 * n + 4);
      const Mat f = fourier_projection(grid);
      double err = 0.0;
      bool row_ok = true;
      try {
        const Mat q = marcinkiewicz_average(interpolation_projection(grid), grid);
        err = (q - f).cwiseAbs().maxCoeff();
        row_ok = err <= 1e-8;
      } catch (const std::exception&) {
        row_ok = false;
      }
      ok = ok && row_ok;
      avg.push_back({{"n", n}, {"N", grid.N}, {"max_difference", err}, {"ok", row_ok}});
    }
    json leb = json::array();
    double prev = 0.0;
    bool monotone = true;
    bool bounded = true;
    double coincidence = 0.0;
    for (int n = 1; n <= 10; ++n) {
      const FourierGrid grid(n, 4096);
      const double l = lebesgue_constant(grid);
      const double lo = 4.0 / (std::numbers::pi * std::numbers::pi) * std::log(n);
      const double hi = std::log(n) + 3.0;
      bounded = bounded && l >= lo && l <= hi;
      if (n > 1) {
        monotone = monotone && l > prev;
      }
      prev = l;
      const Operator m(fourier_projection(grid), LpSpace(4096, Exponent::infinity()));
      const double nrm = operator_norm(m).value;
      const double rad = numerical_radius(m).value;
      coincidence = std::max(coincidence, std::abs(nrm - rad));
      leb.push_back({{"n", n}, {"lebesgue", l}, {"lower", lo}, {"upper", hi}, {"norm", nrm}, {"radius", rad}});
    }
    ok = ok && bounded && monotone && coincidence <= 2e-3;
    c.passed = ok;
    c.measured = {{"averages", avg},
                  {"lebesgue", leb},
                  {"within_bounds", bounded},
                  {"increasing", monotone},
                  {"max_norm_radius_gap", coincidence}};
  });
}

// Dense oracle for the numerical radius on l^p_3: sup of |y(Tx)| over a
// latitude/longitude grid of the Euclidean hemisphere, y the duality map.
class HemisphereOracle {
 public:
  HemisphereOracle(double p, int lat, int lon) {
    for (int a = 0; a <= lat; ++a) {
      const double phi = 0.5 * std::numbers::pi * a / lat;
      for (int b = 0; b < lon; ++b) {
        const double psi = 2.0 * std::numbers::pi * b / lon;
        double x[3] = {std::sin(phi) * std::cos(psi), std::sin(phi) * std::sin(psi), std::cos(phi)};
        double s = 0.0;
        for (double v : x) {
          s += std::pow(std::abs(v), p);
        }
        const double norm = std::pow(s, 1.0 / p);
        double y[3];
        for (int i = 0; i < 3; ++i) {
          x[i] /= norm;
          y[i] = std::copysign(std::pow(std::abs(x[i]), p - 1.0), x[i]);
        }
        std::array<double, 9> w{};
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            w[static_cast<std::size_t>(3 * i + j)] = y[i] * x[j];
          }
        }
        weights_.push_back(w);
      }
    }
  }

  double radius(const Mat& t) const {
    double best = 0.0;
    for (const auto& w : weights_) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          s += t(i, j) * w[static_cast<std::size_t>(3 * i + j)];
        }
      }
      best = std::max(best, std::abs(s));
    }
    return best;
  }

 private:
  std::vector<std::array<double, 9>> weights_;
};

CriterionOutcome certificate_soundness(const ExampleRun& ex, std::uint64_t seed) {
  return timed(7, "invariance certificate feasible at the minimizer, infeasible away from it", 0.0,
               [&](CriterionOutcome& c) {
                 const ProjectionProblem& pr = ex.inst.problem;
                 const Parametrization fam = parametrize(pr);
                 // Grid scan of the two-parameter family, refined three times.
                 const HemisphereOracle oracle(pr.space.p.value(), 160, 320);
                 Vec center = Vec::Zero(2);
                 double step = 0.1;
                 double oracle_min = 0.0;
                 for (int level = 0; level < 3; ++level) {
                   Vec best_theta = center;
                   double best = 1e300;
                   for (int a = -10; a <= 10; ++a) {
                     for (int b = -10; b <= 10; ++b) {
                       const Vec th = center + step * (Vec(2) << a, b).finished();
                       const double r = oracle.radius(fam.at(th));
                       if (r < best) {
                         best = r;
                         best_theta = th;
                       }
                     }
                   }
                   center = best_theta;
                   oracle_min = best;
                   step /= 10.0;
                 }
                 const double gap = std::abs(oracle_min - ex.by_radius.value);
                 const bool oracle_ok = gap <= 1e-3;

                 PairSearchOptions po;
                 po.seed = seed;
                 const auto pairs = extremal_pairs(ex.by_radius.op, pr, NormKind::numerical_radius, po);
                 bool at_min_ok = false;
                 double residual_min = -1.0;
                 if (!pairs.pairs.empty()) {
                   const Certificate cert = invariance_certificate(pairs.pairs, pr, 1e-4);
                   residual_min = cert.residual;
                   at_min_ok = cert.feasible;
                 }

                 // Walk away from the minimizer until the radius is 5e-2 larger.
                 SearchOptions so;
                 so.seed = seed;
                 Vec theta = ex.by_radius.theta;
                 Mat bad = fam.at(theta);
                 double bad_radius = ex.by_radius.value;
                 for (int k = 1; k <= 200 && bad_radius < ex.by_radius.value + 5e-2; ++k) {
                   theta = ex.by_radius.theta + 0.05 * k * (Vec(2) << 1.0, 0.5).finished();
                   bad = fam.at(theta);
                   bad_radius = numerical_radius(Operator(bad, pr.space), so).value;
                 }
                 const auto bad_pairs = extremal_pairs(bad, pr, NormKind::numerical_radius, po);
                 bool away_ok = true;
                 double residual_bad = -1.0;
                 if (!bad_pairs.pairs.empty()) {
                   const Certificate cert = invariance_certificate(bad_pairs.pairs, pr, 1e-4);
                   residual_bad = cert.residual;
                   away_ok = !cert.feasible;
                 }
                 c.passed = oracle_ok && at_min_ok && away_ok && bad_radius >= ex.by_radius.value + 5e-2;
                 c.measured = {{"oracle_grid_minimum", oracle_min},
                               {"oracle_argmin", {center[0], center[1]}},
                               {"computed_minimum", ex.by_radius.value},
                               {"computed_argmin", {ex.by_radius.theta[0], ex.by_radius.theta[1]}},
                               {"oracle_gap", gap},
                               {"pairs_at_minimizer", pairs.pairs.size()},
                               {"residual_at_minimizer", residual_min},
                               {"feasible_at_minimizer", at_min_ok},
                               {"offset_radius", bad_radius},
                               {"pairs_at_offset", bad_pairs.pairs.size()},
                               {"residual_at_offset", residual_bad},
                               {"infeasible_at_offset", away_ok}};
               });
}

CriterionOutcome strong_unicity(const ExampleRun& ex, std::uint64_t seed) {
  return timed(8, "strong unicity constant positive on the example, zero on the negative instances", 0.0,
               [&](CriterionOutcome& c) {
                 UnicityOptions uo;
                 uo.samples = 10000;
                 uo.seed = seed;
                 uo.inner.seed = seed;
                 const auto pos = strong_unicity_estimate(ex.inst.problem, ex.by_radius.op, NormKind::numerical_radius, uo);
                 const bool pos_ok = pos.r_hat >= 1e-4;
                 json neg = json::array();
                 bool neg_ok = true;
                 for (const std::string name : {"normone", "dim4"}) {
                   const Instance inst = builtin_instance(name);
                   UnicityOptions no;
                   no.samples = 1000;
                   no.seed = seed;
                   no.inner.seed = seed;
                   no.extra = {inst.known_minimizers[1]};
                   const auto est =
                       strong_unicity_estimate(inst.problem, inst.known_minimizers[0], NormKind::numerical_radius, no);
                   const bool ok = est.r_hat <= 1e-6;
                   neg_ok = neg_ok && ok;
                   neg.push_back({{"instance", name}, {"r_hat", est.r_hat}, {"samples", est.sample_count}, {"ok", ok}});
                 }
                 Vec f(4);
                 f << 0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0;
                 const auto d4 = dim4_lambda(f);
                 const LpSpace l4(4, Exponent::infinity());
                 const double n1 = operator_norm(Operator(d4.p1, l4)).value;
                 const double r1 = numerical_radius(Operator(d4.p1, l4)).value;
                 const bool lambda_ok = std::abs(d4.lambda - 4.0 / 3.0) <= 1e-12;
                 const bool attain_ok = std::abs(n1 - d4.lambda) <= 2e-3 && std::abs(r1 - d4.lambda) <= 2e-3;
                 c.passed = pos_ok && neg_ok && lambda_ok && attain_ok;
                 c.measured = {{"example_r_hat", pos.r_hat},
                               {"example_samples", pos.sample_count},
                               {"example_degenerate_directions", pos.degenerate_directions.size()},
                               {"negative_instances", neg},
                               {"dim4_lambda", d4.lambda},
                               {"dim4_p1_norm", n1},
                               {"dim4_p1_radius", r1}};
               });
}

}  // namespace

json SuiteReport::payload() const {
  json out = json::array();
  for (const auto& c : criteria) {
    out.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"measured", c.measured}});
  }
  return out;
}

json SuiteReport::timings() const {
  json out = json::array();
  for (const auto& c : criteria) {
    json t = {{"id", c.id}, {"seconds", c.seconds}};
    if (c.time_limit > 0.0) {
      t["limit_seconds"] = c.time_limit;
      t["within_limit"] = c.within_time();
    }
    out.push_back(std::move(t));
  }
  return out;
}

bool SuiteReport::all_ok() const {
  for (const auto& c : criteria) {
    if (!c.ok()) {
      return false;
    }
  }
  return true;
}

SuiteReport run_acceptance(std::uint64_t seed) {
  SuiteReport r;
  ExampleRun ex;
  r.criteria.push_back(shift_radius(seed));
  r.criteria.push_back(example_regression(ex, seed));
  r.criteria.push_back(coincidence(seed));
  r.criteria.push_back(seminorm_invariants(seed));
  r.criteria.push_back(rudin_averaging(seed));
  r.criteria.push_back(fourier(seed));
  r.criteria.push_back(certificate_soundness(ex, seed));
  r.criteria.push_back(strong_unicity(ex, seed));
  return r;
}

CriterionOutcome determinism_outcome(const std::string& first, const std::string& second) {
  CriterionOutcome c;
  c.id = 9;
  c.title = "two runs with the same seed give byte-identical payloads";
  c.passed = first == second;
  std::size_t at = 0;
  while (at < first.size() && at < second.size() && first[at] == second[at]) {
    ++at;
  }
  c.measured = {{"bytes", first.size()}, {"identical", c.passed}};
  if (!c.passed) {
    c.measured["first_difference_at"] = at;
  }
  return c;
}

}  // namespace numrad
