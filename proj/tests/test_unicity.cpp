#include <doctest.h>

#include <cmath>

#include "numrad/unicity.hpp"

using namespace numrad;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) {
    v[i++] = x;
  }
  return v;
}

// Operator norm on l^inf: largest absolute row sum.
double linf_norm(const Mat& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace

TEST_SUITE("unicity") {
  TEST_CASE("dim4 construction") {
    const auto c = dim4_lambda(vec({0, 1.0 / 3, 1.0 / 3, 1.0 / 3}));
    CHECK(c.lambda == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(c.y[0] == doctest::Approx(1.0 / 3.0));
    CHECK(c.z[0] == 0.0);
    CHECK(linf_norm(c.p1) == doctest::Approx(c.lambda).epsilon(1e-12));
    CHECK(linf_norm(c.p2) == doctest::Approx(c.lambda).epsilon(1e-12));
    CHECK((c.p1 - c.p2).cwiseAbs().maxCoeff() > 0.1);
    const auto pr = dim4_problem(vec({0, 1.0 / 3, 1.0 / 3, 1.0 / 3}));
    CHECK(pr.contains(c.p1));
    CHECK(pr.contains(c.p2));

    const auto c5 = dim4_lambda(vec({0, 0.25, 0.25, 0.25, 0.25}));
    CHECK(c5.lambda == doctest::Approx(1.5).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(dim4_lambda(vec({0.1, 0.3, 0.3, 0.3})), "f_1 must be 0", std::invalid_argument);
    CHECK_THROWS_WITH_AS(dim4_lambda(vec({0, 0.6, 0.2, 0.2})), "f_2 must be below 1/2", std::invalid_argument);
    CHECK_THROWS_WITH_AS(dim4_lambda(vec({0, 0.5, 0.5, 0})), "f_2 must be below 1/2", std::invalid_argument);
    CHECK_THROWS_WITH_AS(dim4_lambda(vec({0, 0.4, 0.6 , 0})), "f_3 must be below 1/2", std::invalid_argument);
    CHECK_THROWS_WITH_AS(dim4_lambda(vec({0, 0.4, 0.4, 0})), "f_4 must be positive", std::invalid_argument);
    CHECK_THROWS_WITH_AS(dim4_lambda(vec({0, 0.3, 0.3, 0.3})), "coordinates of f must sum to 1",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(dim4_lambda(vec({0, 1})), "f must have at least 3 coordinates", std::invalid_argument);
  }

  TEST_CASE("built-in instances") {
    const auto all = builtin_instances();
    REQUIRE(all.size() == 3);
    CHECK(all[0].name == "example");
    CHECK(all[0].expected_operator == doctest::Approx(1.05251));
    CHECK(all[0].expected_radius == doctest::Approx(1.02751));
    for (const auto& inst : all) {
      for (const auto& p : inst.known_minimizers) {
        CHECK(inst.problem.contains(p));
        CHECK(linf_norm(p) == doctest::Approx(inst.expected_operator).epsilon(1e-12));
      }
    }
    CHECK_THROWS_AS(builtin_instance("nope"), std::invalid_argument);
  }

  TEST_CASE("two minimizers give a zero estimate") {
    for (const char* name : {"normone", "dim4"}) {
      const auto inst = builtin_instance(name);
      UnicityOptions o;
      o.samples = 200;
      o.extra = {inst.known_minimizers[1]};
      const auto est = strong_unicity_estimate(inst.problem, inst.known_minimizers[0], NormKind::operator_norm, o);
      CHECK(est.r_hat <= 1e-6);
      CHECK(est.reference == doctest::Approx(inst.expected_operator).epsilon(1e-9));
    }
  }

  TEST_CASE("candidate list and rejections") {
    const auto inst = builtin_instance("normone");
    const Mat& p1 = inst.known_minimizers[0];
    const Mat& p2 = inst.known_minimizers[1];
    const auto est = strong_unicity_from_candidates(inst.problem, p1, NormKind::operator_norm, {p1, p2});
    CHECK(est.rejected == 1);
    CHECK(est.sample_count == 1);
    CHECK(est.r_hat == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_WITH_AS(strong_unicity_from_candidates(inst.problem, p1, NormKind::operator_norm, {p1}),
                         "no valid sample directions", std::domain_error);
    CHECK_THROWS_AS(strong_unicity_estimate(inst.problem, Mat::Zero(3, 3), NormKind::operator_norm),
                    std::invalid_argument);
  }

  TEST_CASE("estimate never exceeds the ratio of a supplied candidate") {
    const auto inst = builtin_instance("dim4");
    const Mat& po = inst.known_minimizers[0];
    const auto fam = parametrize(inst.problem);
    for (std::size_t j = 0; j < fam.size(); ++j) {
      const Mat cand = po + 0.2 * fam.directions[j];
      UnicityOptions o;
      o.samples = 100;
      o.seed = j;
      o.extra = {cand};
      const auto est = strong_unicity_estimate(inst.problem, po, NormKind::operator_norm, o);
      const auto one = strong_unicity_from_candidates(inst.problem, po, NormKind::operator_norm, {cand});
      CHECK(est.r_hat <= one.r_hat + 1e-9);
      CHECK(est.r_hat >= -1e-9);
    }
  }

  TEST_CASE("ratio is scale invariant on polyhedral fixtures") {
    const auto inst = builtin_instance("dim4");
    const Mat& po = inst.known_minimizers[0];
    const auto fam = parametrize(inst.problem);
    for (std::size_t j = 0; j < fam.size(); ++j) {
      const Mat d = 1e-3 * fam.directions[j];
      const auto a = strong_unicity_from_candidates(inst.problem, po, NormKind::operator_norm, {po + d});
      const auto b = strong_unicity_from_candidates(inst.problem, po, NormKind::operator_norm, {po + 0.1 * d});
      const auto c = strong_unicity_from_candidates(inst.problem, po, NormKind::operator_norm, {po + 10.0 * d});
      CHECK(b.r_hat == doctest::Approx(a.r_hat).epsilon(1e-9));
      CHECK(c.r_hat == doctest::Approx(a.r_hat).epsilon(1e-9));
    }
  }
}
