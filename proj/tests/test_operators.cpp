#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "numrad/linalg.hpp"
#include "numrad/operators.hpp"

using namespace numrad;

namespace {

Mat random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(n, n);
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m.data()[i] = g(rng);
  }
  return m;
}

// Largest singular value by power iteration on T^T T.
double power_singular(const Mat& t) {
  Vec x = Vec::Ones(t.cols());
  double lambda = 0.0;
  for (int k = 0; k < 5000; ++k) {
    const Vec y = t.transpose() * (t * x);
    lambda = y.norm() / x.norm();
    x = y / y.norm();
  }
  return std::sqrt(lambda);
}

// Dense sampling of |y(Tx)| over unit x and its extremals.
double sampled_radius(const Mat& t, const Exponent& p, int count) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0.0, 1.0);
  double best = 0.0;
  for (int k = 0; k < count; ++k) {
    Vec x(t.cols());
    for (auto& v : x) {
      v = g(rng);
    }
    x /= lp_norm(x, p);
    for (const auto& y : ext_functionals(x, p)) {
      best = std::max(best, std::abs(y.dot(t * x)));
    }
  }
  return best;
}

Mat right_shift(Eigen::Index n) {
  Mat s = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    s(i + 1, i) = 1.0;
  }
  return s;
}

}  // namespace

TEST_SUITE("operators") {
  TEST_CASE("identity has norm and radius 1") {
    for (const char* ps : {"1", "4/3", "2", "4", "inf"}) {
      const LpSpace space(3, Exponent::parse(ps));
      const Operator id(Mat::Identity(3, 3), space);
      CHECK(operator_norm(id).value == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(numerical_radius(id).value == doctest::Approx(1.0).epsilon(1e-9));
    }
  }

  TEST_CASE("l2 operator norm matches power iteration") {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 10; ++k) {
      const Mat m = random_matrix(rng, 3);
      const double expected = power_singular(m);
      CHECK(operator_norm(Operator(m, LpSpace(3, Exponent(2.0)))).value == doctest::Approx(expected).epsilon(1e-9));
      SearchOptions so;
      so.method = Method::sample;
      CHECK(operator_norm(Operator(m, LpSpace(3, Exponent(2.0))), so).value ==
            doctest::Approx(expected).epsilon(1e-7));
    }
  }

  TEST_CASE("polyhedral norms are column and row sums") {
    std::mt19937_64 rng(2);
    const Mat m = random_matrix(rng, 4);
    const double col = m.cwiseAbs().colwise().sum().maxCoeff();
    const double row = m.cwiseAbs().rowwise().sum().maxCoeff();
    CHECK(operator_norm(Operator(m, LpSpace(4, Exponent(1.0)))).value == doctest::Approx(col));
    CHECK(operator_norm(Operator(m, LpSpace(4, Exponent::infinity()))).value == doctest::Approx(row));
    SearchOptions exact;
    exact.method = Method::exact;
    CHECK(operator_norm(Operator(m, LpSpace(4, Exponent::infinity())), exact).value == doctest::Approx(row));
  }

  TEST_CASE("exact enumeration refuses large l-infinity domains") {
    SearchOptions exact;
    exact.method = Method::exact;
    const Operator big(Mat::Identity(21, 21), LpSpace(21, Exponent::infinity()));
    CHECK_THROWS_WITH_AS(operator_norm(big, exact), "vertex enumeration too large", std::length_error);
  }

  TEST_CASE("numerical range samples") {
    const LpSpace l2(2, Exponent(2.0));
    for (double v : numerical_range_sample(Operator(Mat::Identity(2, 2), l2), 50, 0)) {
      CHECK(v == doctest::Approx(1.0));
    }
    const Mat rot = (Mat(2, 2) << 0, -1, 1, 0).finished();
    for (double v : numerical_range_sample(Operator(rot, l2), 50, 0)) {
      CHECK(std::abs(v) < 1e-12);
    }
    const Mat d = (Mat(2, 2) << 1, 0, 0, -1).finished();
    const auto vals = numerical_range_sample(Operator(d, l2), 200, 0);
    const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
    CHECK(*lo == doctest::Approx(-1.0));
    CHECK(*hi == doctest::Approx(1.0));
    CHECK_THROWS_AS(numerical_range_sample(Operator(Mat::Zero(2, 3), LpSpace(3, Exponent(2.0)), l2), 5, 0),
                    std::invalid_argument);
  }

  TEST_CASE("right shift radius is cos(pi/(n+1))") {
    for (Eigen::Index n = 2; n <= 8; ++n) {
      const Operator s(right_shift(n), LpSpace(static_cast<std::size_t>(n), Exponent(2.0)));
      const double expected = std::cos(std::numbers::pi / static_cast<double>(n + 1));
      CHECK(numerical_radius(s).value == doctest::Approx(expected).epsilon(1e-9));
    }
  }

  TEST_CASE("symmetric matrices on l2: radius equals norm equals max |eigenvalue|") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 10; ++k) {
      Mat m = random_matrix(rng, 4);
      m = 0.5 * (m + m.transpose()).eval();
      const auto eig = linalg::jacobi_eigen(m);
      const double top = std::max(std::abs(eig.values[0]), std::abs(eig.values[3]));
      const Operator t(m, LpSpace(4, Exponent(2.0)));
      CHECK(numerical_radius(t).value == doctest::Approx(top).epsilon(1e-9));
      CHECK(operator_norm(t).value == doctest::Approx(top).epsilon(1e-9));
    }
  }

  TEST_CASE("zero operator") {
    const auto r = numerical_radius(Operator(Mat::Zero(3, 3), LpSpace(3, Exponent(3.0))));
    CHECK(r.value == 0.0);
    CHECK_FALSE(r.attained);
  }

  TEST_CASE("non-square radius is rejected") {
    CHECK_THROWS_AS(numerical_radius(Operator(Mat::Zero(2, 3), LpSpace(3, Exponent(2.0)), LpSpace(2, Exponent(2.0)))),
                    std::invalid_argument);
  }

  TEST_CASE("dominance, witnesses and oracle agreement") {
    std::mt19937_64 rng(4);
    for (const char* ps : {"1", "4/3", "2", "4", "inf"}) {
      const Exponent p = Exponent::parse(ps);
      for (int k = 0; k < 6; ++k) {
        const Mat m = random_matrix(rng, 3);
        const Operator t(m, LpSpace(3, p));
        const RadiusResult r = numerical_radius(t);
        const RadiusResult n = operator_norm(t);
        CHECK(r.value <= n.value + 1e-9);
        // Witnesses re-attain the reported values.
        CHECK(std::abs(r.witness_y.dot(m * r.witness_x)) == doctest::Approx(r.value).epsilon(1e-9));
        CHECK(r.witness_y.dot(r.witness_x) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::abs(n.witness_y.dot(m * n.witness_x)) == doctest::Approx(n.value).epsilon(1e-9));
        CHECK(r.value >= sampled_radius(m, p, 20000) - 1e-3);
      }
    }
  }

  TEST_CASE("semi-norm properties") {
    std::mt19937_64 rng(5);
    for (const char* ps : {"4/3", "3"}) {
      const LpSpace space(3, Exponent::parse(ps));
      const Mat a = random_matrix(rng, 3);
      const Mat b = random_matrix(rng, 3);
      const double ra = numerical_radius(Operator(a, space)).value;
      const double rb = numerical_radius(Operator(b, space)).value;
      CHECK(numerical_radius(Operator(-2.5 * a, space)).value == doctest::Approx(2.5 * ra).epsilon(1e-9));
      CHECK(numerical_radius(Operator(a + b, space)).value <= ra + rb + 1e-9);
    }
  }

  TEST_CASE("numerical index estimates") {
    const auto l1 = numerical_index_estimate(LpSpace(3, Exponent(1.0)), 30, 0);
    CHECK(l1.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(l1.bound == "upper");
    const auto li = numerical_index_estimate(LpSpace(3, Exponent::infinity()), 30, 0);
    CHECK(li.value == doctest::Approx(1.0).epsilon(1e-6));
    const Mat rot = (Mat(2, 2) << 0, -1, 1, 0).finished();
    const auto l2 = numerical_index_estimate(LpSpace(2, Exponent(2.0)), 5, 0, {rot});
    CHECK(l2.value < 1e-12);
  }

  TEST_CASE("method and kind parsing") {
    CHECK(parse_method("auto") == Method::automatic);
    CHECK(parse_method("sample") == Method::sample);
    CHECK(parse_norm_kind("operator") == NormKind::operator_norm);
    CHECK_THROWS_AS(parse_method("fast"), std::invalid_argument);
    CHECK_THROWS_AS(parse_norm_kind("spectral"), std::invalid_argument);
  }

  TEST_CASE("same seed gives identical sampled results") {
    std::mt19937_64 rng(6);
    const Mat m = random_matrix(rng, 3);
    SearchOptions so;
    so.seed = 11;
    const LpSpace space(3, Exponent(3.0));
    const auto a = numerical_radius(Operator(m, space), so);
    const auto b = numerical_radius(Operator(m, space), so);
    CHECK(a.value == b.value);
    CHECK((a.witness_x - b.witness_x).norm() == 0.0);
  }
}
