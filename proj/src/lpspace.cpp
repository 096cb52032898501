#include "numrad/lpspace.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace numrad {

namespace {

// Coordinates below this fraction of the largest one count as zero when the
// duality map is set-valued.
constexpr double kTieTolerance = 1e-12;

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return v;
}

}  // namespace

Exponent::Exponent(double p) : p_(p) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("exponent must satisfy p >= 1");
  }
}

Exponent Exponent::infinity() { return Exponent(std::numeric_limits<double>::infinity()); }

Exponent Exponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Infinity") {
    return infinity();
  }
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const double num = parse_double(text.substr(0, slash));
    const double den = parse_double(text.substr(slash + 1));
    if (den == 0.0) {
      throw std::invalid_argument("zero denominator in exponent '" + text + "'");
    }
    return Exponent(num / den);
  }
  return Exponent(parse_double(text));
}

bool Exponent::is_infinite() const { return std::isinf(p_); }

Exponent Exponent::dual() const {
  if (is_infinite()) {
    return Exponent(1.0);
  }
  if (is_one()) {
    return infinity();
  }
  return Exponent(p_ / (p_ - 1.0));
}

std::string Exponent::to_string() const {
  if (is_infinite()) {
    return "inf";
  }
  std::ostringstream os;
  os.precision(17);
  os << p_;
  return os.str();
}

LpSpace::LpSpace(std::size_t dim_, Exponent p_) : dim(dim_), p(p_) {
  if (dim == 0) {
    throw std::invalid_argument("space dimension must be positive");
  }
}

double lp_norm(const Vec& x, const Exponent& p) {
  if (p.is_infinite()) {
    return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
  }
  if (p.is_one()) {
    return x.cwiseAbs().sum();
  }
  if (p.is_two()) {
    return x.norm();
  }
  // Scale by the largest entry so large exponents do not overflow.
  const double scale = x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    return 0.0;
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    acc += std::pow(std::abs(x[i]) / scale, p.value());
  }
  return scale * std::pow(acc, 1.0 / p.value());
}

double pair(const Vec& y, const Vec& x) {
  if (y.size() != x.size()) {
    throw std::invalid_argument("dimension mismatch in pairing");
  }
  return y.dot(x);
}

Vec normalized(const Vec& x, const Exponent& p) {
  const double n = lp_norm(x, p);
  if (n == 0.0) {
    throw std::domain_error("cannot normalize the zero vector");
  }
  return x / n;
}

Vec duality_map(const Vec& x, const Exponent& p) {
  const double nx = lp_norm(x, p);
  if (nx == 0.0) {
    throw std::domain_error("no extremal of zero");
  }
  const Eigen::Index n = x.size();
  Vec y = Vec::Zero(n);
  if (p.is_one()) {
    for (Eigen::Index i = 0; i < n; ++i) {
      y[i] = x[i] < 0.0 ? -1.0 : 1.0;
    }
    return y;
  }
  if (p.is_infinite()) {
    Eigen::Index arg = 0;
    x.cwiseAbs().maxCoeff(&arg);
    y[arg] = x[arg] < 0.0 ? -1.0 : 1.0;
    return y;
  }
  const double pm1 = p.value() - 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = std::abs(x[i]) / nx;
    if (a > 0.0) {
      y[i] = std::copysign(std::pow(a, pm1), x[i]);
    }
  }
  return y;
}

std::vector<Vec> ext_functionals(const Vec& x, const Exponent& p) {
  const double nx = lp_norm(x, p);
  if (nx == 0.0) {
    throw std::domain_error("no extremal of zero");
  }
  const Eigen::Index n = x.size();
  if (p.is_one()) {
    const double cutoff = kTieTolerance * x.cwiseAbs().maxCoeff();
    Vec base = Vec::Zero(n);
    std::vector<Eigen::Index> free;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(x[i]) <= cutoff) {
        free.push_back(i);
      } else {
        base[i] = x[i] < 0.0 ? -1.0 : 1.0;
      }
    }
    if (free.size() > 20) {
      throw std::length_error("too many zero coordinates to enumerate the l^1 duality face");
    }
    std::vector<Vec> out;
    const std::uint64_t combos = std::uint64_t{1} << free.size();
    out.reserve(combos);
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
      Vec y = base;
      for (std::size_t k = 0; k < free.size(); ++k) {
        y[free[k]] = (mask >> k) & 1U ? -1.0 : 1.0;
      }
      out.push_back(std::move(y));
    }
    return out;
  }
  if (p.is_infinite()) {
    std::vector<Vec> out;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(x[i]) >= nx * (1.0 - kTieTolerance)) {
        Vec y = Vec::Zero(n);
        y[i] = x[i] < 0.0 ? -1.0 : 1.0;
        out.push_back(std::move(y));
      }
    }
    return out;
  }
  return {duality_map(x, p)};
}

std::vector<Vec> sphere_vertices(const LpSpace& space, std::size_t max_sign_dim, bool modulo_sign) {
  const auto n = static_cast<Eigen::Index>(space.dim);
  std::vector<Vec> out;
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    out.push_back(e);
    if (!modulo_sign) {
      out.push_back(-e);
    }
  }
  if (space.dim >= 2 && space.dim <= max_sign_dim) {
    const std::uint64_t combos = std::uint64_t{1} << space.dim;
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
      if (modulo_sign && (mask & 1U)) {
        continue;
      }
      Vec s(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        s[i] = (mask >> i) & 1U ? -1.0 : 1.0;
      }
      out.push_back(normalized(s, space.p));
    }
  }
  return out;
}

std::vector<Vec> sphere_sample(const LpSpace& space, std::size_t count, std::uint64_t seed,
                               std::size_t max_sign_dim) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(space.dim);
  std::vector<Vec> out;
  out.reserve(count + 2 * space.dim);
  while (out.size() < count) {
    Vec g(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      g[i] = gauss(rng);
    }
    if (g.cwiseAbs().maxCoeff() == 0.0) {
      continue;
    }
    out.push_back(normalized(g, space.p));
  }
  auto vertices = sphere_vertices(space, max_sign_dim, false);
  out.insert(out.end(), vertices.begin(), vertices.end());
  return out;
}

}  // namespace numrad
