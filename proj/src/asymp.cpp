#include "tilecount/asymp.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "tilecount/error.hpp"

namespace tilecount {

std::string to_string(GrowthClass c) {
  switch (c) {
    case GrowthClass::EventuallyPolynomial: return "eventually-polynomial";
    case GrowthClass::Exponential: return "exponential";
    case GrowthClass::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

double log_integer(const Integer& z) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(mant) + double(exp) * std::log(2.0);
}

namespace {

struct Point {
  double n;
  double log_value;
};

// Smallest d with identically vanishing (d+1)-th differences on the tail,
// confirmed by at least three zero entries.
std::optional<int> polynomial_degree(const std::vector<Integer>& tail) {
  bool all_zero = true;
  for (const Integer& z : tail) all_zero = all_zero && z == 0;
  if (all_zero) return -1;
  std::vector<Integer> d = tail;
  for (int order = 1; d.size() > 3; ++order) {
    for (std::size_t i = 0; i + 1 < d.size(); ++i) d[i] = d[i + 1] - d[i];
    d.pop_back();
    bool zero = true;
    for (const Integer& z : d) zero = zero && z == 0;
    if (zero) return order - 1;
  }
  return std::nullopt;
}

double snap_half(double x, bool& snapped) {
  double r = std::round(2 * x) / 2 + 0.0;  // no negative zero
  snapped = std::fabs(x - r) < 0.05;
  return snapped ? r : x;
}

// Least squares on columns built by `row`; returns coefficients and rms.
template <class Row>
std::pair<Eigen::VectorXd, double> solve(const std::vector<Point>& pts, std::size_t cols, Row row,
                                         const std::vector<double>& target) {
  Eigen::MatrixXd a(pts.size(), cols);
  Eigen::VectorXd b(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<double> r = row(pts[i].n);
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = r[j];
    b(i) = target[i];
  }
  Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
  double rms = std::sqrt((a * x - b).squaredNorm() / double(pts.size()));
  return {x, rms};
}

// Ratio-based estimate of lambda: r_n = lambda + b/n + c/(n log n) + d/n^2.
double ratio_estimate(const std::vector<Point>& pts, std::size_t step) {
  std::vector<Point> ratios;
  std::vector<double> target;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double r = std::exp((pts[i].log_value - pts[i - 1].log_value) / double(step));
    ratios.push_back({pts[i].n, 0});
    target.push_back(r);
  }
  if (ratios.size() < 6) return target.empty() ? 0 : target.back();
  auto [x, rms] = solve(
      ratios, 4,
      [](double n) { return std::vector<double>{1, 1 / n, 1 / (n * std::log(n)), 1 / (n * n)}; }, target);
  return x(0);
}

// Rational with denominator <= 4 within a relative 1e-5, else nullopt.
std::optional<double> snap_lambda(double lambda) {
  for (int den = 1; den <= 4; ++den) {
    double num = std::round(lambda * den);
    if (num < 1) continue;
    if (std::fabs(num / den - lambda) <= 1e-5 * lambda) return num / den;
  }
  return std::nullopt;
}

ResidueFit fit_class(const std::vector<Integer>& cls, std::size_t residue, std::size_t modulus, std::size_t offset) {
  ResidueFit out;
  out.residue = residue;
  out.count = cls.size();
  const std::size_t tail_start = cls.size() / 2;
  std::vector<Integer> tail(cls.begin() + std::ptrdiff_t(tail_start), cls.end());
  if (std::optional<int> deg = polynomial_degree(tail)) {
    out.growth = GrowthClass::EventuallyPolynomial;
    out.degree = *deg;
    return out;
  }

  // Numeric fit on the positive tail, n >= 2 so log log n is defined.
  std::vector<Point> pts;
  for (std::size_t k = tail_start; k < cls.size(); ++k) {
    double n = double(offset + residue + k * modulus);
    if (cls[k] <= 0 || n < 3) continue;
    pts.push_back({n, log_integer(cls[k])});
  }
  if (pts.size() < 8) return out;

  out.lambda_ratio = ratio_estimate(pts, modulus);
  std::optional<double> snapped = snap_lambda(out.lambda_ratio);
  out.lambda_snapped = snapped.has_value();

  std::vector<double> target;
  for (const Point& p : pts) target.push_back(p.log_value);
  double log_lambda = 0;
  if (snapped) {
    log_lambda = std::log(*snapped);
    for (std::size_t i = 0; i < pts.size(); ++i) target[i] -= pts[i].n * log_lambda;
  }
  // log(log n + C) with C chosen on a grid; C shifts the log factor.
  Eigen::VectorXd x;
  double rms = 0;
  for (double c = 0; c <= 10.0001; c += 0.05) {
    auto row = [&](double n) {
      std::vector<double> r{1, std::log(n), std::log(std::log(n) + c), 1 / n, 1 / (n * n)};
      if (!snapped) r.push_back(n);
      return r;
    };
    auto [xc, rc] = solve(pts, snapped ? 5 : 6, row, target);
    if (x.size() == 0 || rc < rms) {
      x = xc;
      rms = rc;
      out.log_shift = c;
    }
  }
  out.alpha = x(1);
  out.beta = x(2);
  if (!snapped) log_lambda = x(5);
  out.lambda = std::exp(log_lambda);
  out.rms_residual = rms;

  // Refit the constant with snapped exponents.
  bool alpha_snapped = false, beta_snapped = false;
  double alpha = snap_half(out.alpha, alpha_snapped);
  double beta = snap_half(out.beta, beta_snapped);
  if (alpha_snapped && beta_snapped) {
    out.alpha = alpha;
    out.beta = beta;
    std::vector<double> rest;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double n = pts[i].n;
      double t = pts[i].log_value - alpha * std::log(n) - beta * std::log(std::log(n) + out.log_shift) - n * log_lambda;
      rest.push_back(t);
    }
    auto [y, rms2] = solve(pts, 3, [](double n) { return std::vector<double>{1, 1 / n, 1 / (n * n)}; }, rest);
    out.a = std::exp(y(0));
    out.rms_residual = rms2;
  } else {
    out.a = std::exp(x(0));
  }
  out.log_factor = beta_snapped && beta >= 1;
  out.growth = out.lambda > 1.02 ? GrowthClass::Exponential : GrowthClass::Inconclusive;
  return out;
}

}  // namespace

AsympReport asymp_fit(const std::vector<Integer>& values, std::size_t modulus, std::size_t offset) {
  if (modulus == 0) fail(ErrorCode::InvalidArgument, "modulus must be positive");
  AsympReport rep;
  rep.modulus = modulus;
  bool all_poly = true, any_exp = false;
  for (std::size_t r = 0; r < modulus; ++r) {
    std::vector<Integer> cls;
    for (std::size_t i = r; i < values.size(); i += modulus) cls.push_back(values[i]);
    if (cls.size() < kMinClassSize)
      fail(ErrorCode::InsufficientData, "residue class " + std::to_string(r) + " has " + std::to_string(cls.size()) +
                                            " values, need " + std::to_string(kMinClassSize));
    ResidueFit f = fit_class(cls, r, modulus, offset);
    all_poly = all_poly && f.growth == GrowthClass::EventuallyPolynomial;
    any_exp = any_exp || f.growth == GrowthClass::Exponential;
    rep.classes.push_back(f);
  }
  rep.overall = all_poly ? GrowthClass::EventuallyPolynomial
                         : any_exp ? GrowthClass::Exponential : GrowthClass::Inconclusive;
  return rep;
}

std::string format_report(const AsympReport& r) {
  std::ostringstream os;
  char buf[256];
  os << "modulus " << r.modulus << "\n";
  for (const ResidueFit& f : r.classes) {
    os << "class " << f.residue << " (" << f.count << " values): " << to_string(f.growth);
    if (f.growth == GrowthClass::EventuallyPolynomial) {
      if (f.degree < 0)
        os << ", zero";
      else
        os << ", degree " << f.degree;
      os << "\n";
      continue;
    }
    std::snprintf(buf, sizeof buf, "\n  lambda %.9g%s (ratio estimate %.9g)\n  alpha %.6g\n  beta %.6g%s, log shift %.3g\n  A %.9g\n  rms %.3g\n",
                  f.lambda, f.lambda_snapped ? " exact" : "", f.lambda_ratio, f.alpha, f.beta,
                  f.log_factor ? " (log factor)" : "", f.log_shift, f.a, f.rms_residual);
    os << buf;
  }
  os << "overall: " << to_string(r.overall) << "\n";
  return os.str();
}

}  // namespace tilecount
