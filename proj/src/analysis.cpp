#include "evonet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace evonet {

namespace {

void check_series(const Series& s) {
  if (s.x.size() != s.y.size()) {
    throw std::invalid_argument("series x/y length mismatch");
  }
  if (s.x.size() < 3) throw std::invalid_argument("series needs >= 3 points");
}

/// Ordinary least squares for y ≈ X c via normal equations with partial
/// pivoting; the bases here have at most three well-separated columns.
std::vector<double> solve_least_squares(
    const std::vector<std::vector<double>>& rows,
    const std::vector<double>& y) {
  std::size_t n = rows.size();
  std::size_t m = rows.front().size();
  std::vector<std::vector<double>> ata(m, std::vector<double>(m, 0.0));
  std::vector<double> aty(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      aty[j] += rows[i][j] * y[i];
      for (std::size_t k = 0; k < m; ++k) ata[j][k] += rows[i][j] * rows[i][k];
    }
  }
  // Gaussian elimination with partial pivoting.
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::fabs(ata[r][col]) > std::fabs(ata[pivot][col])) pivot = r;
    }
    if (std::fabs(ata[pivot][col]) < 1e-12) {
      throw std::invalid_argument("degenerate design matrix");
    }
    std::swap(ata[col], ata[pivot]);
    std::swap(aty[col], aty[pivot]);
    for (std::size_t r = col + 1; r < m; ++r) {
      double f = ata[r][col] / ata[col][col];
      for (std::size_t k = col; k < m; ++k) ata[r][k] -= f * ata[col][k];
      aty[r] -= f * aty[col];
    }
  }
  std::vector<double> c(m, 0.0);
  for (std::size_t i = m; i-- > 0;) {
    double acc = aty[i];
    for (std::size_t k = i + 1; k < m; ++k) acc -= ata[i][k] * c[k];
    c[i] = acc / ata[i][i];
  }
  return c;
}

double r_squared_of(const std::vector<std::vector<double>>& rows,
                    const std::vector<double>& y,
                    const std::vector<double>& coef) {
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    double pred = 0.0;
    for (std::size_t j = 0; j < coef.size(); ++j) pred += rows[i][j] * coef[j];
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  if (ss_tot == 0.0) return ss_res == 0.0 ? 1.0 : 0.0;
  return 1.0 - ss_res / ss_tot;
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

/// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-14) break;
  }
  return h;
}

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                    a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double t_cdf(double t, int nu) {
  double x = static_cast<double>(nu) / (nu + t * t);
  double tail = 0.5 * incomplete_beta(0.5 * nu, 0.5, x);
  return t >= 0.0 ? 1.0 - tail : tail;
}

}  // namespace

const char* to_string(FitModel model) {
  switch (model) {
    case FitModel::PowerLaw: return "power_law";
    case FitModel::InverseSqrt: return "inverse_sqrt";
    case FitModel::RhoRandom: return "rho_random";
    case FitModel::RhoGradual: return "rho_gradual";
  }
  return "?";
}

const char* to_string(Trend trend) {
  switch (trend) {
    case Trend::Increasing: return "increasing";
    case Trend::Decreasing: return "decreasing";
    case Trend::None: return "none";
  }
  return "?";
}

FitResult power_law_fit(const Series& s) {
  check_series(s);
  std::vector<std::vector<double>> rows;
  std::vector<double> ly;
  rows.reserve(s.x.size());
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    if (s.x[i] <= 0.0 || s.y[i] <= 0.0) {
      throw std::invalid_argument("power-law fit needs positive data");
    }
    rows.push_back({1.0, std::log(s.x[i])});
    ly.push_back(std::log(s.y[i]));
  }
  auto coef = solve_least_squares(rows, ly);
  return FitResult{FitModel::PowerLaw,
                   {std::exp(coef[0]), coef[1]},
                   r_squared_of(rows, ly, coef)};
}

FitResult inverse_sqrt_fit(const Series& s) {
  check_series(s);
  std::vector<std::vector<double>> rows;
  rows.reserve(s.x.size());
  for (double xv : s.x) {
    if (xv <= 0.0) throw std::invalid_argument("needs positive x");
    rows.push_back({1.0, 1.0 / std::sqrt(xv)});
  }
  auto coef = solve_least_squares(rows, s.y);
  return FitResult{FitModel::InverseSqrt, coef, r_squared_of(rows, s.y, coef)};
}

FitResult rho_curve_fit(const Series& s, FitModel form) {
  check_series(s);
  std::vector<std::vector<double>> rows;
  rows.reserve(s.x.size());
  for (double rho : s.x) {
    if (rho < 1.0) throw std::invalid_argument("rho grid must be >= 1");
    if (form == FitModel::RhoRandom) {
      rows.push_back({1.0, std::sqrt(rho), 1.0 / std::sqrt(rho)});
    } else if (form == FitModel::RhoGradual) {
      rows.push_back({1.0, 1.0 / rho});
    } else {
      throw std::invalid_argument("rho_curve_fit takes a rho form");
    }
  }
  auto coef = solve_least_squares(rows, s.y);
  return FitResult{form, coef, r_squared_of(rows, s.y, coef)};
}

double fit_eval(const FitResult& fit, double x) {
  const auto& c = fit.coefficients;
  switch (fit.model) {
    case FitModel::PowerLaw: return c[0] * std::pow(x, c[1]);
    case FitModel::InverseSqrt: return c[0] + c[1] / std::sqrt(x);
    case FitModel::RhoRandom:
      return c[0] + c[1] * std::sqrt(x) + c[2] / std::sqrt(x);
    case FitModel::RhoGradual: return c[0] + c[1] / x;
  }
  return 0.0;
}

MannKendallResult mann_kendall(const std::vector<double>& y) {
  std::size_t n = y.size();
  if (n < 4) throw std::invalid_argument("mann_kendall needs >= 4 points");
  long long s = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (y[j] > y[i]) ++s;
      else if (y[j] < y[i]) --s;
    }
  }
  std::map<double, long long> ties;
  for (double v : y) ++ties[v];
  double var = static_cast<double>(n) * (n - 1) * (2.0 * n + 5.0);
  for (const auto& [value, t] : ties) {
    (void)value;
    if (t > 1) var -= static_cast<double>(t) * (t - 1) * (2.0 * t + 5.0);
  }
  var /= 18.0;

  MannKendallResult result;
  result.s = s;
  if (var > 0.0 && s != 0) {
    double num = s > 0 ? static_cast<double>(s) - 1.0 : static_cast<double>(s) + 1.0;
    result.z = num / std::sqrt(var);
  }
  result.p_value = s == 0 ? 1.0 : 2.0 * normal_sf(std::fabs(result.z));
  result.p_value = std::min(result.p_value, 1.0);
  if (result.p_value < 0.05) {
    result.trend = s > 0 ? Trend::Increasing : Trend::Decreasing;
  }
  return result;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("pearson needs two equal series, length >= 2");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::invalid_argument("pearson needs nonzero variance");
  }
  return sxy / std::sqrt(sxx * syy);
}

ConfidenceInterval confidence_interval_90(const std::vector<double>& samples) {
  std::size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("confidence interval needs >= 2 samples");
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  double sd = std::sqrt(ss / static_cast<double>(n - 1));
  double t = t_quantile(0.95, static_cast<int>(n - 1));
  return ConfidenceInterval{mean, t * sd / std::sqrt(static_cast<double>(n))};
}

double t_quantile(double p, int nu) {
  if (nu < 1) throw std::invalid_argument("t quantile needs nu >= 1");
  if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("p must be in (0,1)");
  if (p == 0.5) return 0.0;
  bool upper = p > 0.5;
  double target = upper ? p : 1.0 - p;
  double lo = 0.0, hi = 1.0;
  while (t_cdf(hi, nu) < target) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (t_cdf(mid, nu) < target) lo = mid;
    else hi = mid;
  }
  double q = 0.5 * (lo + hi);
  return upper ? q : -q;
}

}  // namespace evonet
