#pragma once

#include <string>
#include <vector>

namespace evonet {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
};

enum class FitModel {
  PowerLaw,        // y = alpha * x^beta
  InverseSqrt,     // y = a + b / sqrt(x)
  RhoRandom,       // y = c0 + c1*sqrt(rho) + c2/sqrt(rho)
  RhoGradual,      // y = c0 + c1/rho
};

const char* to_string(FitModel model);

struct FitResult {
  FitModel model;
  std::vector<double> coefficients;
  double r_squared = 0.0;
};

/// Least squares on log-log axes. Coefficients are (alpha, beta); R² is
/// reported for the linearized fit.
FitResult power_law_fit(const Series& s);

/// Linear least squares in 1/sqrt(x). Coefficients are (a, b).
FitResult inverse_sqrt_fit(const Series& s);

/// Least squares for the expansion-factor curve shapes. Random uses basis
/// {1, sqrt(rho), 1/sqrt(rho)}; gradual uses {1, 1/rho}.
FitResult rho_curve_fit(const Series& s, FitModel form);

/// Evaluate a fit at one x.
double fit_eval(const FitResult& fit, double x);

enum class Trend { Increasing, Decreasing, None };

const char* to_string(Trend trend);

struct MannKendallResult {
  long long s = 0;       // sum of pairwise signs
  double z = 0.0;        // normal approximation with continuity correction
  double p_value = 1.0;  // two-sided
  Trend trend = Trend::None;  // at alpha = 0.05
};

/// Nonparametric trend test with tie-corrected variance. Needs >= 4 points.
MannKendallResult mann_kendall(const std::vector<double>& y);

double pearson(const std::vector<double>& x, const std::vector<double>& y);

struct ConfidenceInterval {
  double mean = 0.0;
  double half_width = 0.0;
};

/// Two-sided Student-t interval at 90% confidence.
ConfidenceInterval confidence_interval_90(const std::vector<double>& samples);

/// Student-t upper quantile: P(T <= result) = p for nu degrees of freedom.
/// Accurate to better than 1e-6 absolute over the ranges used here.
double t_quantile(double p, int nu);

}  // namespace evonet
