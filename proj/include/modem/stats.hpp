#pragma once

#include <cstddef>
#include <vector>

namespace modem {

// Gaussian upper-tail probability Q(x) = P(N(0,1) > x).
double gaussian_tail_q(double x);

// Regularized lower incomplete gamma P(a, x); Q(a, x) = 1 - P(a, x).
double reg_gamma_p(double a, double x);
double reg_gamma_q(double a, double x);

// Survival function of the chi-square distribution with `dof` degrees of
// freedom evaluated at `x` (the p-value of a chi-square statistic).
double chi_square_sf(double x, int dof);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 0.0;
};

// Pearson chi-square goodness-of-fit against uniform expected counts.
ChiSquareResult chi_square_uniform(const std::vector<long long>& counts);

// Sample mean / variance over doubles (two-pass).
struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  size_t count = 0;
};
Moments compute_moments(const std::vector<double>& xs);

}  // namespace modem
