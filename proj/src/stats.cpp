#include "modem/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace modem {

double gaussian_tail_q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

namespace {

// Series expansion of P(a,x), converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a,x), converges for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double reg_gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("reg_gamma_p: domain");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double reg_gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("reg_gamma_q: domain");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_sf(double x, int dof) {
  if (dof < 1) throw std::invalid_argument("chi_square_sf: dof");
  if (x <= 0.0) return 1.0;
  return reg_gamma_q(0.5 * dof, 0.5 * x);
}

ChiSquareResult chi_square_uniform(const std::vector<long long>& counts) {
  if (counts.size() < 2) throw std::invalid_argument("chi_square_uniform: needs >= 2 bins");
  long long total = 0;
  for (long long c : counts) total += c;
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  if (expected <= 0.0) throw std::invalid_argument("chi_square_uniform: empty sample");
  ChiSquareResult r;
  for (long long c : counts) {
    const double d = static_cast<double>(c) - expected;
    r.statistic += d * d / expected;
  }
  r.dof = static_cast<int>(counts.size()) - 1;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

Moments compute_moments(const std::vector<double>& xs) {
  Moments m;
  m.count = xs.size();
  if (xs.empty()) return m;
  double s = 0.0;
  for (double x : xs) s += x;
  m.mean = s / static_cast<double>(xs.size());
  double v = 0.0;
  for (double x : xs) v += (x - m.mean) * (x - m.mean);
  m.variance = xs.size() > 1 ? v / static_cast<double>(xs.size() - 1) : 0.0;
  return m;
}

}  // namespace modem
