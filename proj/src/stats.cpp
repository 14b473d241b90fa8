#include "cubecoup/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace cubecoup {

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double s = 0;
  for (size_t i = 0; i < p.size(); i++) s += std::fabs(p[i] - q[i]);
  return s / 2.0;
}

// Series and continued-fraction evaluation of P(a,x), standard approach.
static double gamma_p_series(double a, double x) {
  double ap = a, sum = 1.0 / a, del = sum;
  for (int n = 0; n < 500; n++) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

static double gamma_q_contfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; i++) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_p(double a, double x) {
  if (x < 0 || a <= 0) throw std::invalid_argument("gamma_p: bad arguments");
  if (x == 0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_contfrac(a, x);
}

double chi_square_cdf(double x, int dof) {
  if (dof <= 0) throw std::invalid_argument("chi_square_cdf: dof must be positive");
  if (x <= 0) return 0.0;
  return gamma_p(dof / 2.0, x / 2.0);
}

double chi_square_quantile(double p, int dof) {
  if (p <= 0 || p >= 1) throw std::invalid_argument("chi_square_quantile: p in (0,1)");
  double lo = 0.0, hi = dof + 10.0;
  while (chi_square_cdf(hi, dof) < p) hi *= 2.0;
  for (int i = 0; i < 200; i++) {
    double mid = (lo + hi) / 2.0;
    if (chi_square_cdf(mid, dof) < p) lo = mid;
    else hi = mid;
  }
  return (lo + hi) / 2.0;
}

ChiSquare chi_square_independence(const std::vector<std::vector<int64_t>>& table) {
  size_t rows = table.size();
  size_t cols = rows ? table[0].size() : 0;
  std::vector<double> rsum(rows, 0), csum(cols, 0);
  double total = 0;
  for (size_t i = 0; i < rows; i++)
    for (size_t j = 0; j < cols; j++) {
      rsum[i] += (double)table[i][j];
      csum[j] += (double)table[i][j];
      total += (double)table[i][j];
    }
  ChiSquare out;
  int nonzero_rows = 0, nonzero_cols = 0;
  for (size_t i = 0; i < rows; i++)
    if (rsum[i] > 0) nonzero_rows++;
  for (size_t j = 0; j < cols; j++)
    if (csum[j] > 0) nonzero_cols++;
  out.dof = std::max(1, (nonzero_rows - 1) * (nonzero_cols - 1));
  for (size_t i = 0; i < rows; i++)
    for (size_t j = 0; j < cols; j++) {
      double expect = rsum[i] * csum[j] / total;
      if (expect <= 0) continue;
      double diff = (double)table[i][j] - expect;
      out.statistic += diff * diff / expect;
    }
  return out;
}

uint64_t SplitMix::next() {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

uint64_t SplitMix::uniform(uint64_t n) {
  if (n == 0) throw std::invalid_argument("SplitMix::uniform: n == 0");
  uint64_t limit = ~0ull - (~0ull % n);
  uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

uint64_t SplitMix::derive(uint64_t master, uint64_t counter) {
  SplitMix s(master ^ (counter * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
  s.next();
  return s.next();
}

}  // namespace cubecoup
