// Small statistics kit for the sampler tests: total variation distance,
// chi-square statistic and quantile (via the regularized incomplete gamma).
#pragma once

#include <cstdint>
#include <vector>

namespace cubecoup {

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
// Chi-square CDF and upper quantile (bisection on gamma_p).
double chi_square_cdf(double x, int dof);
double chi_square_quantile(double p, int dof);

// Pearson statistic of an observed contingency table against the product of
// its empirical marginals; dof = (rows-1)(cols-1). Cells whose expected count
// is zero are skipped (their observed count is necessarily zero as well).
struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
};
ChiSquare chi_square_independence(const std::vector<std::vector<int64_t>>& table);

// Deterministic splittable RNG: a counter-keyed splitmix64 stream.
struct SplitMix {
  uint64_t state;
  explicit SplitMix(uint64_t seed) : state(seed) {}
  uint64_t next();
  // Uniform integer in [0, n) by rejection; exact and platform-stable.
  uint64_t uniform(uint64_t n);
  static uint64_t derive(uint64_t master, uint64_t counter);
};

}  // namespace cubecoup
