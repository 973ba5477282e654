#pragma once

#include <cstddef>
#include <span>

namespace scorenet {

struct PowerLawFit {
  double alpha = 0.0;         // maximum-likelihood exponent over the tail
  double alpha_approx = 0.0;  // closed-form estimate 1 + n / sum ln(x / (xmin - 1/2))
  int xmin = 1;
  double ks_stat = 0.0;
  std::size_t n_tail = 0;
};

/// Hurwitz zeta: sum_{k >= 0} (k + q)^-s, for s > 1 and q > 0.
double hurwitz_zeta(double s, double q);

/// Discrete power-law fit p(x) ~ x^-alpha for x >= xmin. For every candidate
/// xmin the exponent is the exact discrete MLE (the closed-form estimate is
/// reported alongside); xmin is the one minimising the Kolmogorov-Smirnov distance
/// between the empirical and fitted tail CDFs.
///
/// Throws when values are non-positive, all equal, or leave fewer than two
/// tail points.
PowerLawFit fit_power_law(std::span<const int> values);

/// log p(x) of a discrete power law, summed over a tail.
double power_law_log_likelihood(std::span<const int> tail, double alpha, int xmin);

}  // namespace scorenet
