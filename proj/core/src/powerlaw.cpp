#include "scorenet/powerlaw.h"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "scorenet/error.h"

namespace scorenet {

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0) || !(q > 0.0)) throw Error(ErrorCode::kInvalidArgument, "hurwitz_zeta needs s > 1, q > 0");
  // Direct sum up to a >= 10, then Euler-Maclaurin with Bernoulli terms
  // through B_12.
  static constexpr std::array<double, 6> kBernoulliOverFactorial = {
      1.0 / 6.0 / 2.0,
      -1.0 / 30.0 / 24.0,
      1.0 / 42.0 / 720.0,
      -1.0 / 30.0 / 40320.0,
      5.0 / 66.0 / 3628800.0,
      -691.0 / 2730.0 / 479001600.0,
  };
  double sum = 0.0;
  double a = q;
  while (a < 10.0) {
    sum += std::pow(a, -s);
    a += 1.0;
  }
  const double a_pow = std::pow(a, -s);
  sum += a * a_pow / (s - 1.0) + 0.5 * a_pow;
  double rising = s;           // s (s+1) ... (s + 2j - 2)
  double term_pow = a_pow / a;  // a^(-s - 2j + 1)
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    sum += kBernoulliOverFactorial[j] * rising * term_pow;
    rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    term_pow /= a * a;
  }
  return sum;
}

double power_law_log_likelihood(std::span<const int> tail, double alpha, int xmin) {
  double log_sum = 0.0;
  for (int x : tail) log_sum += std::log(static_cast<double>(x));
  return -alpha * log_sum - static_cast<double>(tail.size()) * std::log(hurwitz_zeta(alpha, xmin));
}

PowerLawFit fit_power_law(std::span<const int> values) {
  if (values.size() < 2) throw Error(ErrorCode::kInvalidArgument, "power-law fit needs at least two values");
  std::vector<int> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() <= 0) throw Error(ErrorCode::kInvalidArgument, "power-law fit needs positive values");
  if (sorted.front() == sorted.back()) {
    throw Error(ErrorCode::kInvalidArgument, "power-law fit is undefined when all values are equal");
  }
  std::vector<int> unique = sorted;
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  PowerLawFit best;
  bool have = false;
  // The largest value is never a candidate: its tail would be one point.
  for (std::size_t u = 0; u + 1 < unique.size(); ++u) {
    const int xmin = unique[u];
    const auto first = std::lower_bound(sorted.begin(), sorted.end(), xmin);
    const std::span<const int> tail(&*first, static_cast<std::size_t>(sorted.end() - first));
    const double n = static_cast<double>(tail.size());

    double log_sum = 0.0;
    double shifted = 0.0;
    for (int x : tail) {
      log_sum += std::log(static_cast<double>(x));
      shifted += std::log(static_cast<double>(x) / (xmin - 0.5));
    }
    const double approx = 1.0 + n / shifted;
    const auto negative_ll = [&](double alpha) {
      return alpha * log_sum + n * std::log(hurwitz_zeta(alpha, xmin));
    };
    const double alpha = boost::math::tools::brent_find_minima(negative_ll, 1.0 + 1e-6, 30.0, 50).first;

    const double norm = hurwitz_zeta(alpha, xmin);
    double ks = 0.0;
    for (std::size_t v = u; v < unique.size(); ++v) {
      const int x = unique[v];
      const auto upto = std::upper_bound(tail.begin(), tail.end(), x) - tail.begin();
      const double empirical = static_cast<double>(upto) / n;
      const double model = 1.0 - hurwitz_zeta(alpha, x + 1.0) / norm;
      ks = std::max(ks, std::abs(empirical - model));
    }
    if (!have || ks < best.ks_stat) {
      best = PowerLawFit{alpha, approx, xmin, ks, tail.size()};
      have = true;
    }
  }
  return best;
}

}  // namespace scorenet
