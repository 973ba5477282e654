#pragma once

// Kernel change-point detection on a LabeledSeries: Gaussian-kernel (rbf)
// segment cost and greedy binary segmentation with a penalty stopping rule.

#include <cstddef>
#include <utility>
#include <vector>

#include "scorenet/sequence.h"

namespace scorenet {

struct CostModel {
  double gamma = 1.0;
};

/// Preset penalties calibrated per movement of a four-movement work.
inline constexpr double kDefaultPenalty = 3.0;
inline constexpr double kMovementPenalties[] = {1.8, 2.8, 2.6, 2.6};

struct Segmentation {
  /// Exclusive segment ends; the last entry equals the series length.
  std::vector<std::size_t> breakpoints;
  double penalty = kDefaultPenalty;
  double gamma = 1.0;
  std::size_t min_size = 2;
  /// Gain of each accepted split, aligned with change_points().
  std::vector<double> gains;

  /// Breakpoints without the terminal series length.
  std::vector<std::size_t> change_points() const;
  std::vector<std::pair<std::size_t, std::size_t>> segments() const;
};

/// (b - a) - (1 / (b - a)) * sum_{s,t in [a,b)} exp(-gamma (y_s - y_t)^2).
double rbf_cost(const LabeledSeries& series, std::size_t a, std::size_t b, const CostModel& model);

/// gamma = 1 / median of the nonzero squared pairwise differences.
/// The median is exact: it is read from the id histogram, not sampled.
CostModel choose_gamma(const LabeledSeries& series);

Segmentation binary_segmentation(const LabeledSeries& series, double penalty,
                                 const CostModel& model, std::size_t min_size = 2);

/// Bar of the first event of every segment after the first.
std::vector<int> breakpoints_to_bars(const Segmentation& segmentation, const LabeledSeries& series);

}  // namespace scorenet
