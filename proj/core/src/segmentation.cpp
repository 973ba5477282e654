#include "scorenet/segmentation.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "scorenet/error.h"

namespace scorenet {
namespace {

// Incrementally maintained kernel sum over a growing window. Because the
// signal takes integer ids in [0, K), the Gram sum is a quadratic form in the
// id histogram and one insertion costs O(K).
class KernelWindow {
 public:
  explicit KernelWindow(const std::vector<double>& kernel)
      : kernel_(kernel), dot_(kernel.size(), 0.0) {}

  void add(int id) {
    const auto j = static_cast<std::size_t>(id);
    sum_ += 2.0 * dot_[j] + kernel_[0];
    for (std::size_t l = 0; l < dot_.size(); ++l) {
      dot_[l] += kernel_[l > j ? l - j : j - l];
    }
    ++length_;
  }

  double cost() const {
    if (length_ == 0) return 0.0;
    const double n = static_cast<double>(length_);
    return n - sum_ / n;
  }

 private:
  const std::vector<double>& kernel_;
  std::vector<double> dot_;  // (E c)_l
  double sum_ = 0.0;
  std::size_t length_ = 0;
};

std::vector<double> kernel_table(std::size_t alphabet, double gamma) {
  std::vector<double> out(std::max<std::size_t>(alphabet, 1));
  for (std::size_t d = 0; d < out.size(); ++d) {
    const double dd = static_cast<double>(d);
    out[d] = std::exp(-gamma * dd * dd);
  }
  return out;
}

std::size_t alphabet_of(const LabeledSeries& series) {
  std::size_t k = series.dictionary.size();
  for (int v : series.values) k = std::max(k, static_cast<std::size_t>(v) + 1);
  return k;
}

struct Split {
  std::size_t at = 0;
  double gain = -1.0;
};

Split best_split(const LabeledSeries& series, std::size_t a, std::size_t b, std::size_t min_size,
                 const std::vector<double>& kernel) {
  const std::size_t n = b - a;
  std::vector<double> left(n + 1, 0.0);
  std::vector<double> right(n + 1, 0.0);
  KernelWindow forward(kernel);
  for (std::size_t i = 0; i < n; ++i) {
    forward.add(series.values[a + i]);
    left[i + 1] = forward.cost();
  }
  KernelWindow backward(kernel);
  for (std::size_t i = n; i-- > 0;) {
    backward.add(series.values[a + i]);
    right[i] = backward.cost();
  }
  const double total = left[n];
  Split best;
  for (std::size_t offset = min_size; offset + min_size <= n; ++offset) {
    const double gain = total - left[offset] - right[offset];
    if (gain > best.gain) best = Split{a + offset, gain};
  }
  return best;
}

}  // namespace

std::vector<std::size_t> Segmentation::change_points() const {
  if (breakpoints.empty()) return {};
  return {breakpoints.begin(), breakpoints.end() - 1};
}

std::vector<std::pair<std::size_t, std::size_t>> Segmentation::segments() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t end : breakpoints) {
    out.emplace_back(start, end);
    start = end;
  }
  return out;
}

double rbf_cost(const LabeledSeries& series, std::size_t a, std::size_t b, const CostModel& model) {
  if (a >= b || b > series.size()) throw Error(ErrorCode::kInvalidArgument, "empty cost window");
  const auto kernel = kernel_table(alphabet_of(series), model.gamma);
  std::vector<double> counts(kernel.size(), 0.0);
  for (std::size_t i = a; i < b; ++i) counts[static_cast<std::size_t>(series.values[i])] += 1.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0.0) continue;
    for (std::size_t l = 0; l < counts.size(); ++l) {
      if (counts[l] != 0.0) sum += counts[k] * counts[l] * kernel[k > l ? k - l : l - k];
    }
  }
  const double n = static_cast<double>(b - a);
  return std::max(0.0, n - sum / n);
}

CostModel choose_gamma(const LabeledSeries& series) {
  if (series.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "kernel bandwidth needs at least two events");
  }
  const std::size_t k = alphabet_of(series);
  std::vector<std::uint64_t> counts(k, 0);
  for (int v : series.values) ++counts[static_cast<std::size_t>(v)];

  // pairs[d] = number of unordered pairs whose ids differ by d (d >= 1).
  std::vector<std::uint64_t> pairs(k, 0);
  std::uint64_t total = 0;
  for (std::size_t d = 1; d < k; ++d) {
    for (std::size_t i = 0; i + d < k; ++i) pairs[d] += counts[i] * counts[i + d];
    total += pairs[d];
  }
  if (total == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "series is constant: kernel bandwidth undefined and segmentation is vacuous");
  }
  auto squared_at = [&](std::uint64_t rank) {
    std::uint64_t seen = 0;
    for (std::size_t d = 1; d < k; ++d) {
      seen += pairs[d];
      if (rank < seen) return static_cast<double>(d * d);
    }
    return static_cast<double>((k - 1) * (k - 1));
  };
  const double median = total % 2 == 1
                            ? squared_at(total / 2)
                            : 0.5 * (squared_at(total / 2 - 1) + squared_at(total / 2));
  return CostModel{1.0 / median};
}

Segmentation binary_segmentation(const LabeledSeries& series, double penalty,
                                 const CostModel& model, std::size_t min_size) {
  if (!(penalty > 0.0)) throw Error(ErrorCode::kInvalidArgument, "penalty must be positive");
  if (!(model.gamma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  if (min_size < 2) throw Error(ErrorCode::kInvalidArgument, "min_size must be at least 2");
  if (series.size() == 0) throw Error(ErrorCode::kEmptyInput, "empty series");

  const auto kernel = kernel_table(alphabet_of(series), model.gamma);
  std::vector<std::pair<std::size_t, double>> accepted;
  std::vector<std::pair<std::size_t, std::size_t>> pending{{0, series.size()}};
  while (!pending.empty()) {
    const auto [a, b] = pending.back();
    pending.pop_back();
    if (b - a < 2 * min_size) continue;
    const Split split = best_split(series, a, b, min_size, kernel);
    if (split.gain > penalty) {
      accepted.emplace_back(split.at, split.gain);
      pending.emplace_back(split.at, b);
      pending.emplace_back(a, split.at);
    }
  }
  std::sort(accepted.begin(), accepted.end());

  Segmentation out;
  out.penalty = penalty;
  out.gamma = model.gamma;
  out.min_size = min_size;
  for (const auto& [at, gain] : accepted) {
    out.breakpoints.push_back(at);
    out.gains.push_back(gain);
  }
  out.breakpoints.push_back(series.size());
  return out;
}

std::vector<int> breakpoints_to_bars(const Segmentation& segmentation, const LabeledSeries& series) {
  std::vector<int> out;
  for (std::size_t at : segmentation.change_points()) {
    if (at >= series.bars.size()) throw Error(ErrorCode::kInvalidArgument, "breakpoint past series end");
    out.push_back(series.bars[at]);
  }
  return out;
}

}  // namespace scorenet
