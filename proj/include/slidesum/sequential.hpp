// sequential.hpp -- reference sliding-sum algorithms.
//
// These are the single-lane baselines: prefix and suffix folds, the O(N*w)
// naive sliding sum (the ground truth for every other implementation) and the
// monotonic-deque sliding minimum. All folds are strict left folds, so the
// results are well defined for non-associative operators as well.
#pragma once

#include <cstddef>
#include <deque>
#include <iterator>
#include <span>
#include <stdexcept>
#include <vector>

#include "slidesum/operators.hpp"

namespace slidesum {

/// Window length in elements. Always at least one.
class WindowSpec {
 public:
  explicit WindowSpec(std::size_t w) : w_(w) {
    if (w == 0) throw std::invalid_argument("window length must be at least 1");
  }

  std::size_t size() const noexcept { return w_; }

  /// N - w + 1 when N >= w, otherwise zero.
  std::size_t output_count(std::size_t n) const noexcept { return n >= w_ ? n - w_ + 1 : 0; }

  friend bool operator==(const WindowSpec&, const WindowSpec&) = default;

 private:
  std::size_t w_;
};

template <SlidingOperator Op>
std::vector<value_t<Op>> prefix_sum(std::span<const value_t<Op>> xs, const Op& op) {
  std::vector<value_t<Op>> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(out.empty() ? x : op(out.back(), x));
  return out;
}

/// out[i] = xs[i] ⊕ xs[i+1] ⊕ ... ⊕ xs[n-1], each evaluated as a left fold.
template <SlidingOperator Op>
std::vector<value_t<Op>> suffix_sums(std::span<const value_t<Op>> xs, const Op& op) {
  std::vector<value_t<Op>> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    out.push_back(left_fold(xs.begin() + static_cast<std::ptrdiff_t>(i), xs.end(), op));
  return out;
}

template <SlidingOperator Op, std::output_iterator<value_t<Op>> Out>
Out naive_sliding_sum(std::span<const value_t<Op>> xs, WindowSpec spec, const Op& op, Out out) {
  const std::size_t w = spec.size();
  const std::size_t count = spec.output_count(xs.size());
  for (std::size_t i = 0; i < count; ++i) {
    value_t<Op> acc = xs[i];
    for (std::size_t j = 1; j < w; ++j) acc = op(acc, xs[i + j]);
    *out++ = acc;
  }
  return out;
}

template <SlidingOperator Op>
std::vector<value_t<Op>> naive_sliding_sum(std::span<const value_t<Op>> xs, WindowSpec spec,
                                           const Op& op) {
  std::vector<value_t<Op>> out;
  out.reserve(spec.output_count(xs.size()));
  naive_sliding_sum(xs, spec, op, std::back_inserter(out));
  return out;
}

template <class T>
struct WindowMin {
  T value;
  std::size_t position;

  friend bool operator==(const WindowMin&, const WindowMin&) = default;
};

/// Sliding minimum with a monotonic deque of candidate indices. Ties resolve
/// to the leftmost position: equal values already queued are never evicted
/// by a newcomer.
template <std::totally_ordered T, std::output_iterator<WindowMin<T>> Out>
Out deque_sliding_min(std::span<const T> xs, WindowSpec spec, Out out) {
  const std::size_t w = spec.size();
  if (xs.size() < w) return out;
  std::deque<std::size_t> candidates;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (!candidates.empty() && xs[i] < xs[candidates.back()]) candidates.pop_back();
    candidates.push_back(i);
    if (i + 1 < w) continue;
    if (candidates.front() + w <= i) candidates.pop_front();
    *out++ = WindowMin<T>{xs[candidates.front()], candidates.front()};
  }
  return out;
}

template <std::totally_ordered T>
std::vector<WindowMin<T>> deque_sliding_min(std::span<const T> xs, WindowSpec spec) {
  std::vector<WindowMin<T>> out;
  out.reserve(spec.output_count(xs.size()));
  deque_sliding_min(xs, spec, std::back_inserter(out));
  return out;
}

}  // namespace slidesum
