// lanes.hpp -- lane-parallel sliding sums.
//
// Two algorithms over a logical vector of P lanes:
//
//   scalar input  elements arrive one at a time; every element is broadcast
//                 into the first w lanes of the carry and one finished window
//                 leaves through lane 0 per step. Works for any operator.
//   vector input  elements arrive in blocks of P; the block's windowed prefix
//                 folds are combined with the carry from the previous block to
//                 yield P windows at once. Requires an associative operator.
//
// Carry invariant (both algorithms): immediately before consuming x_i, lane t
// of the carry (0 <= t <= w-2) holds x_{i-w+1+t} ⊕ ... ⊕ x_{i-1}; all other
// lanes hold the identity.
//
// The block scans take ceil(log2(w)) rounds. Round r extends fold lengths from
// l to l' in {2l-1, 2l} using two shifted combines: one producing the l'-fold
// and one producing the (l'-1)-fold needed by the next round.
//
// For blocks of up to 16 lanes the window length is made a compile-time
// constant, so every shift distance is fixed and the lane loops unroll.
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <iterator>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "slidesum/dispatch.hpp"
#include "slidesum/operators.hpp"
#include "slidesum/sequential.hpp"
#include "slidesum/simd_u64.hpp"

namespace slidesum {

inline constexpr std::size_t kMaxLanes = 64;

template <class T, std::size_t P>
  requires(P >= 2 && std::has_single_bit(P))
struct LaneBlock {
  static constexpr std::size_t lane_count = P;

  std::array<T, P> lanes;

  static constexpr LaneBlock filled(const T& v) {
    LaneBlock b;
    b.lanes.fill(v);
    return b;
  }

  constexpr T& operator[](std::size_t i) { return lanes[i]; }
  constexpr const T& operator[](std::size_t i) const { return lanes[i]; }

  friend bool operator==(const LaneBlock&, const LaneBlock&) = default;
};

/// lane i <- lane i - D; the lowest D lanes receive `fill`.
template <std::size_t D, class T, std::size_t P>
constexpr LaneBlock<T, P> shift_toward_high(const LaneBlock<T, P>& x, const T& fill) {
  LaneBlock<T, P> out;
  for (std::size_t i = 0; i < P; ++i) out.lanes[i] = i >= D ? x.lanes[i - D] : fill;
  return out;
}

/// lane i <- lane i + D; the top D lanes receive `fill`.
template <std::size_t D, class T, std::size_t P>
constexpr LaneBlock<T, P> shift_toward_low(const LaneBlock<T, P>& x, const T& fill) {
  LaneBlock<T, P> out;
  for (std::size_t i = 0; i < P; ++i) out.lanes[i] = i + D < P ? x.lanes[i + D] : fill;
  return out;
}

template <class T, std::size_t P>
constexpr LaneBlock<T, P> shift_toward_high(const LaneBlock<T, P>& x, std::size_t d, const T& fill) {
  LaneBlock<T, P> out;
  for (std::size_t i = 0; i < P; ++i) out.lanes[i] = i >= d ? x.lanes[i - d] : fill;
  return out;
}

template <class T, std::size_t P>
constexpr LaneBlock<T, P> shift_toward_low(const LaneBlock<T, P>& x, std::size_t d, const T& fill) {
  LaneBlock<T, P> out;
  for (std::size_t i = 0; i < P; ++i) out.lanes[i] = i + d < P ? x.lanes[i + d] : fill;
  return out;
}

template <MonoidOperator Op, std::size_t P>
LaneBlock<value_t<Op>, P> combine_lanes(const Op& op, const LaneBlock<value_t<Op>, P>& a,
                                        const LaneBlock<value_t<Op>, P>& b) {
  LaneBlock<value_t<Op>, P> out;
  for (std::size_t i = 0; i < P; ++i) out.lanes[i] = op(a.lanes[i], b.lanes[i]);
  return out;
}

namespace detail {

enum class ScanDirection { from_low, from_high };

// Folds D lanes further away, in scan direction. Anything beyond P lanes is padding.
template <ScanDirection Dir, std::size_t D, class T, std::size_t P>
LaneBlock<T, P> farther(const LaneBlock<T, P>& b, const T& fill) {
  constexpr std::size_t d = std::min(D, P);
  if constexpr (Dir == ScanDirection::from_low) return shift_toward_high<d>(b, fill);
  else return shift_toward_low<d>(b, fill);
}

// `near` covers the lanes closest to i: right operand from low, left from high.
template <ScanDirection Dir, class Op, class Block>
Block join(const Op& op, const Block& far, const Block& near) {
  if constexpr (Dir == ScanDirection::from_low) return combine_lanes(op, far, near);
  else return combine_lanes(op, near, far);
}

template <ScanDirection Dir, std::size_t W, int Round, std::size_t Len, class Op, std::size_t P>
LaneBlock<value_t<Op>, P> scan_rounds(const LaneBlock<value_t<Op>, P>& full,
                                      const LaneBlock<value_t<Op>, P>& short_by_one,
                                      const Op& op) {
  const auto id = op.identity();
  constexpr std::size_t step = std::size_t{1} << Round;
  constexpr std::size_t next = (W + step - 1) / step;
  if constexpr (next == 2 * Len) {
    const auto next_full = join<Dir>(op, farther<Dir, Len>(full, id), full);
    if constexpr (Round == 0) return next_full;
    else
      return scan_rounds<Dir, W, Round - 1, next>(
          next_full, join<Dir>(op, farther<Dir, Len>(short_by_one, id), full), op);
  } else {
    const auto next_full = join<Dir>(op, farther<Dir, Len>(short_by_one, id), full);
    if constexpr (Round == 0) return next_full;
    else
      return scan_rounds<Dir, W, Round - 1, next>(
          next_full, join<Dir>(op, farther<Dir, Len - 1>(short_by_one, id), short_by_one), op);
  }
}

// Lane i ends up holding the fold of the W lanes ending at i (from_low) or
// starting at i (from_high), truncated at the block edge.
template <ScanDirection Dir, std::size_t W, MonoidOperator Op, std::size_t P>
LaneBlock<value_t<Op>, P> windowed_scan(const LaneBlock<value_t<Op>, P>& x, const Op& op) {
  using Block = LaneBlock<value_t<Op>, P>;
  if constexpr (W == 0) return Block::filled(op.identity());
  else if constexpr (W == 1) return x;
  else
    return scan_rounds<Dir, W, static_cast<int>(std::bit_width(W - 1)) - 1, 1>(
        x, Block::filled(op.identity()), op);
}

// Same scan with the window known only at run time. Used for wide blocks,
// where specializing every window length costs too much compile time.
template <ScanDirection Dir, MonoidOperator Op, std::size_t P>
LaneBlock<value_t<Op>, P> windowed_scan(const LaneBlock<value_t<Op>, P>& x, std::size_t window,
                                        const Op& op) {
  using Block = LaneBlock<value_t<Op>, P>;
  const auto id = op.identity();
  if (window <= 1) return window == 1 ? x : Block::filled(id);
  const auto far = [&](const Block& b, std::size_t d) {
    d = std::min(d, P);
    if constexpr (Dir == ScanDirection::from_low) return shift_toward_high(b, d, id);
    else return shift_toward_low(b, d, id);
  };
  Block full = x;
  Block short_by_one = Block::filled(id);
  std::size_t len = 1;
  for (int r = static_cast<int>(std::bit_width(window - 1)) - 1; r >= 0; --r) {
    const std::size_t step = std::size_t{1} << r;
    const std::size_t next = (window + step - 1) / step;
    Block next_full, next_short;
    if (next == 2 * len) {
      next_full = join<Dir>(op, far(full, len), full);
      if (r > 0) next_short = join<Dir>(op, far(short_by_one, len), full);
    } else {
      next_full = join<Dir>(op, far(short_by_one, len), full);
      if (r > 0) next_short = join<Dir>(op, far(short_by_one, len - 1), short_by_one);
    }
    full = next_full;
    short_by_one = next_short;
    len = next;
  }
  return full;
}

template <MonoidOperator Op, std::size_t P>
LaneBlock<value_t<Op>, P> block_carry(const LaneBlock<value_t<Op>, P>& x, std::size_t w,
                                      const Op& op) {
  const auto tails = windowed_scan<ScanDirection::from_high>(x, w - 1, op);
  return shift_toward_low(tails, P - w + 1, op.identity());
}

template <MonoidOperator Op, std::size_t P, std::size_t W>
LaneBlock<value_t<Op>, P> block_carry(const LaneBlock<value_t<Op>, P>& x, const Op& op) {
  const auto tails = windowed_scan<ScanDirection::from_high, W - 1>(x, op);
  return shift_toward_low<P - W + 1>(tails, op.identity());
}

template <class T, std::size_t P>
LaneBlock<T, P> load_block(std::span<const T> src, const T& fill) {
  auto b = LaneBlock<T, P>::filled(fill);
  std::copy_n(src.begin(), std::min(src.size(), P), b.lanes.begin());
  return b;
}

inline void require_window_fits(std::size_t w, std::size_t p) {
  if (w > p)
    throw std::invalid_argument("window length " + std::to_string(w) + " exceeds lane count " +
                                std::to_string(p));
}

}  // namespace detail

/// Windowed prefix of one block: lane i holds x_{max(0,i-w+1)} ⊕ ... ⊕ x_i.
template <MonoidOperator Op, std::size_t P>
LaneBlock<value_t<Op>, P> lane_windowed_prefix(const LaneBlock<value_t<Op>, P>& x, std::size_t w,
                                               const Op& op) {
  detail::require_window_fits(w, P);
  return detail::windowed_scan<detail::ScanDirection::from_low>(x, w, op);
}

/// Carry handed to the next block: lane t holds x_{P-w+1+t} ⊕ ... ⊕ x_{P-1}
/// for t < w-1, identity elsewhere.
template <MonoidOperator Op, std::size_t P>
LaneBlock<value_t<Op>, P> lane_block_suffix(const LaneBlock<value_t<Op>, P>& x, std::size_t w,
                                            const Op& op) {
  detail::require_window_fits(w, P);
  return detail::block_carry<Op, P>(x, w, op);
}

/// Lane vector carried between inputs, plus bookkeeping.
template <MonoidOperator Op, std::size_t P>
struct CarryState {
  LaneBlock<value_t<Op>, P> y;
  std::size_t w;
  std::size_t consumed;

  /// Seeds the carry with the suffix folds of the first w-1 inputs.
  static CarryState from_head(std::span<const value_t<Op>> head, std::size_t w, const Op& op) {
    CarryState s{LaneBlock<value_t<Op>, P>::filled(op.identity()), w, head.size()};
    const auto suffixes = suffix_sums(head, op);
    std::copy(suffixes.begin(), suffixes.end(), s.y.lanes.begin());
    return s;
  }
};

namespace detail {

// Window lengths are specialized at compile time up to this many lanes.
inline constexpr std::size_t kMaxSpecializedLanes = 16;

template <MonoidOperator Op, std::size_t P, class Out>
Out scalar_input_runtime(std::span<const value_t<Op>> xs, std::size_t w, const Op& op, Out out) {
  using Block = LaneBlock<value_t<Op>, P>;
  const auto id = op.identity();
  auto state = CarryState<Op, P>::from_head(xs.first(w - 1), w, op);
  Block broadcast = Block::filled(id);
  for (std::size_t i = w - 1; i < xs.size(); ++i) {
    std::fill_n(broadcast.lanes.begin(), w, xs[i]);
    state.y = combine_lanes(op, state.y, broadcast);
    *out++ = state.y[0];
    state.y = shift_toward_low<1>(state.y, id);
    ++state.consumed;
  }
  return out;
}

template <MonoidOperator Op, std::size_t P, class Out>
Out vector_input_runtime(std::span<const value_t<Op>> xs, std::size_t w, const Op& op, Out out) {
  using T = value_t<Op>;
  const T id = op.identity();
  auto state = CarryState<Op, P>::from_head(xs.first(w - 1), w, op);
  std::size_t k = w - 1;
  for (; k + P <= xs.size(); k += P) {
    const auto x = load_block<T, P>(xs.subspan(k, P), id);
    const auto heads = windowed_scan<ScanDirection::from_low>(x, w, op);
    const auto sums = combine_lanes(op, state.y, heads);
    out = std::copy(sums.lanes.begin(), sums.lanes.end(), out);
    state.y = block_carry<Op, P>(x, w, op);
    state.consumed += P;
  }
  if (const std::size_t rest = xs.size() - k; rest > 0) {
    const auto x = load_block<T, P>(xs.subspan(k), id);
    const auto heads = windowed_scan<ScanDirection::from_low>(x, w, op);
    const auto sums = combine_lanes(op, state.y, heads);
    out = std::copy_n(sums.lanes.begin(), rest, out);
    state.consumed += rest;
  }
  return out;
}

template <MonoidOperator Op, std::size_t P, std::size_t W, class Out>
Out scalar_input_fixed(std::span<const value_t<Op>> xs, const Op& op, Out out) {
  using Block = LaneBlock<value_t<Op>, P>;
  const auto id = op.identity();
  auto state = CarryState<Op, P>::from_head(xs.first(W - 1), W, op);
  Block broadcast = Block::filled(id);
  for (std::size_t i = W - 1; i < xs.size(); ++i) {
    for (std::size_t t = 0; t < W; ++t) broadcast.lanes[t] = xs[i];
    state.y = combine_lanes(op, state.y, broadcast);
    *out++ = state.y[0];
    state.y = shift_toward_low<1>(state.y, id);
    ++state.consumed;
  }
  return out;
}

template <MonoidOperator Op, std::size_t P, std::size_t W, class Out>
Out vector_input_fixed(std::span<const value_t<Op>> xs, const Op& op, Out out) {
  using T = value_t<Op>;
  const T id = op.identity();
  auto state = CarryState<Op, P>::from_head(xs.first(W - 1), W, op);

  std::size_t k = W - 1;
  for (; k + P <= xs.size(); k += P) {
    const auto x = load_block<T, P>(xs.subspan(k, P), id);
    const auto heads = windowed_scan<ScanDirection::from_low, W>(x, op);
    const auto sums = combine_lanes(op, state.y, heads);
    out = std::copy(sums.lanes.begin(), sums.lanes.end(), out);
    state.y = block_carry<Op, P, W>(x, op);
    state.consumed += P;
  }
  if (const std::size_t rest = xs.size() - k; rest > 0) {
    // Padding lanes sit above every live lane, so they never reach an output.
    const auto x = load_block<T, P>(xs.subspan(k), id);
    const auto heads = windowed_scan<ScanDirection::from_low, W>(x, op);
    const auto sums = combine_lanes(op, state.y, heads);
    out = std::copy_n(sums.lanes.begin(), rest, out);
    state.consumed += rest;
  }
  return out;
}

template <MonoidOperator Op, std::size_t P, class Out>
Out scalar_input_impl(std::span<const value_t<Op>> xs, std::size_t w, const Op& op, Out out) {
  if (xs.size() < w) return out;
  if constexpr (simd::Accelerated<Op, P>) {
    return simd::scalar_input<Op, P>(xs, w, op, out);
  } else if constexpr (P > kMaxSpecializedLanes) {
    return scalar_input_runtime<Op, P>(xs, w, op, out);
  } else {
    auto run = [&]<std::size_t W>() { return scalar_input_fixed<Op, P, W>(xs, op, out); };
    return with_window<P>(w, run);
  }
}

template <MonoidOperator Op, std::size_t P, class Out>
Out vector_input_impl(std::span<const value_t<Op>> xs, std::size_t w, const Op& op, Out out) {
  if (xs.size() < w) return out;
  if constexpr (simd::Accelerated<Op, P>) {
    return simd::vector_input<Op, P>(xs, w, op, out);
  } else if constexpr (P > kMaxSpecializedLanes) {
    return vector_input_runtime<Op, P>(xs, w, op, out);
  } else {
    auto run = [&]<std::size_t W>() { return vector_input_fixed<Op, P, W>(xs, op, out); };
    return with_window<P>(w, run);
  }
}

// Identity-free operators run over std::optional lanes.
template <SlidingOperator Op, class Out, class Run>
Out run_lifted(std::span<const value_t<Op>> xs, const Op& op, Out out, Run&& run) {
  if constexpr (MonoidOperator<Op>) {
    return run(xs, op, out);
  } else {
    using Lifted = adjoin_identity<Op>;
    std::vector<value_t<Lifted>> lifted(xs.begin(), xs.end());
    std::vector<value_t<Lifted>> sums;
    sums.reserve(xs.size());
    run(std::span<const value_t<Lifted>>(lifted), Lifted{op}, std::back_inserter(sums));
    for (const auto& s : sums) *out++ = *s;
    return out;
  }
}

}  // namespace detail

/// Scalar-input sliding sum. Matches naive_sliding_sum exactly for any
/// operator, associative or not. Requires w <= lanes.
template <SlidingOperator Op, std::output_iterator<value_t<Op>> Out>
Out scalar_input_sliding_sum(std::span<const value_t<Op>> xs, WindowSpec spec, const Op& op,
                             std::size_t lanes, Out out) {
  detail::require_window_fits(spec.size(), lanes);
  return detail::with_lane_count(lanes, [&]<std::size_t P>() {
    return detail::run_lifted(xs, op, out, [&](auto in, const auto& mop, auto o) {
      return detail::scalar_input_impl<std::decay_t<decltype(mop)>, P>(in, spec.size(), mop, o);
    });
  });
}

template <SlidingOperator Op>
std::vector<value_t<Op>> scalar_input_sliding_sum(std::span<const value_t<Op>> xs,
                                                  WindowSpec spec, const Op& op,
                                                  std::size_t lanes) {
  std::vector<value_t<Op>> out;
  out.reserve(spec.output_count(xs.size()));
  scalar_input_sliding_sum(xs, spec, op, lanes, std::back_inserter(out));
  return out;
}

/// Vector-input sliding sum: P outputs per block. Requires w <= lanes and an
/// associative operator (the final combine regroups two partial folds).
template <SlidingOperator Op, std::output_iterator<value_t<Op>> Out>
Out vector_input_sliding_sum(std::span<const value_t<Op>> xs, WindowSpec spec, const Op& op,
                             std::size_t lanes, Out out) {
  if (!op.is_associative())
    throw std::invalid_argument("vector-input sliding sum requires an associative operator");
  detail::require_window_fits(spec.size(), lanes);
  return detail::with_lane_count(lanes, [&]<std::size_t P>() {
    return detail::run_lifted(xs, op, out, [&](auto in, const auto& mop, auto o) {
      return detail::vector_input_impl<std::decay_t<decltype(mop)>, P>(in, spec.size(), mop, o);
    });
  });
}

template <SlidingOperator Op>
std::vector<value_t<Op>> vector_input_sliding_sum(std::span<const value_t<Op>> xs,
                                                  WindowSpec spec, const Op& op,
                                                  std::size_t lanes) {
  std::vector<value_t<Op>> out;
  out.reserve(spec.output_count(xs.size()));
  vector_input_sliding_sum(xs, spec, op, lanes, std::back_inserter(out));
  return out;
}

/// Widest hardware vector, in elements of T, for the target this is compiled for.
template <class T>
constexpr std::size_t native_lane_count() {
#if defined(__AVX512F__)
  constexpr std::size_t bytes = 64;
#elif defined(__AVX__)
  constexpr std::size_t bytes = 32;
#else
  constexpr std::size_t bytes = 16;
#endif
  return std::max<std::size_t>(2, std::bit_floor(std::max<std::size_t>(1, bytes / sizeof(T))));
}

enum class SlidingPath { vector_input, scalar_input, naive };

inline const char* to_string(SlidingPath p) {
  switch (p) {
    case SlidingPath::vector_input: return "vector-input";
    case SlidingPath::scalar_input: return "scalar-input";
    case SlidingPath::naive: return "naive";
  }
  return "?";
}

struct LaneOptions {
  std::size_t lanes = 0;  // 0: pick automatically
};

template <class Out>
struct SlidingResult {
  Out out;
  SlidingPath path;
  std::size_t lanes;  // 0 on the naive path
};

/// Lane count used by sliding_sum when none is forced: the native width,
/// widened to the next power of two at or above w.
template <class T>
constexpr std::size_t default_lane_count(std::size_t w) {
  return std::max(native_lane_count<T>(), std::bit_ceil(w));
}

/// Vector input for associative operators, scalar input otherwise, naive
/// when the window does not fit in the lanes.
template <SlidingOperator Op, std::output_iterator<value_t<Op>> Out>
SlidingResult<Out> sliding_sum(std::span<const value_t<Op>> xs, WindowSpec spec, const Op& op,
                               Out out, LaneOptions opts = {}) {
  const std::size_t lanes =
      opts.lanes != 0 ? opts.lanes : default_lane_count<value_t<Op>>(spec.size());
  if (spec.size() > lanes || lanes > kMaxLanes)
    return {naive_sliding_sum(xs, spec, op, out), SlidingPath::naive, 0};
  if (op.is_associative())
    return {vector_input_sliding_sum(xs, spec, op, lanes, out), SlidingPath::vector_input, lanes};
  return {scalar_input_sliding_sum(xs, spec, op, lanes, out), SlidingPath::scalar_input, lanes};
}

}  // namespace slidesum
