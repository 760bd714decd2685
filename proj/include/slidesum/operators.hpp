// operators.hpp -- binary operators accepted by the sliding-sum algorithms.
//
// An operator is a small value type exposing
//
//   using value_type = T;
//   T    operator()(const T& a, const T& b) const;   // a ⊕ b
//   bool is_associative() const;                     // algebraic claim
//   T    identity() const;                           // optional, two-sided
//
// Operators without identity() are still accepted everywhere: the lane
// algorithms lift them with adjoin_identity, which adds an "empty" element.
#pragma once

#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <type_traits>

namespace slidesum {

template <class Op>
concept SlidingOperator =
    std::copy_constructible<Op> &&
    requires(const Op& op, const typename Op::value_type& a) {
      typename Op::value_type;
      { op(a, a) } -> std::convertible_to<typename Op::value_type>;
      { op.is_associative() } -> std::convertible_to<bool>;
    };

template <class Op>
concept MonoidOperator = SlidingOperator<Op> && requires(const Op& op) {
  { op.identity() } -> std::convertible_to<typename Op::value_type>;
};

template <SlidingOperator Op>
using value_t = typename Op::value_type;

/// Minimum under operator<. Identity is the largest representable value.
template <class T>
  requires std::totally_ordered<T> && std::numeric_limits<T>::is_specialized
struct min_op {
  using value_type = T;
  constexpr T operator()(const T& a, const T& b) const { return b < a ? b : a; }
  constexpr bool is_associative() const { return true; }
  constexpr T identity() const { return std::numeric_limits<T>::max(); }
};

template <class T>
  requires std::totally_ordered<T> && std::numeric_limits<T>::is_specialized
struct max_op {
  using value_type = T;
  constexpr T operator()(const T& a, const T& b) const { return a < b ? b : a; }
  constexpr bool is_associative() const { return true; }
  constexpr T identity() const { return std::numeric_limits<T>::lowest(); }
};

/// Addition modulo 2^bits. Restricted to unsigned types so overflow is defined.
template <std::unsigned_integral T>
struct wrapping_add_op {
  using value_type = T;
  constexpr T operator()(const T& a, const T& b) const { return static_cast<T>(a + b); }
  constexpr bool is_associative() const { return true; }
  constexpr T identity() const { return T{0}; }
};

/// Lifts a semigroup (or any magma) to a monoid by adjoining an empty element.
/// Empty lanes are represented by std::nullopt; combining with empty is a no-op,
/// so fold order and associativity of the wrapped operator are preserved.
template <SlidingOperator Op>
struct adjoin_identity {
  using inner_type = value_t<Op>;
  using value_type = std::optional<inner_type>;

  Op op;

  constexpr value_type operator()(const value_type& a, const value_type& b) const {
    if (!a) return b;
    if (!b) return a;
    return value_type{op(*a, *b)};
  }
  constexpr bool is_associative() const { return op.is_associative(); }
  constexpr value_type identity() const { return std::nullopt; }
};

/// Strict left fold of [first, last). Requires a nonempty range.
template <SlidingOperator Op, class It>
constexpr value_t<Op> left_fold(It first, It last, const Op& op) {
  value_t<Op> acc = *first;
  for (++first; first != last; ++first) acc = op(acc, *first);
  return acc;
}

}  // namespace slidesum
