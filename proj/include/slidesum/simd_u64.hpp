// simd_u64.hpp -- hardware-vector lanes for 64-bit unsigned min / max.
//
// A logical block of P lanes is held in P / L machine registers of L lanes
// each (L = 8 for AVX-512, 4 for AVX2). Window lengths are dispatched to
// compile-time constants so every lane shift is a fixed permute.
//
// min and max are idempotent, so the block scans use overlapping folds: each
// round doubles the covered length (capped at w) with one shift and one
// combine, ceil(log2(w)) rounds in total.
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <iterator>
#include <span>
#include <type_traits>
#include <utility>

#if defined(__AVX512F__) || defined(__AVX2__)
#include <immintrin.h>
#endif

#include "slidesum/dispatch.hpp"
#include "slidesum/operators.hpp"

namespace slidesum::simd {

#if defined(__AVX512F__)

struct Backend {
  using reg = __m512i;
  static constexpr std::size_t lanes = 8;
  static constexpr const char* name = "avx512";

  static reg load(const std::uint64_t* p) { return _mm512_loadu_si512(p); }
  static void store(std::uint64_t* p, reg v) { _mm512_storeu_si512(p, v); }
  static reg set1(std::uint64_t v) { return _mm512_set1_epi64(static_cast<long long>(v)); }
  static std::uint64_t lane0(reg v) {
    return static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm512_castsi512_si128(v)));
  }
  static reg min(reg a, reg b) { return _mm512_min_epu64(a, b); }
  static reg max(reg a, reg b) { return _mm512_max_epu64(a, b); }
  // value in lanes [0, count), fill elsewhere
  static reg broadcast_low(reg fill, std::uint64_t value, std::size_t count) {
    const auto m = static_cast<__mmask8>(count >= 8 ? 0xFF : (1u << count) - 1);
    return _mm512_mask_set1_epi64(fill, m, static_cast<long long>(value));
  }
  // Lanes [M, M + L) of the concatenation lo:hi.
  template <std::size_t M>
  static reg window(reg lo, reg hi) {
    if constexpr (M == 0) return lo;
    else if constexpr (M == lanes) return hi;
    else return _mm512_alignr_epi64(hi, lo, M);
  }
};

#elif defined(__AVX2__)

struct Backend {
  using reg = __m256i;
  static constexpr std::size_t lanes = 4;
  static constexpr const char* name = "avx2";

  static reg load(const std::uint64_t* p) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
  }
  static void store(std::uint64_t* p, reg v) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
  }
  static reg set1(std::uint64_t v) { return _mm256_set1_epi64x(static_cast<long long>(v)); }
  static std::uint64_t lane0(reg v) {
    return static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm256_castsi256_si128(v)));
  }
  // AVX2 has only a signed 64-bit compare; flipping the sign bit maps
  // unsigned order onto signed order.
  static reg a_greater(reg a, reg b) {
    const reg bias = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));
    return _mm256_cmpgt_epi64(_mm256_xor_si256(a, bias), _mm256_xor_si256(b, bias));
  }
  static reg min(reg a, reg b) { return _mm256_blendv_epi8(a, b, a_greater(a, b)); }
  static reg max(reg a, reg b) { return _mm256_blendv_epi8(b, a, a_greater(a, b)); }
  static reg broadcast_low(reg fill, std::uint64_t value, std::size_t count) {
    const reg idx = _mm256_setr_epi64x(0, 1, 2, 3);
    const reg in_low = _mm256_cmpgt_epi64(_mm256_set1_epi64x(static_cast<long long>(count)), idx);
    return _mm256_blendv_epi8(fill, set1(value), in_low);
  }
  template <std::size_t M>
  static reg window(reg lo, reg hi) {
    if constexpr (M == 0) return lo;
    else if constexpr (M == lanes) return hi;
    else {
      const reg mid = _mm256_permute2x128_si256(lo, hi, 0x21);
      if constexpr (M == 1) return _mm256_alignr_epi8(mid, lo, 8);
      else if constexpr (M == 2) return mid;
      else return _mm256_alignr_epi8(hi, mid, 8);
    }
  }
};

#endif

#if defined(__AVX512F__) || defined(__AVX2__)
inline constexpr bool kAvailable = true;

template <class Op>
struct OpTraits;

template <>
struct OpTraits<min_op<std::uint64_t>> {
  static Backend::reg combine(Backend::reg a, Backend::reg b) { return Backend::min(a, b); }
};

template <>
struct OpTraits<max_op<std::uint64_t>> {
  static Backend::reg combine(Backend::reg a, Backend::reg b) { return Backend::max(a, b); }
};

template <class Op, std::size_t P>
concept Accelerated = requires { OpTraits<Op>::combine; } && (P >= Backend::lanes) &&
                      (P % Backend::lanes == 0);

template <std::size_t R>
struct Regs {
  Backend::reg v[R];

  Backend::reg& operator[](std::size_t j) { return v[j]; }
  const Backend::reg& operator[](std::size_t j) const { return v[j]; }
  void fill(Backend::reg r) { std::fill(std::begin(v), std::end(v), r); }
};

// lane i <- lane i - D
template <std::size_t D, std::size_t R>
Regs<R> toward_high(const Regs<R>& in, Backend::reg fill) {
  constexpr std::size_t L = Backend::lanes;
  constexpr std::size_t q = D / L, s = D % L;
  Regs<R> out;
  [&]<std::size_t... J>(std::index_sequence<J...>) {
    const auto at = [&](std::ptrdiff_t j) {
      return j >= 0 && j < static_cast<std::ptrdiff_t>(R) ? in[static_cast<std::size_t>(j)] : fill;
    };
    const auto one = [&]<std::size_t j>() {
      constexpr auto src = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(q);
      if constexpr (s == 0) out[j] = at(src);
      else out[j] = Backend::window<L - s>(at(src - 1), at(src));
    };
    (one.template operator()<J>(), ...);
  }(std::make_index_sequence<R>{});
  return out;
}

// lane i <- lane i + D
template <std::size_t D, std::size_t R>
Regs<R> toward_low(const Regs<R>& in, Backend::reg fill) {
  constexpr std::size_t L = Backend::lanes;
  constexpr std::size_t q = D / L, s = D % L;
  Regs<R> out;
  [&]<std::size_t... J>(std::index_sequence<J...>) {
    const auto at = [&](std::size_t j) { return j < R ? in[j] : fill; };
    const auto one = [&]<std::size_t j>() {
      if constexpr (s == 0) out[j] = at(j + q);
      else out[j] = Backend::window<s>(at(j + q), at(j + q + 1));
    };
    (one.template operator()<J>(), ...);
  }(std::make_index_sequence<R>{});
  return out;
}

template <class Op, std::size_t R>
Regs<R> combine(const Regs<R>& a, const Regs<R>& b) {
  Regs<R> out;
  for (std::size_t j = 0; j < R; ++j) out[j] = OpTraits<Op>::combine(a[j], b[j]);
  return out;
}

// Lane i: fold of the `W` lanes ending at i (FromHigh: starting at i),
// truncated at the block edge. Overlapping folds need an idempotent operator.
template <class Op, std::size_t W, bool FromHigh, std::size_t R, std::size_t Len = 1>
Regs<R> idempotent_scan(const Regs<R>& f, Backend::reg fill) {
  if constexpr (W == 0) {
    Regs<R> out;
    out.fill(fill);
    return out;
  } else if constexpr (Len >= W) {
    return f;
  } else {
    constexpr std::size_t d = std::min(Len, W - Len);
    const Regs<R> g = FromHigh ? combine<Op>(f, toward_low<d>(f, fill))
                               : combine<Op>(toward_high<d>(f, fill), f);
    return idempotent_scan<Op, W, FromHigh, R, Len + d>(g, fill);
  }
}

template <std::size_t R>
Regs<R> load_regs(const std::uint64_t* p) {
  Regs<R> r;
  for (std::size_t j = 0; j < R; ++j) r[j] = Backend::load(p + j * Backend::lanes);
  return r;
}

template <std::size_t R, class Out>
Out store_regs(const Regs<R>& r, std::size_t count, Out out) {
  constexpr std::size_t P = R * Backend::lanes;
  if constexpr (std::is_same_v<Out, std::uint64_t*>) {
    if (count == P) {
      for (std::size_t j = 0; j < R; ++j) Backend::store(out + j * Backend::lanes, r[j]);
      return out + P;
    }
  }
  alignas(64) std::array<std::uint64_t, P> buf;
  for (std::size_t j = 0; j < R; ++j) Backend::store(buf.data() + j * Backend::lanes, r[j]);
  return std::copy_n(buf.begin(), count, out);
}

// Carry seeded from the first W-1 inputs: lane t folds x_t .. x_{W-2}.
template <class Op, std::size_t R>
Regs<R> initial_carry(std::span<const std::uint64_t> head, const Op& op) {
  constexpr std::size_t P = R * Backend::lanes;
  alignas(64) std::array<std::uint64_t, P> y;
  y.fill(op.identity());
  for (std::size_t t = head.size(); t-- > 0;)
    y[t] = t + 1 < head.size() ? op(head[t], y[t + 1]) : head[t];
  return load_regs<R>(y.data());
}

template <class Op, std::size_t P, std::size_t W, class Out>
Out vector_input_fixed(std::span<const std::uint64_t> xs, const Op& op, Out out) {
  constexpr std::size_t L = Backend::lanes;
  constexpr std::size_t R = P / L;
  // Registers at the top of a block that cover its last W-1 lanes.
  constexpr std::size_t TailR = W <= 1 ? 0 : (W - 2) / L + 1;
  const auto fill = Backend::set1(op.identity());
  Regs<R> carry = initial_carry<Op, R>(xs.first(W - 1), op);

  const auto block = [&](const std::uint64_t* p) {
    const Regs<R> x = load_regs<R>(p);
    return combine<Op>(carry, idempotent_scan<Op, W, false>(x, fill));
  };

  std::size_t k = W - 1;
  for (; k + P <= xs.size(); k += P) {
    out = store_regs<R>(block(xs.data() + k), P, out);
    if constexpr (TailR > 0) {
      const auto tail = load_regs<TailR>(xs.data() + k + P - TailR * L);
      const auto folds = idempotent_scan<Op, W - 1, true>(tail, fill);
      const auto moved = toward_low<TailR * L - W + 1>(folds, fill);
      for (std::size_t j = 0; j < R; ++j) carry[j] = j < TailR ? moved[j] : fill;
    }
  }
  if (const std::size_t rest = xs.size() - k; rest > 0) {
    alignas(64) std::array<std::uint64_t, P> padded;
    padded.fill(op.identity());
    std::copy_n(xs.begin() + static_cast<std::ptrdiff_t>(k), rest, padded.begin());
    out = store_regs<R>(block(padded.data()), rest, out);
  }
  return out;
}

template <class Op, std::size_t P, std::size_t W, class Out>
Out scalar_input_fixed(std::span<const std::uint64_t> xs, const Op& op, Out out) {
  // Lanes at or above W stay at the identity, so only these registers move.
  constexpr std::size_t R = std::min(P / Backend::lanes, (W - 1) / Backend::lanes + 1);
  const auto fill = Backend::set1(op.identity());
  Regs<R> y = initial_carry<Op, R>(xs.first(W - 1), op);
  Regs<R> x;
  for (std::size_t i = W - 1; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < R; ++j) {
      const std::size_t below = W - std::min(W, j * Backend::lanes);
      x[j] = Backend::broadcast_low(fill, xs[i], below);
    }
    y = combine<Op>(y, x);
    *out++ = Backend::lane0(y[0]);
    y = toward_low<1>(y, fill);
  }
  return out;
}

template <class Op, std::size_t P, class Out>
  requires Accelerated<Op, P>
Out vector_input(std::span<const std::uint64_t> xs, std::size_t w, const Op& op, Out out) {
  auto run = [&]<std::size_t W>() { return vector_input_fixed<Op, P, W>(xs, op, out); };
  return detail::with_window<P>(w, run);
}

template <class Op, std::size_t P, class Out>
  requires Accelerated<Op, P>
Out scalar_input(std::span<const std::uint64_t> xs, std::size_t w, const Op& op, Out out) {
  auto run = [&]<std::size_t W>() { return scalar_input_fixed<Op, P, W>(xs, op, out); };
  return detail::with_window<P>(w, run);
}

#else

inline constexpr bool kAvailable = false;

template <class Op, std::size_t P>
concept Accelerated = false;

template <class Op, std::size_t P, class Out>
Out vector_input(std::span<const std::uint64_t>, std::size_t, const Op&, Out out) {
  return out;
}

template <class Op, std::size_t P, class Out>
Out scalar_input(std::span<const std::uint64_t>, std::size_t, const Op&, Out out) {
  return out;
}

#endif

}  // namespace slidesum::simd
