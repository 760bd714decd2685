// dispatch.hpp -- runtime-to-compile-time dispatch of lane counts and window lengths.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace slidesum::detail {

template <class F>
decltype(auto) with_lane_count(std::size_t p, F&& f) {
  switch (p) {
    case 2: return f.template operator()<2>();
    case 4: return f.template operator()<4>();
    case 8: return f.template operator()<8>();
    case 16: return f.template operator()<16>();
    case 32: return f.template operator()<32>();
    case 64: return f.template operator()<64>();
    default:
      throw std::invalid_argument("lane count must be a power of two in [2, 64], got " +
                                  std::to_string(p));
  }
}

/// Calls f.template operator()<W>() with W == w, for w in [1, P].
template <std::size_t P, class F>
auto with_window(std::size_t w, F& f) {
  using Result = decltype(f.template operator()<1>());
  if (w < 1 || w > P)
    throw std::invalid_argument("window length " + std::to_string(w) + " outside [1, " +
                                std::to_string(P) + "]");
  return [&]<std::size_t... I>(std::index_sequence<I...>) {
    using Entry = Result (*)(F&);
    constexpr Entry table[] = {[](F& g) -> Result { return g.template operator()<I + 1>(); }...};
    return table[w - 1](f);
  }(std::make_index_sequence<P>{});
}

}  // namespace slidesum::detail
