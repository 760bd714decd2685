#pragma once

#include <cstddef>
#include <iterator>
#include <memory>
#include <utility>

namespace slidesum {

/// Output iterator that hands every assigned value to a callable. The callable
/// is referenced, not owned, and must outlive the iterator.
template <class F>
class sink_iterator {
 public:
  using iterator_category = std::output_iterator_tag;
  using value_type = void;
  using difference_type = std::ptrdiff_t;
  using pointer = void;
  using reference = void;

  sink_iterator() = default;
  explicit sink_iterator(F& f) : f_(std::addressof(f)) {}

  template <class V>
    requires(!std::is_same_v<std::remove_cvref_t<V>, sink_iterator>)
  sink_iterator& operator=(V&& v) {
    (*f_)(std::forward<V>(v));
    return *this;
  }
  sink_iterator& operator*() { return *this; }
  sink_iterator& operator++() { return *this; }
  sink_iterator& operator++(int) { return *this; }

 private:
  F* f_ = nullptr;
};

}  // namespace slidesum
