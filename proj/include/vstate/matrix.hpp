#pragma once

#include <vector>

#include "vstate/errors.hpp"
#include "vstate/interval.hpp"

namespace vstate {

// Dense square matrix of intervals, row-major, 0-based. Kept deliberately
// small: the spectral routines own the numerics, this is just storage.
struct IntervalMatrix {
  int n = 0;
  std::vector<Interval> entries;

  IntervalMatrix() = default;
  explicit IntervalMatrix(int size)
      : n(size), entries(static_cast<std::size_t>(size) * size, Interval(0.0)) {
    if (size < 0) throw DomainError("matrix size must be nonnegative");
  }

  Interval& at(int i, int j) {
    return entries[static_cast<std::size_t>(i) * n + j];
  }
  const Interval& at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * n + j];
  }
};

}  // namespace vstate
