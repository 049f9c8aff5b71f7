#pragma once

#include <functional>
#include <string>

#include "vstate/interval.hpp"
#include "vstate/report.hpp"

namespace vstate {

// Which Taylor enclosure a cell integral uses. The number is the z-derivative
// order the integrand must supply.
enum class QuadRule { C0, C1Taylor, C2Midpoint, C2SquareTaylor };

constexpr int rule_order(QuadRule r) {
  switch (r) {
    case QuadRule::C0:
      return 0;
    case QuadRule::C1Taylor:
      return 1;
    default:
      return 2;
  }
}

// A function the quadrature engine can integrate: eval(X, d) returns a
// guaranteed enclosure of the d-th derivative over X, for d up to max_order.
struct IntegrandSpec {
  std::function<Interval(const Interval&, int)> eval;
  int max_order = 0;
};

struct QuadResult {
  Interval value;
  bool depth_exceeded = false;  // some leaf stopped on depth, result still valid
  long leaves = 0;
  int max_depth_seen = 0;
};

// Adaptive bisection: a cell is accepted once the width of its local
// enclosure drops to rel_tol times the magnitude of the local estimate
// (the midpoint of the enclosure), or at max_depth. Cells are processed
// depth-first and summed left to right, so totals are deterministic.
QuadResult integrate_adaptive(const IntegrandSpec& f, double a, double b,
                              QuadRule rule, double rel_tol,
                              int max_depth = 40);

// Uniform cells of width step, last cell shorter, summed in ascending order.
Interval integrate_fixed(const IntegrandSpec& f, double a, double b,
                         QuadRule rule, double step);

enum class BoundMode { upper, lower, abs_upper, strictly_below_negated };

// Cell-wise bound check on [a, b] with cells of width step (last shorter):
//   upper                  f(cell) < bound
//   lower                  f(cell) > bound
//   abs_upper              |f(cell)| < bound
//   strictly_below_negated f(cell) < -bound
// The verdict is pass when every cell enclosure certifies the inequality,
// fail when some cell enclosure lies entirely on the violating side (a
// disproof), and inconclusive when enclosures merely straddle the bound.
// The report carries the worst margin and the first non-passing cell.
VerificationReport bound_function(const IntegrandSpec& f, double a, double b,
                                  double step, double bound, BoundMode mode);

}  // namespace vstate
