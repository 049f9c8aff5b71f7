#include "vstate/quad.hpp"

#include <cmath>
#include <sstream>

namespace vstate {

namespace {

// Enclosure of the integral over one cell [a, b].
//   C0:             f(cell) * len
//   C1Taylor:       f(m) len + (D - D) len^2/8,            D = f'(cell)
//                   (f(x)-f(m) = f'(xi)(x-m); the two half-cells contribute
//                   opposite-signed moments len^2/8, so their sum lies in
//                   the symmetrized difference D - D)
//   C2Midpoint:     f(m) len + f''(cell) len^3/24
//   C2SquareTaylor: (f(m) + f'(cell) [-len/2, len/2] + f''(cell) [0, len^2/8])^2 len
Interval local_enclosure(const IntegrandSpec& f, QuadRule rule, double a,
                         double b) {
  const double len = b - a;
  const Interval cell(a, b);
  const Interval mid(cell.mid());
  switch (rule) {
    case QuadRule::C0:
      return f.eval(cell, 0) * len;
    case QuadRule::C1Taylor: {
      const Interval d1 = f.eval(cell, 1);
      return f.eval(mid, 0) * len + (d1 - d1) * (len * len / 8);
    }
    case QuadRule::C2Midpoint:
      return f.eval(mid, 0) * len +
             f.eval(cell, 2) * (len * len * len / 24);
    default: {
      const Interval taylor = f.eval(mid, 0) +
                              f.eval(cell, 1) * Interval(-len / 2, len / 2) +
                              f.eval(cell, 2) * Interval(0, len * len / 8);
      return sqr(taylor) * len;
    }
  }
}

struct AdaptiveState {
  const IntegrandSpec& f;
  QuadRule rule;
  double rel_tol;
  int max_depth;
  QuadResult out;
};

void visit(AdaptiveState& st, double a, double b, int depth) {
  const Interval local = local_enclosure(st.f, st.rule, a, b);
  const double m = Interval(a, b).mid();
  const bool splittable = a < m && m < b;
  if (local.width() <= st.rel_tol * std::abs(local.mid()) ||
      depth >= st.max_depth || !splittable) {
    if (local.width() > st.rel_tol * std::abs(local.mid()))
      st.out.depth_exceeded = true;
    st.out.value = st.out.value + local;
    st.out.leaves += 1;
    st.out.max_depth_seen = std::max(st.out.max_depth_seen, depth);
    return;
  }
  visit(st, a, m, depth + 1);
  visit(st, m, b, depth + 1);
}

void check_args(const IntegrandSpec& f, double a, double b, QuadRule rule) {
  if (!(a < b)) throw DomainError("integration bounds must satisfy a < b");
  if (rule_order(rule) > f.max_order)
    throw DomainError("integrand does not supply the derivative order the rule needs");
}

}  // namespace

QuadResult integrate_adaptive(const IntegrandSpec& f, double a, double b,
                              QuadRule rule, double rel_tol, int max_depth) {
  check_args(f, a, b, rule);
  if (!(rel_tol > 0)) throw DomainError("relative tolerance must be positive");
  AdaptiveState st{f, rule, rel_tol, max_depth, {}};
  visit(st, a, b, 0);
  return st.out;
}

Interval integrate_fixed(const IntegrandSpec& f, double a, double b,
                         QuadRule rule, double step) {
  check_args(f, a, b, rule);
  if (!(step > 0)) throw DomainError("step must be positive");
  Interval total(0.0);
  for (double lo = a; lo < b; lo = std::min(lo + step, b)) {
    const double hi = std::min(lo + step, b);
    if (!(hi > lo))
      throw DomainError("step is below the floating point resolution here");
    total = total + local_enclosure(f, rule, lo, hi);
  }
  return total;
}

VerificationReport bound_function(const IntegrandSpec& f, double a, double b,
                                  double step, double bound, BoundMode mode) {
  if (!(a < b)) throw DomainError("bound check domain must satisfy a < b");
  if (!(step > 0)) throw DomainError("step must be positive");
  WallTimer timer;

  const char* rel = nullptr;
  switch (mode) {
    case BoundMode::upper:
      rel = "f < bound";
      break;
    case BoundMode::lower:
      rel = "f > bound";
      break;
    case BoundMode::abs_upper:
      rel = "|f| < bound";
      break;
    case BoundMode::strictly_below_negated:
      rel = "f < -bound";
      break;
  }
  VerificationReport report;
  report.lemma = "cell-bound-check";
  report.verdict = Verdict::pass;
  double worst = std::numeric_limits<double>::infinity();
  double widest = 0;
  Interval worst_value;
  Interval worst_cell;
  bool have_failing_cell = false;

  for (double lo = a; lo < b; lo = std::min(lo + step, b)) {
    const double hi = std::min(lo + step, b);
    if (!(hi > lo))
      throw DomainError("step is below the floating point resolution here");
    const Interval cell(lo, hi);
    const Interval value = f.eval(cell, 0);
    double margin = 0;
    bool definite_violation = false;
    switch (mode) {
      case BoundMode::upper:
        margin = bound - value.hi;
        definite_violation = value.lo >= bound;
        break;
      case BoundMode::lower:
        margin = value.lo - bound;
        definite_violation = value.hi <= bound;
        break;
      case BoundMode::abs_upper:
        margin = bound - value.mag();
        definite_violation = value.mig() >= bound;
        break;
      case BoundMode::strictly_below_negated:
        margin = -bound - value.hi;
        definite_violation = value.lo >= -bound;
        break;
    }
    widest = std::max(widest, value.width());
    if (margin < worst) {
      worst = margin;
      worst_value = value;
      worst_cell = cell;
    }
    if (margin <= 0) {
      if (!have_failing_cell) {
        have_failing_cell = true;
        report.params.emplace_back("first_failing_cell", to_string(cell));
      }
      if (definite_violation) {
        report.verdict = Verdict::fail;
      } else if (report.verdict == Verdict::pass) {
        report.verdict = Verdict::inconclusive;
      }
    }
  }

  report.target = std::string(rel) + " cell-wise";
  report.enclosure = worst_value;
  report.margin = worst;
  report.params.emplace_back("bound", endpoint_to_string(bound));
  report.params.emplace_back("step", endpoint_to_string(step));
  report.params.emplace_back("domain", to_string(Interval(a, b)));
  report.params.emplace_back("worst_cell", to_string(worst_cell));
  {
    std::ostringstream os;
    os << "widest cell enclosure " << endpoint_to_string(widest);
    report.note = os.str();
  }
  report.wall_seconds = timer.seconds();
  return report;
}

}  // namespace vstate
