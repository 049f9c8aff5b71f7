#include "vstate/series.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace vstate {

FourierCosSeries::FourierCosSeries(std::vector<std::string> coeff_decimals,
                                   int freq_mult)
    : decimals_(std::move(coeff_decimals)), freq_mult_(freq_mult) {
  if (decimals_.empty()) throw DomainError("empty coefficient list");
  if (freq_mult_ <= 0) throw DomainError("frequency multiplier must be positive");
  coeff_d_.reserve(decimals_.size());
  coeff_l_.reserve(decimals_.size());
  for (const std::string& d : decimals_) {
    coeff_d_.push_back(detail::const_from_decimal<double>(d.c_str()));
    coeff_l_.push_back(detail::const_from_decimal<long double>(d.c_str()));
  }
}

const FourierCosSeries& FourierCosSeries::approximate_solution() {
  static const FourierCosSeries s({
      "1",
      "6.990356082734282e-02",
      "1.481485591846559e-02",
      "4.562581793349477e-03",
      "1.662067385043346e-03",
      "6.660065136771192e-04",
      "2.837414439454572e-04",
      "1.261501302020939e-04",
      "5.787204471053671e-05",
      "2.719406328587438e-05",
      "1.302302594759571e-05",
      "6.333059955650702e-06",
      "3.119022088447539e-06",
      "1.552543629347692e-06",
      "7.798356164400106e-07",
      "3.947768555872326e-07",
      "2.012104965444521e-07",
      "1.031670056456975e-07",
      "5.317712460135162e-08",
      "2.753934675108659e-08",
      "1.432242380745116e-08",
      "7.477109926654982e-09",
      "3.916974811811910e-09",
      "2.058418356388450e-09",
      "1.084839772995918e-09",
      "5.732502021897411e-10",
      "3.036541152512813e-10",
      "1.612094123238438e-10",
      "8.576430342713042e-11",
      "4.571554686889860e-11",
      "2.441210348018661e-11",
  });
  return s;
}

Interval eval_deriv(const FourierCosSeries& s, int order, const Interval& X) {
  return s.eval<double>(order, X);
}

namespace {

std::string describe(const RangeBoundSpec& b, int order) {
  std::ostringstream os;
  std::string fn = "R0";
  for (int i = 0; i < order; ++i) fn += "'";
  if (b.absolute) fn = "|" + fn + "|";
  if (b.lower) os << *b.lower << " < ";
  os << fn;
  if (b.upper) os << " < " << *b.upper;
  return os.str();
}

}  // namespace

VerificationReport verify_range_bounds(const FourierCosSeries& s, int order,
                                       double step,
                                       const RangeBoundSpec& bound_spec) {
  if (step <= 0) throw DomainError("range check step must be positive");
  if (!bound_spec.lower && !bound_spec.upper)
    throw DomainError("range bound spec is empty");
  WallTimer timer;

  const double end =
      detail::next_up(pi_ival<double>().hi / s.freq_mult());
  VerificationReport report;
  report.lemma = "series-range-bound";
  report.target = describe(bound_spec, order) + " on [0, pi/6]";
  report.verdict = Verdict::pass;

  double tightest = std::numeric_limits<double>::infinity();
  Interval worst;
  Interval worst_cell;
  for (double lo = 0; lo < end; lo += step) {
    const Interval cell(lo, std::min(lo + step, end));
    const Interval raw = s.eval<double>(order, cell);
    const Interval value = bound_spec.absolute ? abs_hull(raw) : raw;
    double margin = std::numeric_limits<double>::infinity();
    if (bound_spec.upper) margin = std::min(margin, *bound_spec.upper - value.hi);
    if (bound_spec.lower) margin = std::min(margin, value.lo - *bound_spec.lower);
    if (margin <= 0) {
      std::ostringstream os;
      os << "range bound " << describe(bound_spec, order)
         << " fails on cell [" << cell.lo << ", " << cell.hi
         << "] with enclosure " << to_string(value);
      throw BoundViolated(os.str(), cell.lo, cell.hi);
    }
    if (margin < tightest) {
      tightest = margin;
      worst = value;
      worst_cell = cell;
    }
  }

  report.enclosure = worst;
  report.margin = tightest;
  report.params = {{"order", std::to_string(order)},
                   {"step", endpoint_to_string(step)},
                   {"worst_cell", to_string(worst_cell)}};
  report.wall_seconds = timer.seconds();
  return report;
}

VerificationReport nonconvexity_check(const FourierCosSeries& s, double eps) {
  WallTimer timer;
  const Interval pi_m = pi_ival<double>() / double(s.freq_mult());
  const Interval lhs =
      s.eval<double>(0, pi_m) + Interval(eps) * sqrt(pi_m);
  const Interval rhs = s.eval<double>(0, Interval(0.0)) * cos(pi_m);

  VerificationReport report;
  report.lemma = "nonconvexity-gate";
  report.target = "R0(pi/6) + eps*sqrt(pi/6) < R0(0)*cos(pi/6)";
  report.enclosure = lhs - rhs;
  report.verdict = lhs.hi < rhs.lo ? Verdict::pass : Verdict::fail;
  report.margin = rhs.lo - lhs.hi;
  report.params = {{"eps", endpoint_to_string(eps)},
                   {"lhs", to_string(lhs)},
                   {"rhs", to_string(rhs)}};
  report.wall_seconds = timer.seconds();
  return report;
}

}  // namespace vstate
