#pragma once

#include <array>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "vstate/interval.hpp"
#include "vstate/report.hpp"

namespace vstate {

// Truncated cosine series R(x) = sum_k c_k cos(k m x). Coefficients are
// stored as decimal strings and parsed outward once per endpoint type, so
// both the double and the long double instantiations certifiably enclose
// the printed decimals. Evaluation is plain term-by-term summation in fixed
// k order; no Clenshaw re-association, so results are bit-reproducible.
class FourierCosSeries {
 public:
  explicit FourierCosSeries(std::vector<std::string> coeff_decimals,
                            int freq_mult = 6);

  // The 31-coefficient, 6-fold approximate solution the whole pipeline is
  // built around.
  static const FourierCosSeries& approximate_solution();

  int terms() const { return static_cast<int>(decimals_.size()); }
  int freq_mult() const { return freq_mult_; }
  const std::string& coeff_decimal(int k) const { return decimals_[k]; }

  template <class F>
  const BasicIval<F>& coeff(int k) const {
    if constexpr (std::is_same_v<F, double>) {
      return coeff_d_[k];
    } else {
      return coeff_l_[k];
    }
  }

  // Enclosure of the order-th derivative over X, for order 0..4. The k-th
  // term contributes c_k (km)^order trig(km X) where trig cycles through
  // cos, -sin, -cos, sin; (km)^order <= 180^4 is exact in either format.
  template <class F>
  BasicIval<F> eval(int order, const BasicIval<F>& X) const {
    if (order < 0 || order > 4)
      throw DomainError("series derivative order outside 0..4");
    BasicIval<F> acc(F(0));
    for (int k = 0; k < terms(); ++k) {
      if (k == 0) {
        if (order == 0) acc = acc + coeff<F>(0);
        continue;
      }
      const F km = F(k) * F(freq_mult_);
      const BasicIval<F> angle = X * km;
      BasicIval<F> t;
      switch (order % 4) {
        case 0:
          t = cos(angle);
          break;
        case 1:
          t = -sin(angle);
          break;
        case 2:
          t = -cos(angle);
          break;
        default:
          t = sin(angle);
          break;
      }
      F scale = F(1);
      for (int i = 0; i < order; ++i) scale *= km;
      acc = acc + coeff<F>(k) * t * scale;
    }
    return acc;
  }

  // All derivative enclosures 0..max_order at once, sharing the two trig
  // evaluations per term. Entry d equals eval(d, X) bit for bit: the same
  // term values are accumulated in the same k order.
  template <class F>
  std::array<BasicIval<F>, 5> jet(const BasicIval<F>& X, int max_order) const {
    if (max_order < 0 || max_order > 4)
      throw DomainError("series derivative order outside 0..4");
    std::array<BasicIval<F>, 5> out;
    out.fill(BasicIval<F>(F(0)));
    out[0] = out[0] + coeff<F>(0);
    for (int k = 1; k < terms(); ++k) {
      const F km = F(k) * F(freq_mult_);
      const BasicIval<F> angle = X * km;
      const BasicIval<F> c = cos(angle);
      const BasicIval<F> s = sin(angle);
      F scale = F(1);
      for (int d = 0; d <= max_order; ++d) {
        BasicIval<F> t;
        switch (d % 4) {
          case 0:
            t = c;
            break;
          case 1:
            t = -s;
            break;
          case 2:
            t = -c;
            break;
          default:
            t = s;
            break;
        }
        out[d] = out[d] + coeff<F>(k) * t * scale;
        scale *= km;
      }
    }
    return out;
  }

 private:
  std::vector<std::string> decimals_;
  int freq_mult_;
  std::vector<BasicIval<double>> coeff_d_;
  std::vector<BasicIval<long double>> coeff_l_;
};

Interval eval_deriv(const FourierCosSeries& s, int order, const Interval& X);

// One- or two-sided strict range bound, optionally on the absolute value.
struct RangeBoundSpec {
  std::optional<double> lower;
  std::optional<double> upper;
  bool absolute = false;

  static RangeBoundSpec between(double lo, double hi) {
    return {lo, hi, false};
  }
  static RangeBoundSpec abs_below(double hi) {
    return {std::nullopt, hi, true};
  }
};

// Checks the bound cell-wise on [0, pi/m] with cells of width step (last
// cell shorter). Throws BoundViolated on the first cell whose enclosure
// fails the strict inequality; otherwise reports the tightest margin over
// all cells and the enclosure of the cell attaining it.
VerificationReport verify_range_bounds(const FourierCosSeries& s, int order,
                                       double step,
                                       const RangeBoundSpec& bound_spec);

// Strict interval test of R(pi/m) + eps sqrt(pi/m) < R(0) cos(pi/m):
// passes iff the hull upper end of the left side lies below the hull lower
// end of the right side. Failure is encoded in the report, not thrown.
VerificationReport nonconvexity_check(const FourierCosSeries& s, double eps);

}  // namespace vstate
