#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>

#include "vstate/errors.hpp"

namespace vstate {

namespace detail {

// One representable step toward +inf. Outward rounding is realized by
// nudging each correctly rounded endpoint one step; a round-to-nearest
// primitive is off by at most half a step, so the nudged endpoint is a
// certified bound. Rounding modes are never switched (portability over
// speed, decided once here and applied uniformly).
inline double next_up(double x) {
  if (x != x || x == std::numeric_limits<double>::infinity()) return x;
  if (x == 0.0) return std::numeric_limits<double>::denorm_min();
  const auto b = std::bit_cast<std::uint64_t>(x);
  return std::bit_cast<double>((b >> 63) ? b - 1 : b + 1);
}
inline double next_down(double x) { return -next_up(-x); }

inline long double next_up(long double x) {
  return std::nextafter(x, std::numeric_limits<long double>::infinity());
}
inline long double next_down(long double x) {
  return std::nextafter(x, -std::numeric_limits<long double>::infinity());
}

template <class F>
F parse_float(const char* s, char** end);
template <>
inline double parse_float<double>(const char* s, char** end) {
  return std::strtod(s, end);
}
template <>
inline long double parse_float<long double>(const char* s, char** end) {
  return std::strtold(s, end);
}

}  // namespace detail

// Closed real interval [lo, hi]. Invariants: lo <= hi, no NaN endpoints,
// +-inf endpoints allowed (meaning unbounded, not containing infinity).
// Every operation encloses the exact real image of its inputs.
template <class F>
struct BasicIval {
  F lo{0};
  F hi{0};

  BasicIval() = default;
  explicit BasicIval(F point) : lo(point), hi(point) {}
  BasicIval(F l, F h) : lo(l), hi(h) {}

  F mid() const {
    if (lo == -hi) return F(0);
    const F m = lo / 2 + hi / 2;
    return m;
  }
  F rad() const { return detail::next_up(std::max(hi - mid(), mid() - lo)); }
  F width() const { return hi - lo; }
  // Largest absolute value of any member.
  F mag() const { return std::max(std::abs(lo), std::abs(hi)); }
  // Smallest absolute value of any member.
  F mig() const {
    if (lo <= 0 && hi >= 0) return F(0);
    return std::min(std::abs(lo), std::abs(hi));
  }
  bool contains(F x) const { return lo <= x && x <= hi; }
  bool contains(const BasicIval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  bool is_point() const { return lo == hi; }
  bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
};

using Interval = BasicIval<double>;

template <class F>
bool valid(const BasicIval<F>& a) {
  return a.lo <= a.hi && a.lo == a.lo && a.hi == a.hi;
}

template <class F>
BasicIval<F> operator-(const BasicIval<F>& a) {
  return {-a.hi, -a.lo};  // exact
}

namespace detail {
// Fast2Sum: with round-to-nearest binary arithmetic and |big| >= |small|,
// (s - big) - small is the exact rounding error of s = x + y, so a zero
// error certifies the sum is exact and needs no outward nudge.
template <class F>
bool sum_exact(F x, F y, F s) {
  if (!std::isfinite(s)) return false;
  const F big = std::abs(x) >= std::abs(y) ? x : y;
  const F small = std::abs(x) >= std::abs(y) ? y : x;
  return (s - big) - small == F(0);
}
template <class F>
F add_down(F x, F y) {
  const F s = x + y;
  return sum_exact(x, y, s) ? s : next_down(s);
}
template <class F>
F add_up(F x, F y) {
  const F s = x + y;
  return sum_exact(x, y, s) ? s : next_up(s);
}
}  // namespace detail

template <class F>
BasicIval<F> operator+(const BasicIval<F>& a, const BasicIval<F>& b) {
  return {detail::add_down(a.lo, b.lo), detail::add_up(a.hi, b.hi)};
}

template <class F>
BasicIval<F> operator-(const BasicIval<F>& a, const BasicIval<F>& b) {
  return {detail::add_down(a.lo, -b.hi), detail::add_up(a.hi, -b.lo)};
}

namespace detail {
// 0 * inf arises when an unbounded enclosure meets an exact zero; the real
// image of {0} x reals is {0}, so the NaN produced by IEEE maps to 0.
template <class F>
F prod(F x, F y) {
  const F p = x * y;
  return p != p ? F(0) : p;
}
}  // namespace detail

template <class F>
BasicIval<F> operator*(const BasicIval<F>& a, const BasicIval<F>& b) {
  using detail::prod;
  const F c[4] = {prod(a.lo, b.lo), prod(a.lo, b.hi), prod(a.hi, b.lo),
                  prod(a.hi, b.hi)};
  F mn = c[0], mx = c[0];
  bool neg_zero = false, pos_zero = false;
  for (const F v : c) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
    if (v == 0) (std::signbit(v) ? neg_zero : pos_zero) = true;
  }
  // A zero extremum is exact unless some candidate rounded to zero from the
  // other side (underflow), so nudge only when such a candidate exists.
  const F lo = (mn == 0 && !neg_zero) ? F(0) : detail::next_down(mn);
  const F hi = (mx == 0 && !pos_zero) ? F(0) : detail::next_up(mx);
  return {lo, hi};
}

template <class F>
BasicIval<F> operator/(const BasicIval<F>& a, const BasicIval<F>& b) {
  if (b.lo <= 0 && b.hi >= 0)
    throw DivisionByZeroInterval("divisor interval contains zero");
  const F c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
  F mn = c[0], mx = c[0];
  bool neg_zero = false, pos_zero = false;
  for (const F v : c) {
    if (v != v) throw DomainError("indeterminate division (inf/inf)");
    mn = std::min(mn, v);
    mx = std::max(mx, v);
    if (v == 0) (std::signbit(v) ? neg_zero : pos_zero) = true;
  }
  // Same zero handling as multiplication: IEEE quotients carry the true
  // sign, so a zero extremum is exact unless a candidate underflowed to
  // zero from the other side.
  const F lo = (mn == 0 && !neg_zero) ? F(0) : detail::next_down(mn);
  const F hi = (mx == 0 && !pos_zero) ? F(0) : detail::next_up(mx);
  return {lo, hi};
}

template <class F>
BasicIval<F> operator+(const BasicIval<F>& a, F b) {
  return a + BasicIval<F>(b);
}
template <class F>
BasicIval<F> operator+(F a, const BasicIval<F>& b) {
  return BasicIval<F>(a) + b;
}
template <class F>
BasicIval<F> operator-(const BasicIval<F>& a, F b) {
  return a - BasicIval<F>(b);
}
template <class F>
BasicIval<F> operator-(F a, const BasicIval<F>& b) {
  return BasicIval<F>(a) - b;
}
template <class F>
BasicIval<F> operator*(const BasicIval<F>& a, F b) {
  return a * BasicIval<F>(b);
}
template <class F>
BasicIval<F> operator*(F a, const BasicIval<F>& b) {
  return BasicIval<F>(a) * b;
}
template <class F>
BasicIval<F> operator/(const BasicIval<F>& a, F b) {
  return a / BasicIval<F>(b);
}
template <class F>
BasicIval<F> operator/(F a, const BasicIval<F>& b) {
  return BasicIval<F>(a) / b;
}

// x^2 over the interval; sharper than a*a when 0 is inside (the image
// floor is exactly 0, which the generic product cannot see).
template <class F>
BasicIval<F> sqr(const BasicIval<F>& a) {
  const F l2 = detail::prod(a.lo, a.lo);
  const F h2 = detail::prod(a.hi, a.hi);
  if (a.lo >= 0) return {detail::next_down(l2), detail::next_up(h2)};
  if (a.hi <= 0) return {detail::next_down(h2), detail::next_up(l2)};
  return {F(0), detail::next_up(std::max(l2, h2))};
}

template <class F>
BasicIval<F> abs_hull(const BasicIval<F>& a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return -a;
  return {F(0), std::max(-a.lo, a.hi)};
}

template <class F>
BasicIval<F> hull(const BasicIval<F>& a, const BasicIval<F>& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

template <class F>
bool intersects(const BasicIval<F>& a, const BasicIval<F>& b) {
  return a.lo <= b.hi && b.lo <= a.hi;
}

// Intersection; callers must check intersects() first.
template <class F>
BasicIval<F> intersect(const BasicIval<F>& a, const BasicIval<F>& b) {
  if (!intersects(a, b)) throw DomainError("empty interval intersection");
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

// Split at the rounded midpoint; the two halves share that endpoint.
template <class F>
std::array<BasicIval<F>, 2> bisect(const BasicIval<F>& a) {
  const F m = a.mid();
  return {BasicIval<F>{a.lo, m}, BasicIval<F>{m, a.hi}};
}

// Integer powers by repeated squaring (even powers of straddling intervals
// stay nonnegative).
template <class F>
BasicIval<F> pow_int(BasicIval<F> base, unsigned n) {
  if (n == 0) return BasicIval<F>(F(1));
  BasicIval<F> acc;
  bool seeded = false;
  while (n) {
    if (n & 1u) {
      acc = seeded ? acc * base : base;
      seeded = true;
    }
    n >>= 1u;
    if (n) base = sqr(base);
  }
  return acc;
}

// Exact scaling by 2^k whenever the scaled endpoint stays normal.
template <class F>
BasicIval<F> scale2(const BasicIval<F>& a, int k) {
  auto one = [k](F x, bool up) {
    const F r = std::ldexp(x, k);
    if (std::isfinite(r) && std::abs(r) >= std::numeric_limits<F>::min())
      return r;  // power-of-two scaling of a normal result is exact
    if (x == 0) return x;
    return up ? detail::next_up(r) : detail::next_down(r);
  };
  return {one(a.lo, false), one(a.hi, true)};
}

// ---------------------------------------------------------------------------
// Verified constants, parsed outward from decimal digit strings per
// endpoint type.

namespace detail {

template <class F>
BasicIval<F> const_from_decimal(const char* s) {
  char* end = nullptr;
  const F v = parse_float<F>(s, &end);
  return {next_down(v), next_up(v)};
}

}  // namespace detail

template <class F = double>
const BasicIval<F>& pi_ival() {
  static const BasicIval<F> v = detail::const_from_decimal<F>(
      "3.14159265358979323846264338327950288419716939937511");
  return v;
}
template <class F = double>
const BasicIval<F>& two_pi_ival() {
  static const BasicIval<F> v = detail::const_from_decimal<F>(
      "6.28318530717958647692528676655900576839433879875021");
  return v;
}
template <class F = double>
const BasicIval<F>& half_pi_ival() {
  static const BasicIval<F> v = detail::const_from_decimal<F>(
      "1.57079632679489661923132169163975144209858469968755");
  return v;
}
template <class F = double>
const BasicIval<F>& ln2_ival() {
  static const BasicIval<F> v = detail::const_from_decimal<F>(
      "0.69314718055994530941723212145817656807550013436026");
  return v;
}
template <class F = double>
const BasicIval<F>& e_ival() {
  static const BasicIval<F> v = detail::const_from_decimal<F>(
      "2.71828182845904523536028747135266249775724709369996");
  return v;
}

// ---------------------------------------------------------------------------
// Elementary functions. Strategy: argument reduction done in interval
// arithmetic against the verified constants above, then a truncated Taylor
// series whose Lagrange remainder is added as symmetric outward padding.

namespace detail {

// 1/n! as intervals; exact up to 18!, divided onward (19! overflows the
// 53-bit integer range).
template <class F>
const BasicIval<F>& inv_fact(int n) {
  static const std::array<BasicIval<F>, 28> table = [] {
    std::array<BasicIval<F>, 28> t;
    t[0] = BasicIval<F>(F(1));
    for (int i = 1; i < 28; ++i) t[i] = t[i - 1] / BasicIval<F>(F(i));
    return t;
  }();
  return table[static_cast<std::size_t>(n)];
}

template <class F>
constexpr int sincos_terms() {
  return sizeof(F) > 8 ? 11 : 9;
}

// cos on |T| <= pi/4 + small slack.
template <class F>
BasicIval<F> cos_taylor(const BasicIval<F>& T) {
  constexpr int J = sincos_terms<F>();
  const BasicIval<F> t2 = sqr(T);
  BasicIval<F> acc = ((J - 1) % 2 ? -inv_fact<F>(2 * (J - 1))
                                  : inv_fact<F>(2 * (J - 1)));
  for (int j = J - 2; j >= 0; --j) {
    const BasicIval<F> c = (j % 2 ? -inv_fact<F>(2 * j) : inv_fact<F>(2 * j));
    acc = acc * t2 + c;
  }
  const F pad =
      (pow_int(BasicIval<F>(T.mag()), 2 * J) * inv_fact<F>(2 * J)).hi;
  return acc + BasicIval<F>{-pad, pad};
}

// sin on |T| <= pi/4 + small slack.
template <class F>
BasicIval<F> sin_taylor(const BasicIval<F>& T) {
  constexpr int J = sincos_terms<F>();
  const BasicIval<F> t2 = sqr(T);
  BasicIval<F> acc = ((J - 1) % 2 ? -inv_fact<F>(2 * (J - 1) + 1)
                                  : inv_fact<F>(2 * (J - 1) + 1));
  for (int j = J - 2; j >= 0; --j) {
    const BasicIval<F> c =
        (j % 2 ? -inv_fact<F>(2 * j + 1) : inv_fact<F>(2 * j + 1));
    acc = acc * t2 + c;
  }
  const F pad =
      (pow_int(BasicIval<F>(T.mag()), 2 * J + 1) * inv_fact<F>(2 * J + 1)).hi;
  return T * acc + BasicIval<F>{-pad, pad};
}

// cos of a point, |r| < 7: quadrant reduction then Taylor.
template <class F>
BasicIval<F> cos_point(F r) {
  const long q = std::lround(static_cast<double>(r) / 1.5707963267948966);
  const BasicIval<F> T = BasicIval<F>(r) - BasicIval<F>(F(q)) * half_pi_ival<F>();
  switch (((q % 4) + 4) % 4) {
    case 0: return cos_taylor(T);
    case 1: return -sin_taylor(T);
    case 2: return -cos_taylor(T);
    default: return sin_taylor(T);
  }
}

}  // namespace detail

template <class F>
BasicIval<F> cos(const BasicIval<F>& X) {
  if (!valid(X)) throw DomainError("cos: invalid interval");
  const BasicIval<F>& tp = two_pi_ival<F>();
  // Any window of a full period (infinite ones included) maps onto [-1, 1].
  if (!(X.width() < tp.hi)) return {F(-1), F(1)};
  // Recenter by a multiple of pi so the residual lands within (-2pi, 2pi);
  // cos(R + n*pi) = (-1)^n cos(R).
  const long long n = std::llround(static_cast<double>(X.mid()) / 3.141592653589793);
  const BasicIval<F> R = X - BasicIval<F>(F(n)) * pi_ival<F>();
  BasicIval<F> out = hull(detail::cos_point<F>(R.lo), detail::cos_point<F>(R.hi));
  // Interior critical points: 0 (cos = 1) and +-pi (cos = -1). Containment
  // tests are conservative against the pi enclosure.
  if (R.contains(F(0))) out = hull(out, BasicIval<F>(F(1)));
  if (R.hi >= pi_ival<F>().lo || R.lo <= -pi_ival<F>().lo)
    out = hull(out, BasicIval<F>(F(-1)));
  if ((n % 2 + 2) % 2 == 1) out = -out;
  return intersect(out, BasicIval<F>{F(-1), F(1)});
}

template <class F>
BasicIval<F> sin(const BasicIval<F>& X) {
  return cos(X - half_pi_ival<F>());
}

template <class F>
BasicIval<F> exp(const BasicIval<F>& X) {
  if (!valid(X)) throw DomainError("exp: invalid interval");
  auto point = [](F x, bool upper) -> F {
    if (x == -std::numeric_limits<F>::infinity()) return F(0);
    if (x == std::numeric_limits<F>::infinity())
      return std::numeric_limits<F>::infinity();
    if (std::abs(x) > F(708)) {
      // Out of comfortable ldexp range; crude but sound caps around e^708.
      if (x < 0) return upper ? F(3.4e-308) : F(0);
      return upper ? std::numeric_limits<F>::infinity() : F(3.0e307);
    }
    const long long n = std::llround(static_cast<double>(x) / 0.6931471805599453);
    const BasicIval<F> R = BasicIval<F>(x) - BasicIval<F>(F(n)) * ln2_ival<F>();
    constexpr int J = sizeof(F) > 8 ? 17 : 14;
    BasicIval<F> acc = detail::inv_fact<F>(J - 1);
    for (int j = J - 2; j >= 0; --j) acc = acc * R + detail::inv_fact<F>(j);
    // |R| <= ln2/2 + slack, so exp(|R|) < 2 covers the Lagrange factor.
    const F pad = (pow_int(BasicIval<F>(R.mag()), J) * detail::inv_fact<F>(J)).hi * 2;
    acc = acc + BasicIval<F>{-pad, pad};
    const BasicIval<F> s = scale2(acc, static_cast<int>(n));
    return upper ? s.hi : s.lo;
  };
  F lo = point(X.lo, false);
  if (lo < 0) lo = 0;  // exp is positive; the padding may dip below
  return {lo, point(X.hi, true)};
}

template <class F>
BasicIval<F> log(const BasicIval<F>& X) {
  if (!valid(X)) throw DomainError("log: invalid interval");
  if (!(X.lo > 0)) throw DomainError("log: argument must be positive");
  auto point = [](F x, bool upper) -> F {
    if (x == std::numeric_limits<F>::infinity())
      return std::numeric_limits<F>::infinity();
    int e = 0;
    F f = std::frexp(x, &e);  // exact split, f in [0.5, 1)
    if (f < F(0.70710678118654752440L)) {
      f *= 2;  // exact
      e -= 1;
    }
    // log(f) = 2 atanh(t), t = (f-1)/(f+1), |t| <= 0.1716...
    const BasicIval<F> fi(f);
    const BasicIval<F> t = (fi - F(1)) / (fi + F(1));
    const BasicIval<F> t2 = sqr(t);
    constexpr int J = sizeof(F) > 8 ? 13 : 10;
    BasicIval<F> acc = BasicIval<F>(F(1)) / BasicIval<F>(F(2 * (J - 1) + 1));
    for (int j = J - 2; j >= 0; --j)
      acc = acc * t2 + BasicIval<F>(F(1)) / BasicIval<F>(F(2 * j + 1));
    BasicIval<F> lf = F(2) * t * acc;
    // tail: 2 sum_{j>=J} t^(2j+1)/(2j+1) <= 2 |t|^(2J+1) / ((2J+1)(1-t^2))
    const F pad = (F(2) * pow_int(BasicIval<F>(t.mag()), 2 * J + 1) /
                   (BasicIval<F>(F(2 * J + 1)) * (F(1) - t2)))
                      .mag();
    lf = lf + BasicIval<F>{-pad, pad};
    const BasicIval<F> r = lf + BasicIval<F>(F(e)) * ln2_ival<F>();
    return upper ? r.hi : r.lo;
  };
  return {point(X.lo, false), point(X.hi, true)};
}

template <class F>
BasicIval<F> sqrt(const BasicIval<F>& X) {
  if (!valid(X)) throw DomainError("sqrt: invalid interval");
  if (X.lo < 0) throw DomainError("sqrt: argument must be nonnegative");
  const F slo = std::sqrt(X.lo);
  const F shi = std::sqrt(X.hi);
  // sqrt is correctly rounded; keep exact roots sharp at zero.
  F lo = (X.lo == 0) ? F(0) : detail::next_down(slo);
  if (lo < 0) lo = 0;
  return {lo, detail::next_up(shi)};
}

namespace detail {

// atan on |T| <= 1 + slack via four halvings then the odd Taylor series.
template <class F>
BasicIval<F> atan_core(BasicIval<F> T) {
  int halvings = 0;
  for (; halvings < 4; ++halvings)
    T = T / (F(1) + vstate::sqrt(F(1) + sqr(T)));
  const BasicIval<F> t2 = sqr(T);
  constexpr int J = sizeof(F) > 8 ? 10 : 8;
  BasicIval<F> acc = BasicIval<F>(((J - 1) % 2 ? F(-1) : F(1))) /
                     BasicIval<F>(F(2 * (J - 1) + 1));
  for (int j = J - 2; j >= 0; --j)
    acc = acc * t2 + BasicIval<F>((j % 2 ? F(-1) : F(1))) /
                         BasicIval<F>(F(2 * j + 1));
  BasicIval<F> r = T * acc;
  const F pad =
      (pow_int(BasicIval<F>(T.mag()), 2 * J + 1) / BasicIval<F>(F(2 * J + 1)))
          .hi;
  r = r + BasicIval<F>{-pad, pad};
  return scale2(r, halvings);
}

template <class F>
BasicIval<F> atan_point(F x) {
  if (x == std::numeric_limits<F>::infinity()) return half_pi_ival<F>();
  if (x == -std::numeric_limits<F>::infinity()) return -half_pi_ival<F>();
  if (std::abs(x) <= F(1)) return atan_core(BasicIval<F>(x));
  const BasicIval<F> inner = atan_core(F(1) / BasicIval<F>(x));
  return (x > 0 ? half_pi_ival<F>() : -half_pi_ival<F>()) - inner;
}

}  // namespace detail

template <class F>
BasicIval<F> atan(const BasicIval<F>& X) {
  if (!valid(X)) throw DomainError("atan: invalid interval");
  return hull(detail::atan_point(X.lo), detail::atan_point(X.hi));
}

template <class F>
BasicIval<F> asin(const BasicIval<F>& X) {
  if (!valid(X)) throw DomainError("asin: invalid interval");
  if (X.lo < F(-1) || X.hi > F(1))
    throw DomainError("asin: argument outside [-1, 1]");
  auto point = [](F x) -> BasicIval<F> {
    if (x == F(1)) return half_pi_ival<F>();
    if (x == F(-1)) return -half_pi_ival<F>();
    const BasicIval<F> xi(x);
    if (std::abs(x) <= F(0.708)) {
      const BasicIval<F> T = xi / vstate::sqrt(F(1) - sqr(xi));
      return hull(detail::atan_point(T.lo), detail::atan_point(T.hi));
    }
    // asin(x) = sign(x) * (pi/2 - atan(sqrt(1-x^2)/|x|))
    const BasicIval<F> U = vstate::sqrt(F(1) - sqr(xi)) / abs_hull(xi);
    const BasicIval<F> inner = hull(detail::atan_point(U.lo), detail::atan_point(U.hi));
    const BasicIval<F> r = half_pi_ival<F>() - inner;
    return x > 0 ? r : -r;
  };
  return hull(point(X.lo), point(X.hi));
}

// ---------------------------------------------------------------------------
// Decimal I/O (double only; this is the on-disk chunk and matrix format).

// "lo_string hi_string", 25 significant digits per endpoint. A string that
// is the canonical 25-digit form of some double denotes exactly that double
// (which makes serialize/parse round trips bit-identical); any other
// decimal is enclosed outward by one step per side.
std::string to_string(const Interval& a);
std::string endpoint_to_string(double x);
Interval parse_interval(const std::string& s);
// Single decimal string -> outward enclosure of its exact value.
Interval from_decimal(const std::string& s);

}  // namespace vstate
