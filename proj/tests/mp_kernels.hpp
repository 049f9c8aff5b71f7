#pragma once

// Extended-precision reference implementations used only by tests.
// Everything here is plain floating arithmetic at ~50 significant digits:
// no enclosures, no rounding control. It exists so the interval evaluators
// in the library can be checked for containment against an independently
// written route through the same formulas.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

namespace mpk {

using mp = boost::multiprecision::cpp_bin_float_50;

inline const mp kPi = acos(mp(-1));
inline const mp kOmega = mp(1537) / mp(3750);
inline const mp kFourPiOmega = 4 * kPi * kOmega;
inline constexpr int kFold = 6;

inline const std::vector<mp>& coeffs() {
  static const std::vector<mp> c = [] {
    static const char* strs[31] = {
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
    };
    std::vector<mp> v;
    v.reserve(31);
    for (const char* s : strs) v.emplace_back(s);
    return v;
  }();
  return c;
}

// k-th derivative of the cosine series at x.
inline mp r0(const mp& x, int order = 0) {
  const auto& c = coeffs();
  mp sum = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const mp a = mp(k) * kFold * x;
    mp f = 1;
    for (int j = 0; j < order; ++j) f *= mp(k) * kFold;
    mp t;
    switch (order % 4) {
      case 0: t = cos(a); break;
      case 1: t = -sin(a); break;
      case 2: t = -cos(a); break;
      default: t = sin(a); break;
    }
    sum += c[k] * f * t;
  }
  return sum;
}

// ---- pointwise kernel quantities in (x, z) coordinates, y = x - z ----

inline mp a0(const mp& x, const mp& z) {
  const mp dr = r0(x) - r0(x - z);
  const mp s = sin(z / 2);
  return dr * dr + 4 * r0(x) * r0(x - z) * s * s;
}

inline mp c0(const mp& x, const mp& z) {
  return cos(z) * log(a0(x, z)) / kFourPiOmega;
}

inline mp s0(const mp& x, const mp& z) {
  return sin(z) * log(a0(x, z)) / kFourPiOmega;
}

// Shared bracket of the defect integrand and of M1/M2:
//   B = cos(z)(R0(x)R0'(y) - R0'(x)R0(y)) + sin(z)(R0(x)R0(y) + R0'(x)R0'(y)).
inline mp bracket(const mp& x, const mp& z) {
  const mp y = x - z;
  const mp p1 = r0(x) * r0(y, 1) - r0(x, 1) * r0(y);
  const mp p2 = r0(x) * r0(y) + r0(x, 1) * r0(y, 1);
  return cos(z) * p1 + sin(z) * p2;
}

inline mp m1(const mp& x, const mp& z) {
  const mp y = x - z;
  const mp s = sin(z / 2);
  const mp g1 = 2 * (r0(x) - r0(y)) + 4 * r0(y) * s * s;
  return -(bracket(x, z) / a0(x, z)) * g1 / kFourPiOmega;
}

inline mp m2(const mp& x, const mp& z) {
  const mp y = x - z;
  const mp s = sin(z / 2);
  const mp g2 = -2 * (r0(x) - r0(y)) + 4 * r0(x) * s * s;
  return -(bracket(x, z) / a0(x, z)) * g2 / kFourPiOmega;
}

inline mp fk(const mp& x, const mp& z) { return log(a0(x, z)) * bracket(x, z); }

// Total x-derivative (z held fixed) of A and of the bracket.
inline mp a0_dx(const mp& x, const mp& z) {
  const mp y = x - z;
  const mp s = sin(z / 2);
  return 2 * (r0(x) - r0(y)) * (r0(x, 1) - r0(y, 1)) +
         4 * (r0(x, 1) * r0(y) + r0(x) * r0(y, 1)) * s * s;
}

inline mp bracket_dx(const mp& x, const mp& z) {
  const mp y = x - z;
  const mp p1x = r0(x) * r0(y, 2) - r0(x, 2) * r0(y);
  const mp p2x = r0(x, 1) * r0(y) + r0(x) * r0(y, 1) + r0(x, 2) * r0(y, 1) +
                 r0(x, 1) * r0(y, 2);
  return cos(z) * p1x + sin(z) * p2x;
}

inline mp fk_dx(const mp& x, const mp& z) {
  return a0_dx(x, z) / a0(x, z) * bracket(x, z) + log(a0(x, z)) * bracket_dx(x, z);
}

inline mp a0_dxx(const mp& x, const mp& z) {
  const mp y = x - z;
  const mp s = sin(z / 2);
  const mp d1 = r0(x, 1) - r0(y, 1);
  return 2 * d1 * d1 + 2 * (r0(x) - r0(y)) * (r0(x, 2) - r0(y, 2)) +
         4 * (r0(x, 2) * r0(y) + 2 * r0(x, 1) * r0(y, 1) + r0(x) * r0(y, 2)) * s * s;
}

inline mp bracket_dxx(const mp& x, const mp& z) {
  const mp y = x - z;
  const mp p1xx = r0(x, 1) * r0(y, 2) + r0(x) * r0(y, 3) - r0(x, 3) * r0(y) -
                  r0(x, 2) * r0(y, 1);
  const mp p2xx = r0(x, 2) * r0(y) + 2 * r0(x, 1) * r0(y, 1) + r0(x) * r0(y, 2) +
                  r0(x, 3) * r0(y, 1) + 2 * r0(x, 2) * r0(y, 2) + r0(x, 1) * r0(y, 3);
  return cos(z) * p1xx + sin(z) * p2xx;
}

inline mp fk_dxx(const mp& x, const mp& z) {
  const mp a = a0(x, z), ax = a0_dx(x, z);
  return (a0_dxx(x, z) / a - ax * ax / (a * a)) * bracket(x, z) +
         2 * (ax / a) * bracket_dx(x, z) + log(a) * bracket_dxx(x, z);
}

inline mp a0_dz(const mp& x, const mp& z) {
  const mp y = x - z;
  return 2 * (r0(x) - r0(y)) * r0(y, 1) -
         4 * r0(x) * r0(y, 1) * sin(z / 2) * sin(z / 2) +
         2 * r0(x) * r0(y) * sin(z);
}

inline mp bracket_dz(const mp& x, const mp& z) {
  const mp y = x - z;
  const mp p1 = r0(x) * r0(y, 1) - r0(x, 1) * r0(y);
  const mp p2 = r0(x) * r0(y) + r0(x, 1) * r0(y, 1);
  const mp p1z = -r0(x) * r0(y, 2) + r0(x, 1) * r0(y, 1);
  const mp p2z = -r0(x) * r0(y, 1) - r0(x, 1) * r0(y, 2);
  return -sin(z) * p1 + cos(z) * p1z + cos(z) * p2 + sin(z) * p2z;
}

inline mp fk_dz(const mp& x, const mp& z) {
  return a0_dz(x, z) / a0(x, z) * bracket(x, z) + log(a0(x, z)) * bracket_dz(x, z);
}

inline mp a0_dzz(const mp& x, const mp& z) {
  const mp y = x - z;
  const mp s = sin(z / 2);
  return 2 * r0(y, 1) * r0(y, 1) - 2 * (r0(x) - r0(y)) * r0(y, 2) +
         4 * r0(x) * r0(y, 2) * s * s - 4 * r0(x) * r0(y, 1) * sin(z) +
         2 * r0(x) * r0(y) * cos(z);
}

inline mp bracket_dzz(const mp& x, const mp& z) {
  const mp y = x - z;
  const mp p1 = r0(x) * r0(y, 1) - r0(x, 1) * r0(y);
  const mp p2 = r0(x) * r0(y) + r0(x, 1) * r0(y, 1);
  const mp p1z = -r0(x) * r0(y, 2) + r0(x, 1) * r0(y, 1);
  const mp p2z = -r0(x) * r0(y, 1) - r0(x, 1) * r0(y, 2);
  const mp p1zz = r0(x) * r0(y, 3) - r0(x, 1) * r0(y, 2);
  const mp p2zz = r0(x) * r0(y, 2) + r0(x, 1) * r0(y, 3);
  return -cos(z) * p1 - 2 * sin(z) * p1z + cos(z) * p1zz - sin(z) * p2 +
         2 * cos(z) * p2z + sin(z) * p2zz;
}

inline mp fk_dzz(const mp& x, const mp& z) {
  const mp a = a0(x, z), az = a0_dz(x, z);
  return (a0_dzz(x, z) / a - az * az / (a * a)) * bracket(x, z) +
         2 * (az / a) * bracket_dz(x, z) + log(a) * bracket_dzz(x, z);
}

inline mp a0_dxz(const mp& x, const mp& z) {
  const mp y = x - z;
  const mp s = sin(z / 2);
  return 2 * r0(y, 1) * (r0(x, 1) - r0(y, 1)) + 2 * (r0(x) - r0(y)) * r0(y, 2) -
         4 * (r0(x, 1) * r0(y, 1) + r0(x) * r0(y, 2)) * s * s +
         2 * (r0(x, 1) * r0(y) + r0(x) * r0(y, 1)) * sin(z);
}

inline mp bracket_dxz(const mp& x, const mp& z) {
  const mp y = x - z;
  const mp p1x = r0(x) * r0(y, 2) - r0(x, 2) * r0(y);
  const mp p2x = r0(x, 1) * r0(y) + r0(x) * r0(y, 1) + r0(x, 2) * r0(y, 1) +
                 r0(x, 1) * r0(y, 2);
  const mp p1xz = -r0(x) * r0(y, 3) + r0(x, 2) * r0(y, 1);
  const mp p2xz = -r0(x, 1) * r0(y, 1) - r0(x) * r0(y, 2) - r0(x, 2) * r0(y, 2) -
                  r0(x, 1) * r0(y, 3);
  return -sin(z) * p1x + cos(z) * p1xz + cos(z) * p2x + sin(z) * p2xz;
}

inline mp fk_dxz(const mp& x, const mp& z) {
  const mp a = a0(x, z), ax = a0_dx(x, z), az = a0_dz(x, z);
  return (a0_dxz(x, z) / a - ax * az / (a * a)) * bracket(x, z) +
         (ax / a) * bracket_dz(x, z) + (az / a) * bracket_dx(x, z) +
         log(a) * bracket_dxz(x, z);
}

// ---- kernel pieces ----

inline mp k1_integrand(const mp& x, const mp& z) {
  return r0(x - z) * c0(x, z) - r0(x - z, 1) * s0(x, z);
}

inline mp k2_integrand(const mp& x, const mp& z) {
  return -r0(x - z, 1) * c0(x, z) - r0(x - z) * s0(x, z) + m1(x, z);
}

inline mp k1_integrand_dx(const mp& x, const mp& z) {
  const mp y = x - z;
  const mp a = a0(x, z), ax = a0_dx(x, z);
  const mp c0x = cos(z) * (ax / a) / kFourPiOmega;
  const mp s0x = sin(z) * (ax / a) / kFourPiOmega;
  return r0(y, 1) * c0(x, z) + r0(y) * c0x - r0(y, 2) * s0(x, z) - r0(y, 1) * s0x;
}

inline mp m1_dx(const mp& x, const mp& z) {
  const mp y = x - z;
  const mp s = sin(z / 2);
  const mp a = a0(x, z), ax = a0_dx(x, z);
  const mp b = bracket(x, z), bx = bracket_dx(x, z);
  const mp g1 = 2 * (r0(x) - r0(y)) + 4 * r0(y) * s * s;
  const mp g1x = 2 * (r0(x, 1) - r0(y, 1)) + 4 * r0(y, 1) * s * s;
  return -((bx * a - b * ax) / (a * a) * g1 + (b / a) * g1x) / kFourPiOmega;
}

inline mp m2_dx(const mp& x, const mp& z) {
  const mp y = x - z;
  const mp s = sin(z / 2);
  const mp a = a0(x, z), ax = a0_dx(x, z);
  const mp b = bracket(x, z), bx = bracket_dx(x, z);
  const mp g2 = -2 * (r0(x) - r0(y)) + 4 * r0(x) * s * s;
  const mp g2x = -2 * (r0(x, 1) - r0(y, 1)) + 4 * r0(x, 1) * s * s;
  return -((bx * a - b * ax) / (a * a) * g2 + (b / a) * g2x) / kFourPiOmega;
}

inline mp k2_integrand_dx(const mp& x, const mp& z) {
  const mp y = x - z;
  const mp a = a0(x, z), ax = a0_dx(x, z);
  const mp c0x = cos(z) * (ax / a) / kFourPiOmega;
  const mp s0x = sin(z) * (ax / a) / kFourPiOmega;
  return -r0(y, 2) * c0(x, z) - r0(y, 1) * c0x - r0(y, 1) * s0(x, z) -
         r0(y) * s0x + m1_dx(x, z);
}

// K3, K4 evaluated at shifted argument y' through z = x - y'.
inline mp k3z(const mp& x, const mp& z) {
  return -r0(x) * s0(x, z) + r0(x, 1) * c0(x, z) + m2(x, z);
}

inline mp k4z(const mp& x, const mp& z) {
  return -r0(x, 1) * s0(x, z) - r0(x) * c0(x, z);
}

inline mp k3z_dx(const mp& x, const mp& z) {
  const mp a = a0(x, z), ax = a0_dx(x, z);
  const mp c0x = cos(z) * (ax / a) / kFourPiOmega;
  const mp s0x = sin(z) * (ax / a) / kFourPiOmega;
  return -r0(x, 1) * s0(x, z) - r0(x) * s0x + r0(x, 2) * c0(x, z) +
         r0(x, 1) * c0x + m2_dx(x, z);
}

inline mp k3se(const mp& x, const mp& y) {
  mp sum = 0;
  for (int j = -1; j <= kFold - 2; ++j) {
    const mp shift = y + 2 * kPi * j / kFold;
    sum += k3z(x, x - shift) + k3z(x, x + shift);
  }
  return sum;
}

inline mp k3sodd(const mp& x, const mp& y) {
  mp sum = 0;
  for (int j = -1; j <= kFold - 2; ++j) {
    const mp shift = y + 2 * kPi * j / kFold;
    sum += k3z(x, x - shift) - k3z(x, x + shift);
  }
  return sum;
}

inline mp k3se_dx(const mp& x, const mp& y) {
  mp sum = 0;
  for (int j = -1; j <= kFold - 2; ++j) {
    const mp shift = y + 2 * kPi * j / kFold;
    sum += k3z_dx(x, x - shift) + k3z_dx(x, x + shift);
  }
  return sum;
}

inline mp k4so(const mp& x, const mp& y) {
  mp sum = 0;
  for (int j = -1; j <= kFold - 2; ++j) {
    const mp shift = y + 2 * kPi * j / kFold;
    sum += k4z(x, x - shift) - k4z(x, x + shift);
  }
  return sum;
}

// ---- quadrature: tanh-sinh, robust to log-singular endpoints ----

inline mp integrate(const std::function<mp(const mp&)>& f, const mp& a, const mp& b,
                    int max_level = 10) {
  const mp half = (b - a) / 2, mid = (a + b) / 2;
  const mp tmax = 5;
  auto eval_at = [&](const mp& t) -> mp {
    const mp u = kPi / 2 * sinh(t);
    const mp ch = cosh(u);
    const mp w = half * kPi / 2 * cosh(t) / (ch * ch);
    if (w == 0) return 0;
    const mp x = mid + half * tanh(u);
    if (x <= a || x >= b) return 0;
    return w * f(x);
  };
  mp h = mp(1) / 4;
  long n = 20;  // tmax / h
  mp sum = eval_at(0);
  for (long k = 1; k <= n; ++k) sum += eval_at(k * h) + eval_at(-k * h);
  mp last = sum * h;
  for (int level = 1; level <= max_level; ++level) {
    h /= 2;
    n = 2 * n;
    mp odd = 0;
    for (long k = 1; k <= n; k += 2) odd += eval_at(k * h) + eval_at(-k * h);
    const mp cur = last / 2 + odd * h;
    if (level >= 3 && abs(cur - last) <= mp("1e-38") * (abs(cur) + 1)) return cur;
    last = cur;
  }
  return last;
}

inline mp k1(const mp& x) {
  auto f = [&](const mp& z) { return k1_integrand(x, z); };
  return r0(x) + integrate(f, -kPi, 0) + integrate(f, 0, kPi);
}

inline mp k2(const mp& x) {
  auto f = [&](const mp& z) { return k2_integrand(x, z); };
  return r0(x, 1) + integrate(f, -kPi, 0) + integrate(f, 0, kPi);
}

inline mp e0(const mp& x) {
  auto f = [&](const mp& z) { return fk(x, z); };
  const mp integral = integrate(f, -kPi, 0) + integrate(f, 0, kPi);
  return -r0(x) * r0(x, 1) + integral / kFourPiOmega;
}

inline mp e0_dx(const mp& x) {
  auto f = [&](const mp& z) { return fk_dx(x, z); };
  const mp integral = integrate(f, -kPi, 0) + integrate(f, 0, kPi);
  return -(r0(x, 1) * r0(x, 1) + r0(x) * r0(x, 2)) + integral / kFourPiOmega;
}

inline mp e0_dxx(const mp& x) {
  auto f = [&](const mp& z) { return fk_dxx(x, z); };
  const mp integral = integrate(f, -kPi, 0) + integrate(f, 0, kPi);
  return -(3 * r0(x, 1) * r0(x, 2) + r0(x) * r0(x, 3)) + integral / kFourPiOmega;
}

// Integral of K3se(x, .) over [ylo, yhi], splitting at the interior
// singularity u = x when present.
inline mp k3so_integral(const mp& x, const mp& ylo, const mp& yhi) {
  auto f = [&](const mp& u) { return k3se(x, u); };
  if (ylo < x && x < yhi) return integrate(f, ylo, x) + integrate(f, x, yhi);
  return integrate(f, ylo, yhi);
}

inline mp k3so(const mp& x, const mp& y) { return k3so_integral(x, y, kPi / kFold); }

// ---- closed-form singular tails ----

struct BoundConsts {
  mp m0 = mp("0.941");    // lower bound of the series
  mp M = mp("1.0925");    // upper bound
  mp Mp = mp("0.52");     // first derivative
  mp Mpp = mp("8.7");     // second
  mp Mppp = mp("106");    // third
  mp Mpppp = mp("4000");  // fourth
};

inline mp tail_value(const std::string& kind, const mp& d, const BoundConsts& c = {}) {
  const mp L = 1 - 2 * log(2 * c.m0 * d / kPi);
  const mp L1 = 1 - log(2 * c.m0 * d / kPi);
  const mp P = c.M * c.Mpp + 2 * c.Mp * c.Mp + c.M * c.M;
  const mp Q3 = c.M * c.Mppp + 2 * c.M * c.Mp + 3 * c.Mp * c.Mpp;
  if (kind == "FK0") return d * d * P * L;
  if (kind == "FK1") return d * d * Q3 * L + d * d * P / (2 * c.m0) * (c.Mpp * kPi + 4 * c.Mp);
  if (kind == "FK2") {
    const mp t1 = d * d *
                  (c.M * c.Mpppp + 2 * (c.M * c.Mpp + c.Mp * c.Mp) +
                   3 * c.Mpp * c.Mpp + 4 * c.Mp * c.Mppp) * L;
    const mp t2 = d * d * Q3 / c.m0 * (c.Mpp * kPi + 4 * c.Mp);
    const mp br = kPi * kPi * (c.Mpp * c.Mpp + c.Mp * c.Mppp) / 2 +
                  2 * (c.Mpp * c.M + c.Mp * c.Mp) +
                  (c.Mpp * kPi / 2 + 2 * c.Mp) * (c.Mpp * kPi / 2 + 2 * c.Mp);
    const mp t3 = P * d * d / (c.m0 * c.m0) * br;
    return t1 + t2 + t3;
  }
  if (kind == "K1f" || kind == "K4")
    return (d * 4 * c.M * L1 + d * d * c.Mp * L) / kFourPiOmega;
  if (kind == "K1fdx")
    return (d * 4 * c.Mp * L1 + d * d * c.Mpp * L +
            d / c.m0 * (kPi * c.Mpp + 4 * c.Mp) * (c.M + d * c.Mp)) /
           kFourPiOmega;
  if (kind == "K2g" || kind == "K3")
    return (d * 4 * c.Mp * L1 + d * d * c.M * L + P / c.m0 * (kPi + d) * d) /
           kFourPiOmega;
  if (kind == "K2gdx" || kind == "K3dx") {
    const mp base = d * 4 * c.Mpp * L1 + d * d * c.Mp * L +
                    d / c.m0 * (kPi * c.Mpp + 4 * c.Mp) * (c.Mp + d * c.M);
    const mp extra = d * (Q3 * (kPi + d) / c.m0 +
                          P * (c.Mpp * kPi + 4 * c.Mp) * (kPi + d) / (2 * c.m0 * c.m0) +
                          P * (kPi * kPi * c.Mpp + c.Mp * d) / (c.m0 * c.m0));
    return (base + extra) / kFourPiOmega;
  }
  throw std::runtime_error("unknown tail kind " + kind);
}

// ---- analytic constants ----

struct ConstIn {
  mp m_R = mp("0.94");
  mp M_R = mp("1.1");
  mp m_R0 = mp("0.941");
  mp M_R0 = mp("1.0925");
  mp M_R0p = mp("0.52");
  mp M_R0pp = mp("8.7");
  mp eps = mp("2e-5");
  mp C_E0 = mp("3e-8");
  mp C_K1 = mp("0.1");
  mp C1 = 35;
  int m = 6;
};

struct ConstOut {
  mp I1C, I1S, I2C, I2S, I3C, I3S, I4C, I4S, I5C, I5S;
  mp t1, t2, b1, b2, b3C, b3S, b4C, b4S, b5, b6C, b6S;
  mp C_N, C_T, C_E, C_Np, C_Tp, C_Ep;
  mp eps0, C5, C6, C_tildeK1;
};

// b6_over_omega: whether the b6 closed form carries an extra 1/Omega factor.
inline ConstOut constants(const ConstIn& in, bool b6_over_omega) {
  ConstOut o;
  const mp m = in.m;
  const mp spm = sqrt(kPi / m);
  const mp sinh_ = sin(kPi / (2 * m));
  o.I1C = spm * (4 * kPi / (m * sinh_) + sqrt(mp(2)) * (kPi * log(m / 2) + 2));
  o.I1S = 8 * spm;
  o.I2C = spm * (4 * kPi * kPi / (m * m * sinh_ * sinh_) + kPi * kPi * (m - 2) / m +
                 4 * kPi / m);
  o.I2S = spm * (8 * kPi / (m * sinh_) + 2 * sqrt(mp(2)) * kPi * log(m / 2) +
                 8 * (sqrt(mp(2)) - 1));
  o.I3C = 4 * kPi / m;
  o.I3S = 4;
  o.I4C = spm * (kPi / m) *
          (4 * kPi / (3 * m * sinh_) + sqrt(mp(2)) * (kPi * log(m / 2) + 2));
  o.I4S = o.I1S;
  o.I5C = (kPi / m) * (2 * (kPi / m / sinh_) * (kPi / m / sinh_) +
                       kPi * kPi * (m - 2) / m + 4 * kPi / m);
  o.I5S = (kPi / m) * (4 * kPi / (m * sinh_) + 2 * sqrt(mp(2)) * kPi * log(m / 2) +
                       8 * (sqrt(mp(2)) - 1));

  o.t1 = 2 * asin(1 / (2 * in.m_R));
  o.t2 = 2 * asin(sqrt(1 - (in.M_R - in.m_R) * (in.M_R - in.m_R)) / (2 * in.M_R));
  o.b1 = sqrt(16 * o.t1 + 8 * log(2 * in.M_R) * log(2 * in.M_R) *
                              (kPi / 2 - (sin(2 * o.t2) + 2 * o.t2) / 4)) /
         kFourPiOmega;
  {
    const mp c1 = kPi / (exp(mp(1)) * sqrt(mp(2)) * in.m_R);
    const mp dm = (in.M_R - in.m_R) * (in.M_R - in.m_R);
    const mp c2 = log(dm + 3 * in.M_R * in.M_R);
    const mp c3 = sqrt(mp(3)) / 2 * log(dm + 4 * in.M_R * in.M_R);
    mp b = c1 > c2 ? c1 : c2;
    if (c3 > b) b = c3;
    o.b2 = b / kFourPiOmega;
  }
  auto b3 = [&](const mp& I1) {
    return (I1 / (pow(mp(2), mp(7) / 2) * sqrt(kPi) * in.m_R * sqrt(m)) +
            sqrt(mp(2)) / (sqrt(kPi) * in.m_R * m)) /
           kOmega;
  };
  o.b3C = b3(o.I1C);
  o.b3S = b3(o.I1S);
  auto b4 = [&](const mp& I2, const mp& I3, const mp& I4) {
    return ((1 / sqrt(kPi) + sqrt(kPi) / 2) / (pow(mp(2), mp(3) / 2) * m * in.m_R * in.m_R) * I2 +
            3 * sqrt(2 * kPi) / (m * m * in.m_R * in.m_R) * I3 +
            sqrt(2 * kPi) / (in.m_R * in.m_R * pow(m, mp(3) / 2)) * I4) /
           (8 * kOmega);
  };
  o.b4C = b4(o.I2C, o.I3C, o.I4C);
  o.b4S = b4(o.I2S, o.I3S, o.I4S);
  o.b5 = (1 + 2 / sqrt(kPi)) / (kOmega * in.m_R * m * pow(mp(2), mp(5) / 2));
  auto b6 = [&](const mp& I5, const mp& I3, const mp& I4) {
    mp v = (1 / (pow(mp(2), mp(11) / 2) * sqrt(kPi) * m * in.m_R * in.m_R) +
            in.M_R * in.M_R /
                (pow(mp(2), mp(7) / 2) * pow(m, mp(3) / 2) * pow(in.m_R, 4))) *
               I5 +
           sqrt(kPi) * (in.m_R * in.m_R + in.M_R * in.M_R) /
               (pow(mp(2), mp(5) / 2) * m * m * pow(in.m_R, 4)) * I3 +
           in.M_R / (pow(mp(2), mp(9) / 2) * pow(m, mp(3) / 2) * pow(in.m_R, 3)) * I4;
    if (b6_over_omega) v /= kOmega;
    return v;
  };
  o.b6C = b6(o.I5C, o.I3C, o.I4C);
  o.b6S = b6(o.I5S, o.I3S, o.I4S);

  const mp M0 = in.M_R0, M0p = in.M_R0p, M0pp = in.M_R0pp;
  o.C_N = spm + pow(mp(2), mp(3) / 2) * kPi / sqrt(m) * o.b1 +
          (2 * pow(kPi, mp(5) / 2) / pow(m, mp(3) / 2) + 2 * sqrt(kPi * m)) * o.b2;
  o.C_T = (o.b3C + o.b3S) * (M0 + M0p) * (sqrt(2 * m) + kPi * sqrt(mp(2)) / sqrt(m));
  o.C_E = sqrt(2 * m) * (M0 * M0pp + M0p * M0p) * o.b4C +
          sqrt(2 * m) * (M0p * M0p + M0 * M0) * o.b4S;
  o.C_Np = 2 * (sqrt(2 * kPi) * o.b3C * in.eps + kPi * sqrt(mp(2)) / sqrt(m) * o.b1) +
           2 * sqrt(m * kPi) * (1 + kPi * kPi / (m * m)) *
               (o.b5 * sqrt(2 * m) * in.eps + o.b2) +
           spm;
  o.C_Tp = 2 * (o.b3C + o.b3S) * (sqrt(2 * m) * M0 + M0p * kPi * sqrt(mp(2)) / sqrt(m));
  o.C_Ep = sqrt(2 * m) * (M0 * M0pp + M0p * M0p) * o.b6C +
           sqrt(2 * m) * (M0p * M0p + M0 * M0) * o.b6S;

  o.eps0 = in.C_E0 / in.C_K1;
  o.C5 = (o.C_T + o.C_E + o.C_N) / in.C_K1;
  o.C6 = 2 * (o.C_Np + o.C_Tp + o.C_Ep) / in.C_K1;
  o.C_tildeK1 =
      in.C_K1 -
      in.eps * (o.b1 * kPi / sqrt(m) + 2 * o.b2 * sqrt(m * kPi) + spm +
                o.b3C * sqrt(2 * m) * in.M_R +
                (sqrt(kPi) + 2) / (kOmega * 4 * in.m_R * sqrt(m * kPi)) *
                    (2 * kPi * M0p + 2 * in.eps * sqrt(kPi * m)));
  return o;
}

}  // namespace mpk
