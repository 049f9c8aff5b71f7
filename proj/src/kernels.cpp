#include "vstate/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <utility>

#include "vstate/errors.hpp"
#include "vstate/kernel_pieces.hpp"
#include "vstate/quad.hpp"

namespace vstate {
namespace {

using kernel_detail::Env;
using kernel_detail::Jet;
using kernel_detail::Loc;
using kernel_detail::k1_val;
using kernel_detail::k2_val;
using kernel_detail::k3_val;
using kernel_detail::k4_val;
using kernel_detail::fk_val;
using kernel_detail::make_env;
using kernel_detail::make_loc;
using kernel_detail::truncation_floor;

// Enclosure substituted while a cell still overlaps a singular window: wide
// enough that the adaptive engine always chooses to bisect it, finite so
// partial sums stay defined.
const Interval kSingularSentinel{-1e300, 1e300};

// Entry-wise max, exact (no rounding): encloses max(alpha, beta) over the
// two inputs. Used for the truncated kernels' log-argument floor; when the
// whole A-enclosure sits above the floor the result is A bit for bit, so
// truncated and plain evaluations coincide away from the diagonal.
Interval max_hull(const Interval& a, const Interval& b) {
  return Interval(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
}

}  // namespace

namespace kernel_detail {

Interval truncation_floor(const ProblemParams& p, double delta) {
  const Interval m0(p.bounds().m_R0);
  return scale2(sqr(m0) * sqr(sin(Interval(delta / 2))), 2);
}

// Over wide arguments the raw term-by-term sum is far looser than the
// globally proved range, so intersecting the two tightens without losing
// the true value.
Jet clamped_jet(const ProblemParams& p, const Interval& arg, int max_order) {
  Jet j = p.r0().jet(arg, max_order);
  const SolutionBounds& b = p.bounds();
  j[0] = intersect(j[0], Interval(b.m_R0, b.M_R0));
  const double caps[5] = {0.0, b.M_R0p, b.M_R0pp, b.M_R0ppp, b.M_R0pppp};
  for (int d = 1; d <= max_order; ++d)
    j[d] = intersect(j[d], Interval(-caps[d], caps[d]));
  return j;
}

Env make_env(const ProblemParams& p, const Interval& x) {
  return Env{&p, x, clamped_jet(p, x, 3), p.four_pi_omega()};
}

Loc make_loc(const Env& e, const Interval& z, int y_order) {
  Loc l;
  l.z = z;
  l.cz = cos(z);
  l.sz = sin(z);
  l.h2 = sqr(sin(scale2(z, -1)));
  l.Y = clamped_jet(*e.p, e.x - z, y_order);
  l.dr = e.X[0] - l.Y[0];
  return l;
}

}  // namespace kernel_detail

namespace {

// ---- squared chord length A and its partials (x at fixed z, and z) ----

Interval a_val(const Env& e, const Loc& l) {
  return sqr(l.dr) + scale2(e.X[0] * l.Y[0] * l.h2, 2);
}

Interval a_dx(const Env& e, const Loc& l) {
  return scale2(l.dr * (e.X[1] - l.Y[1]), 1) +
         scale2((e.X[1] * l.Y[0] + e.X[0] * l.Y[1]) * l.h2, 2);
}

Interval a_dz(const Env& e, const Loc& l) {
  return scale2(l.dr * l.Y[1], 1) - scale2(e.X[0] * l.Y[1] * l.h2, 2) +
         scale2(e.X[0] * l.Y[0] * l.sz, 1);
}

Interval a_dxx(const Env& e, const Loc& l) {
  return scale2(sqr(e.X[1] - l.Y[1]), 1) +
         scale2(l.dr * (e.X[2] - l.Y[2]), 1) +
         scale2((e.X[2] * l.Y[0] + scale2(e.X[1] * l.Y[1], 1) +
                 e.X[0] * l.Y[2]) *
                    l.h2,
                2);
}

Interval a_dzz(const Env& e, const Loc& l) {
  return scale2(sqr(l.Y[1]), 1) - scale2(l.dr * l.Y[2], 1) +
         scale2(e.X[0] * l.Y[2] * l.h2, 2) -
         scale2(e.X[0] * l.Y[1] * l.sz, 2) +
         scale2(e.X[0] * l.Y[0] * l.cz, 1);
}

Interval a_dxz(const Env& e, const Loc& l) {
  return scale2(l.Y[1] * (e.X[1] - l.Y[1]), 1) + scale2(l.dr * l.Y[2], 1) -
         scale2((e.X[1] * l.Y[1] + e.X[0] * l.Y[2]) * l.h2, 2) +
         scale2((e.X[1] * l.Y[0] + e.X[0] * l.Y[1]) * l.sz, 1);
}

Interval log_a(const Interval& a) {
  if (!(a.lo > 0.0))
    throw SingularWindow("kernel window touches the diagonal singularity");
  return log(a);
}

// ---- the trigonometric bracket B and its partials ----

struct Bracket {
  Interval p1, p2, b;
};

Bracket bracket(const Env& e, const Loc& l) {
  Bracket r;
  r.p1 = e.X[0] * l.Y[1] - e.X[1] * l.Y[0];
  r.p2 = e.X[0] * l.Y[0] + e.X[1] * l.Y[1];
  r.b = l.cz * r.p1 + l.sz * r.p2;
  return r;
}

Interval bracket_dx(const Env& e, const Loc& l) {
  const Interval p1x = e.X[0] * l.Y[2] - e.X[2] * l.Y[0];
  const Interval p2x = e.X[1] * l.Y[0] + e.X[0] * l.Y[1] +
                       e.X[2] * l.Y[1] + e.X[1] * l.Y[2];
  return l.cz * p1x + l.sz * p2x;
}

Interval bracket_dz(const Env& e, const Loc& l, const Bracket& br) {
  const Interval p1z = e.X[1] * l.Y[1] - e.X[0] * l.Y[2];
  const Interval p2z = -(e.X[0] * l.Y[1] + e.X[1] * l.Y[2]);
  return -l.sz * br.p1 + l.cz * p1z + l.cz * br.p2 + l.sz * p2z;
}

Interval bracket_dxx(const Env& e, const Loc& l) {
  const Interval p1xx = e.X[1] * l.Y[2] + e.X[0] * l.Y[3] -
                        e.X[3] * l.Y[0] - e.X[2] * l.Y[1];
  const Interval p2xx = e.X[2] * l.Y[0] + scale2(e.X[1] * l.Y[1], 1) +
                        e.X[0] * l.Y[2] + e.X[3] * l.Y[1] +
                        scale2(e.X[2] * l.Y[2], 1) + e.X[1] * l.Y[3];
  return l.cz * p1xx + l.sz * p2xx;
}

Interval bracket_dzz(const Env& e, const Loc& l, const Bracket& br) {
  const Interval p1z = e.X[1] * l.Y[1] - e.X[0] * l.Y[2];
  const Interval p2z = -(e.X[0] * l.Y[1] + e.X[1] * l.Y[2]);
  const Interval p1zz = e.X[0] * l.Y[3] - e.X[1] * l.Y[2];
  const Interval p2zz = e.X[0] * l.Y[2] + e.X[1] * l.Y[3];
  return -l.cz * br.p1 - scale2(l.sz * p1z, 1) + l.cz * p1zz - l.sz * br.p2 +
         scale2(l.cz * p2z, 1) + l.sz * p2zz;
}

Interval bracket_dxz(const Env& e, const Loc& l) {
  const Interval p1x = e.X[0] * l.Y[2] - e.X[2] * l.Y[0];
  const Interval p2x = e.X[1] * l.Y[0] + e.X[0] * l.Y[1] +
                       e.X[2] * l.Y[1] + e.X[1] * l.Y[2];
  const Interval p1xz = e.X[2] * l.Y[1] - e.X[0] * l.Y[3];
  const Interval p2xz = -(e.X[1] * l.Y[1] + e.X[0] * l.Y[2] +
                          e.X[2] * l.Y[2] + e.X[1] * l.Y[3]);
  return -l.sz * p1x + l.cz * p1xz + l.cz * p2x + l.sz * p2xz;
}

}  // namespace

// ---- defect integrand log(A) B ----

Interval kernel_detail::fk_val(const Env& e, const Loc& l, int dx, int dz) {
  const Interval a = a_val(e, l);
  const Interval la = log_a(a);
  const Bracket br = bracket(e, l);
  if (dx == 0 && dz == 0) return la * br.b;
  if (dx == 1 && dz == 0)
    return (a_dx(e, l) / a) * br.b + la * bracket_dx(e, l);
  if (dx == 0 && dz == 1)
    return (a_dz(e, l) / a) * br.b + la * bracket_dz(e, l, br);
  if (dx == 2 && dz == 0) {
    const Interval rx = a_dx(e, l) / a;
    return (a_dxx(e, l) / a - sqr(rx)) * br.b +
           scale2(rx * bracket_dx(e, l), 1) + la * bracket_dxx(e, l);
  }
  if (dx == 0 && dz == 2) {
    const Interval rz = a_dz(e, l) / a;
    return (a_dzz(e, l) / a - sqr(rz)) * br.b +
           scale2(rz * bracket_dz(e, l, br), 1) + la * bracket_dzz(e, l, br);
  }
  // dx == 1 && dz == 1
  const Interval rx = a_dx(e, l) / a;
  const Interval rz = a_dz(e, l) / a;
  return (a_dxz(e, l) / a - rx * rz) * br.b + rx * bracket_dz(e, l, br) +
         rz * bracket_dx(e, l) + la * bracket_dxz(e, l);
}

namespace {

// ---- normalized log kernels C = cos(z) log A / (4 pi Omega), S likewise ----

struct CSSet {
  Interval c, s;
};

CSSet cs_val(const Env& e, const Loc& l, const Interval& la) {
  return {l.cz * la / e.fpo, l.sz * la / e.fpo};
}

CSSet cs_dz(const Env& e, const Loc& l, const Interval& la,
            const Interval& rz) {
  return {(-l.sz * la + l.cz * rz) / e.fpo, (l.cz * la + l.sz * rz) / e.fpo};
}

CSSet cs_dzz(const Env& e, const Loc& l, const Interval& la,
             const Interval& rz, const Interval& qzz) {
  // qzz = A_zz / A - (A_z / A)^2
  return {(-l.cz * la - scale2(l.sz * rz, 1) + l.cz * qzz) / e.fpo,
          (-l.sz * la + scale2(l.cz * rz, 1) + l.sz * qzz) / e.fpo};
}

CSSet cs_dx(const Env& e, const Loc& l, const Interval& rx) {
  return {l.cz * rx / e.fpo, l.sz * rx / e.fpo};
}

CSSet cs_dxz(const Env& e, const Loc& l, const Interval& rx,
             const Interval& qxz) {
  // qxz = A_xz / A - (A_x / A)(A_z / A)
  return {(-l.sz * rx + l.cz * qxz) / e.fpo, (l.cz * rx + l.sz * qxz) / e.fpo};
}

}  // namespace

// ---- even first-kernel integrand R0(y) C - R0'(y) S ----

Interval kernel_detail::k1_val(const Env& e, const Loc& l, int dx, int dz) {
  const Interval a = a_val(e, l);
  const Interval la = log_a(a);
  const CSSet o = cs_val(e, l, la);
  if (dx == 0 && dz == 0) return l.Y[0] * o.c - l.Y[1] * o.s;
  if (dx == 0 && dz == 1) {
    const Interval rz = a_dz(e, l) / a;
    const CSSet oz = cs_dz(e, l, la, rz);
    return -l.Y[1] * o.c + l.Y[0] * oz.c + l.Y[2] * o.s - l.Y[1] * oz.s;
  }
  if (dx == 0 && dz == 2) {
    const Interval rz = a_dz(e, l) / a;
    const Interval qzz = a_dzz(e, l) / a - sqr(rz);
    const CSSet oz = cs_dz(e, l, la, rz);
    const CSSet ozz = cs_dzz(e, l, la, rz, qzz);
    return l.Y[2] * o.c - scale2(l.Y[1] * oz.c, 1) + l.Y[0] * ozz.c -
           l.Y[3] * o.s + scale2(l.Y[2] * oz.s, 1) - l.Y[1] * ozz.s;
  }
  if (dx == 1 && dz == 0) {
    const CSSet ox = cs_dx(e, l, a_dx(e, l) / a);
    return l.Y[1] * o.c + l.Y[0] * ox.c - l.Y[2] * o.s - l.Y[1] * ox.s;
  }
  // dx == 1 && dz == 1
  const Interval rx = a_dx(e, l) / a;
  const Interval rz = a_dz(e, l) / a;
  const Interval qxz = a_dxz(e, l) / a - rx * rz;
  const CSSet oz = cs_dz(e, l, la, rz);
  const CSSet ox = cs_dx(e, l, rx);
  const CSSet oxz = cs_dxz(e, l, rx, qxz);
  return -l.Y[2] * o.c + l.Y[1] * oz.c - l.Y[1] * ox.c + l.Y[0] * oxz.c +
         l.Y[3] * o.s - l.Y[2] * oz.s + l.Y[2] * ox.s - l.Y[1] * oxz.s;
}

// ---- odd first-kernel integrand -R0'(y) C - R0(y) S + M1 ----

Interval kernel_detail::k2_val(const Env& e, const Loc& l, int dx, int dz) {
  const Interval a = a_val(e, l);
  const Interval la = log_a(a);
  const CSSet o = cs_val(e, l, la);
  const Bracket br = bracket(e, l);
  const Interval g1 = scale2(l.dr, 1) + scale2(l.Y[0] * l.h2, 2);
  const Interval q = br.b / a;
  const Interval m1 = -(q * g1) / e.fpo;
  if (dx == 0 && dz == 0) return -l.Y[1] * o.c - l.Y[0] * o.s + m1;
  if (dx == 0 && dz == 1) {
    const Interval az = a_dz(e, l);
    const CSSet oz = cs_dz(e, l, la, az / a);
    const Interval g1z = scale2(l.Y[1], 1) - scale2(l.Y[1] * l.h2, 2) +
                         scale2(l.Y[0] * l.sz, 1);
    const Interval qz = (bracket_dz(e, l, br) - q * az) / a;
    const Interval m1z = -(qz * g1 + q * g1z) / e.fpo;
    return l.Y[2] * o.c - l.Y[1] * oz.c + l.Y[1] * o.s - l.Y[0] * oz.s + m1z;
  }
  if (dx == 0 && dz == 2) {
    const Interval az = a_dz(e, l);
    const Interval azz = a_dzz(e, l);
    const Interval rz = az / a;
    const CSSet oz = cs_dz(e, l, la, rz);
    const CSSet ozz = cs_dzz(e, l, la, rz, azz / a - sqr(rz));
    const Interval bz = bracket_dz(e, l, br);
    const Interval g1z = scale2(l.Y[1], 1) - scale2(l.Y[1] * l.h2, 2) +
                         scale2(l.Y[0] * l.sz, 1);
    const Interval g1zz = -scale2(l.Y[2], 1) + scale2(l.Y[2] * l.h2, 2) -
                          scale2(l.Y[1] * l.sz, 2) + scale2(l.Y[0] * l.cz, 1);
    const Interval qz = (bz - q * az) / a;
    const Interval qzz =
        (bracket_dzz(e, l, br) - scale2(qz * az, 1) - q * azz) / a;
    const Interval m1zz =
        -(qzz * g1 + scale2(qz * g1z, 1) + q * g1zz) / e.fpo;
    return -l.Y[3] * o.c + scale2(l.Y[2] * oz.c, 1) - l.Y[1] * ozz.c -
           l.Y[2] * o.s + scale2(l.Y[1] * oz.s, 1) - l.Y[0] * ozz.s + m1zz;
  }
  if (dx == 1 && dz == 0) {
    const Interval ax = a_dx(e, l);
    const CSSet ox = cs_dx(e, l, ax / a);
    const Interval g1x =
        scale2(e.X[1] - l.Y[1], 1) + scale2(l.Y[1] * l.h2, 2);
    const Interval qx = (bracket_dx(e, l) - q * ax) / a;
    const Interval m1x = -(qx * g1 + q * g1x) / e.fpo;
    return -l.Y[2] * o.c - l.Y[1] * ox.c - l.Y[1] * o.s - l.Y[0] * ox.s + m1x;
  }
  // dx == 1 && dz == 1
  const Interval ax = a_dx(e, l);
  const Interval az = a_dz(e, l);
  const Interval rx = ax / a;
  const Interval rz = az / a;
  const CSSet oz = cs_dz(e, l, la, rz);
  const CSSet ox = cs_dx(e, l, rx);
  const CSSet oxz = cs_dxz(e, l, rx, a_dxz(e, l) / a - rx * rz);
  const Interval g1z = scale2(l.Y[1], 1) - scale2(l.Y[1] * l.h2, 2) +
                       scale2(l.Y[0] * l.sz, 1);
  const Interval g1x = scale2(e.X[1] - l.Y[1], 1) + scale2(l.Y[1] * l.h2, 2);
  const Interval g1xz = scale2(l.Y[2], 1) - scale2(l.Y[2] * l.h2, 2) +
                        scale2(l.Y[1] * l.sz, 1);
  const Interval qx = (bracket_dx(e, l) - q * ax) / a;
  const Interval qz = (bracket_dz(e, l, br) - q * az) / a;
  const Interval qxz =
      (bracket_dxz(e, l) - qx * az - qz * ax - q * a_dxz(e, l)) / a;
  const Interval m1xz = -(qxz * g1 + qx * g1z + qz * g1x + q * g1xz) / e.fpo;
  return l.Y[3] * o.c - l.Y[2] * oz.c + l.Y[2] * ox.c - l.Y[1] * oxz.c +
         l.Y[2] * o.s - l.Y[1] * oz.s + l.Y[1] * ox.s - l.Y[0] * oxz.s + m1xz;
}

// ---- third-kernel integrand -R0(x) S + R0'(x) C + M2 ----
//
// floor_a, when present, replaces A by max(A, floor) everywhere (log and
// quotients): the truncated kernel variant. Partials in z are only ever
// requested untruncated.

Interval kernel_detail::k3_val(const Env& e, const Loc& l, int dx, int dz,
                               const std::optional<Interval>& floor_a) {
  const Interval a0v = a_val(e, l);
  const Interval a = floor_a ? max_hull(a0v, *floor_a) : a0v;
  const Interval la = log_a(a);
  const CSSet o = cs_val(e, l, la);
  const Bracket br = bracket(e, l);
  const Interval g2 = -scale2(l.dr, 1) + scale2(e.X[0] * l.h2, 2);
  const Interval q = br.b / a;
  const Interval m2 = -(q * g2) / e.fpo;
  if (dx == 0 && dz == 0) return -e.X[0] * o.s + e.X[1] * o.c + m2;
  if (dx == 0 && dz == 1) {
    const Interval az = a_dz(e, l);
    const CSSet oz = cs_dz(e, l, la, az / a);
    const Interval g2z = -scale2(l.Y[1], 1) + scale2(e.X[0] * l.sz, 1);
    const Interval qz = (bracket_dz(e, l, br) - q * az) / a;
    const Interval m2z = -(qz * g2 + q * g2z) / e.fpo;
    return -e.X[0] * oz.s + e.X[1] * oz.c + m2z;
  }
  if (dx == 0 && dz == 2) {
    const Interval az = a_dz(e, l);
    const Interval azz = a_dzz(e, l);
    const Interval rz = az / a;
    const CSSet ozz = cs_dzz(e, l, la, rz, azz / a - sqr(rz));
    const Interval g2z = -scale2(l.Y[1], 1) + scale2(e.X[0] * l.sz, 1);
    const Interval g2zz = scale2(l.Y[2], 1) + scale2(e.X[0] * l.cz, 1);
    const Interval qz = (bracket_dz(e, l, br) - q * az) / a;
    const Interval qzz =
        (bracket_dzz(e, l, br) - scale2(qz * az, 1) - q * azz) / a;
    const Interval m2zz =
        -(qzz * g2 + scale2(qz * g2z, 1) + q * g2zz) / e.fpo;
    return -e.X[0] * ozz.s + e.X[1] * ozz.c + m2zz;
  }
  // dx == 1 && dz == 0
  const Interval ax = a_dx(e, l);
  const CSSet ox = cs_dx(e, l, ax / a);
  const Interval g2x = -scale2(e.X[1] - l.Y[1], 1) + scale2(e.X[1] * l.h2, 2);
  const Interval qx = (bracket_dx(e, l) - q * ax) / a;
  const Interval m2x = -(qx * g2 + q * g2x) / e.fpo;
  return -e.X[1] * o.s - e.X[0] * ox.s + e.X[2] * o.c + e.X[1] * ox.c + m2x;
}

// ---- fourth-kernel summand -R0'(x) S - R0(x) C ----

Interval kernel_detail::k4_val(const Env& e, const Loc& l,
                               const std::optional<Interval>& floor_a) {
  const Interval a0v = a_val(e, l);
  const Interval a = floor_a ? max_hull(a0v, *floor_a) : a0v;
  const CSSet o = cs_val(e, l, log_a(a));
  return -e.X[1] * o.s - e.X[0] * o.c;
}

namespace {

// ---- adaptive window integral over [delta, 2 pi - delta] ----
//
// The right endpoint is irrational; the adaptive sweep runs to the nearest
// double safely below it and the remaining sliver (a few ulps) is enclosed
// directly as value times length.

Interval window_integral(const IntegrandSpec& f, QuadRule rule, double delta,
                         double rel_tol) {
  const Interval& tp = two_pi_ival<double>();
  const double b_main = detail::next_down(tp.lo - delta);
  const Interval core = integrate_adaptive(f, delta, b_main, rule, rel_tol).value;
  const Interval hi_end = tp - Interval(delta);
  const Interval edge_arg(b_main, hi_end.hi);
  const Interval edge_len = hi_end - Interval(b_main);
  return core + f.eval(edge_arg, 0) * edge_len;
}

// Fixed-step variant for integrands evaluated over a wide x-cell. There the
// x-slot alone puts a floor under every local enclosure, so a relative
// acceptance test can never trigger near the integrand's zeros and the
// adaptive sweep would grind to the depth cap. A uniform step sized from the
// known derivative bounds gives a finite, predictable cost instead.
Interval window_integral_fixed(const IntegrandSpec& f, double delta,
                               double step, QuadRule rule) {
  const Interval& tp = two_pi_ival<double>();
  const double b_main = detail::next_down(tp.lo - delta);
  const Interval core = integrate_fixed(f, delta, b_main, rule, step);
  const Interval hi_end = tp - Interval(delta);
  const Interval edge_arg(b_main, hi_end.hi);
  const Interval edge_len = hi_end - Interval(b_main);
  return core + f.eval(edge_arg, 0) * edge_len;
}

IntegrandSpec guarded(std::function<Interval(const Interval&, int)> raw,
                      int max_order) {
  return {[raw = std::move(raw)](const Interval& z, int d) {
            try {
              return raw(z, d);
            } catch (const SingularWindow&) {
              return kSingularSentinel;
            }
          },
          max_order};
}

void check_deriv(int deriv) {
  if (deriv < 0 || deriv > 1)
    throw DomainError("kernel derivative order outside 0..1");
}

}  // namespace

ProblemParams::ProblemParams()
    : fold_(6),
      omega_num_(1537),
      omega_den_(3750),
      eps_(2e-5),
      r0_(FourierCosSeries::approximate_solution()) {}

Interval ProblemParams::omega() const {
  return Interval(static_cast<double>(omega_num_)) /
         Interval(static_cast<double>(omega_den_));
}

Interval ProblemParams::four_pi_omega() const {
  return scale2(pi_ival<double>() * omega(), 2);
}

Interval ProblemParams::domain_end() const {
  return pi_ival<double>() / Interval(static_cast<double>(fold_));
}

Interval A0(const ProblemParams& p, const Interval& x, const Interval& z) {
  const Env e = make_env(p, x);
  const Loc l = make_loc(e, z, 0);
  return intersect(a_val(e, l),
                   Interval(0.0, std::numeric_limits<double>::infinity()));
}

Interval CS0(const ProblemParams& p, const Interval& x, const Interval& z,
             LogKernel which) {
  const Env e = make_env(p, x);
  const Loc l = make_loc(e, z, 0);
  const CSSet o = cs_val(e, l, log_a(a_val(e, l)));
  return which == LogKernel::C ? o.c : o.s;
}

Interval M12(const ProblemParams& p, const Interval& x, const Interval& z,
             MKernel which) {
  const Env e = make_env(p, x);
  const Loc l = make_loc(e, z, 1);
  const Interval a = a_val(e, l);
  log_a(a);  // positivity gate; M has no log but shares the window
  const Bracket br = bracket(e, l);
  const Interval g =
      which == MKernel::M1
          ? scale2(l.dr, 1) + scale2(l.Y[0] * l.h2, 2)
          : -scale2(l.dr, 1) + scale2(e.X[0] * l.h2, 2);
  return -(br.b / a) * g / e.fpo;
}

Interval FK(const ProblemParams& p, const Interval& x, const Interval& z,
            int dx_order, int dz_order) {
  if (dx_order < 0 || dz_order < 0 || dx_order + dz_order > 2)
    throw DomainError("defect integrand partials limited to total order 2");
  const Env e = make_env(p, x);
  return fk_val(e, make_loc(e, z, 3), dx_order, dz_order);
}

SingularTailBound singular_tail(TailKind kind, double delta,
                                const ProblemParams& p) {
  if (!(delta > 0.0) || !(delta < 0.5))
    throw DomainError("tail half-width outside (0, 1/2)");
  const SolutionBounds& c = p.bounds();
  const Interval d(delta);
  const Interval m0(c.m_R0), M(c.M_R0), Mp(c.M_R0p), Mpp(c.M_R0pp),
      Mppp(c.M_R0ppp), Mpppp(c.M_R0pppp);
  const Interval& pi = pi_ival<double>();
  const Interval lg = log(scale2(m0 * d, 1) / pi);
  const Interval L = 1.0 - scale2(lg, 1);
  const Interval L1 = 1.0 - lg;
  const Interval P = M * Mpp + scale2(sqr(Mp), 1) + sqr(M);
  const Interval Q3 = M * Mppp + scale2(M * Mp, 1) + 3.0 * (Mp * Mpp);
  const Interval d2 = sqr(d);
  Interval v;
  switch (kind) {
    case TailKind::FK0:
      v = d2 * P * L;
      break;
    case TailKind::FK1:
      v = d2 * Q3 * L + d2 * P / scale2(m0, 1) * (Mpp * pi + scale2(Mp, 2));
      break;
    case TailKind::FK2: {
      const Interval t1 =
          d2 *
          (M * Mpppp + scale2(M * Mpp + sqr(Mp), 1) + 3.0 * sqr(Mpp) +
           scale2(Mp * Mppp, 2)) *
          L;
      const Interval t2 = d2 * Q3 / m0 * (Mpp * pi + scale2(Mp, 2));
      const Interval half_term = scale2(Mpp * pi, -1) + scale2(Mp, 1);
      const Interval inner = scale2(sqr(pi) * (sqr(Mpp) + Mp * Mppp), -1) +
                             scale2(Mpp * M + sqr(Mp), 1) + sqr(half_term);
      v = t1 + t2 + P * d2 / sqr(m0) * inner;
      break;
    }
    case TailKind::K1f:
    case TailKind::K4:
      v = (scale2(d * M, 2) * L1 + d2 * Mp * L) / p.four_pi_omega();
      break;
    case TailKind::K1fdx:
      v = (scale2(d * Mp, 2) * L1 + d2 * Mpp * L +
           d / m0 * (pi * Mpp + scale2(Mp, 2)) * (M + d * Mp)) /
          p.four_pi_omega();
      break;
    case TailKind::K2g:
    case TailKind::K3:
      v = (scale2(d * Mp, 2) * L1 + d2 * M * L + P / m0 * (pi + d) * d) /
          p.four_pi_omega();
      break;
    case TailKind::K2gdx:
    case TailKind::K3dx: {
      const Interval base = scale2(d * Mpp, 2) * L1 + d2 * Mp * L +
                            d / m0 * (pi * Mpp + scale2(Mp, 2)) * (Mp + d * M);
      const Interval extra =
          d * (Q3 * (pi + d) / m0 +
               P * (Mpp * pi + scale2(Mp, 2)) * (pi + d) / scale2(sqr(m0), 1) +
               P * (sqr(pi) * Mpp + Mp * d) / sqr(m0));
      v = (base + extra) / p.four_pi_omega();
      break;
    }
  }
  return {delta, hull(-v, v)};
}

Interval E0(const ProblemParams& p, const Interval& x, int deriv, double delta,
            double rel_tol) {
  check_deriv(deriv);
  static constexpr double kDelta[2] = {1e-6, 6e-4};
  static constexpr double kRelTol[2] = {3e-7, 9e-3};
  const bool wide = x.lo != x.hi;
  if (delta == 0.0) delta = deriv == 1 && wide ? 2e-2 : kDelta[deriv];
  if (rel_tol == 0.0) rel_tol = kRelTol[deriv];
  if (deriv == 0 && wide) {
    const double r = x.rad();
    return E0(p, Interval(x.mid()), 0, delta, rel_tol) +
           E0(p, x, 1) * Interval(-r, r);
  }
  const Env e = make_env(p, x);
  const QuadRule rule = deriv == 0 ? QuadRule::C2Midpoint : QuadRule::C1Taylor;
  const IntegrandSpec f = guarded(
      [&e, deriv](const Interval& z, int dz) {
        return fk_val(e, make_loc(e, z, 3), deriv, dz);
      },
      rule_order(rule));
  const Interval window =
      deriv == 1 && wide
          ? window_integral_fixed(f, delta, 1e-3, QuadRule::C1Taylor)
          : window_integral(f, rule, delta, rel_tol);
  const Interval tail =
      singular_tail(deriv == 0 ? TailKind::FK0 : TailKind::FK1, delta, p)
          .value;
  const Interval point = deriv == 0 ? -(e.X[0] * e.X[1])
                                    : -(sqr(e.X[1]) + e.X[0] * e.X[2]);
  return point + (window + tail) / e.fpo;
}

Interval E0xx_cell(const ProblemParams& p, const Interval& X, double delta,
                   double rel_tol) {
  if (delta == 0.0) delta = 4e-2;
  if (rel_tol == 0.0) rel_tol = 30.0;
  const Env e = make_env(p, X);
  const IntegrandSpec f = guarded(
      [&e](const Interval& z, int) {
        return fk_val(e, make_loc(e, z, 3), 2, 0);
      },
      0);
  // The integrand is bounded by (R0 R0'' + 2 R0'^2 + R0^2) / A with
  // A >= 4 sin^2(delta / 2) across the window, so this uniform step keeps
  // the accumulated order-0 enclosure width near rel_tol.
  const SolutionBounds& b = p.bounds();
  const double fxx_scale =
      b.M_R0 * b.M_R0pp + 2.0 * b.M_R0p * b.M_R0p + b.M_R0 * b.M_R0;
  const double step = rel_tol * delta * delta / (4.0 * fxx_scale);
  const Interval window = window_integral_fixed(f, delta, step, QuadRule::C0);
  const Interval tail = singular_tail(TailKind::FK2, delta, p).value;
  const Interval point = -(3.0 * (e.X[1] * e.X[2]) + e.X[0] * e.X[3]);
  return point + (window + tail) / e.fpo;
}

VerificationReport E0_second_bound(const ProblemParams& p, double step,
                                   double bound) {
  const IntegrandSpec f{
      [&p](const Interval& X, int) { return E0xx_cell(p, X); }, 0};
  VerificationReport rep = bound_function(f, 0.0, p.domain_end().hi, step,
                                          bound, BoundMode::abs_upper);
  rep.lemma = "defect-second-derivative";
  return rep;
}

Interval K12(const ProblemParams& p, const Interval& x, KKind which, int deriv,
             double delta, double rel_tol) {
  check_deriv(deriv);
  static constexpr double kDelta[2][2] = {{1e-6, 0.1}, {3e-5, 2e-2}};
  static constexpr double kRelTol[2][2] = {{3e-5, 2.0}, {2.5e-4, 50.0}};
  const int w = which == KKind::K1 ? 0 : 1;
  if (delta == 0.0) delta = kDelta[w][deriv];
  if (rel_tol == 0.0) rel_tol = kRelTol[w][deriv];
  if (deriv == 0 && x.lo != x.hi) {
    const double r = x.rad();
    return K12(p, Interval(x.mid()), which, 0, delta, rel_tol) +
           K12(p, x, which, 1) * Interval(-r, r);
  }
  const Env e = make_env(p, x);
  const QuadRule rule = deriv == 0 ? QuadRule::C2Midpoint : QuadRule::C1Taylor;
  const IntegrandSpec f = guarded(
      [&e, which, deriv](const Interval& z, int dz) {
        return which == KKind::K1 ? k1_val(e, make_loc(e, z, 3), deriv, dz)
                                  : k2_val(e, make_loc(e, z, 3), deriv, dz);
      },
      rule_order(rule));
  const Interval window =
      deriv == 1 && x.lo != x.hi
          ? window_integral_fixed(f, delta, 5e-3, QuadRule::C1Taylor)
          : window_integral(f, rule, delta, rel_tol);
  static constexpr TailKind kTail[2][2] = {
      {TailKind::K1f, TailKind::K1fdx}, {TailKind::K2g, TailKind::K2gdx}};
  const Interval tail = singular_tail(kTail[w][deriv], delta, p).value;
  const Interval point = e.X[w + deriv];
  return point + window + tail;
}

namespace {

// Shared copy loop of the symmetrized kernels: kappa(x, x - shift) paired
// with kappa(x, x + shift) for the 2(m-1)+2 shifts y + 2 pi j / m.
Interval k3_copies(const Env& e, const Interval& y, K3Part part,
                   const std::optional<Interval>& floor_a) {
  const int m = e.p->fold();
  Interval acc(0.0);
  for (int j = -1; j <= m - 2; ++j) {
    const Interval shift =
        y + two_pi_ival<double>() * static_cast<double>(j) /
                static_cast<double>(m);
    const Interval zm = e.x - shift;
    const Interval zp = e.x + shift;
    switch (part) {
      case K3Part::SymEven:
        acc = acc + k3_val(e, make_loc(e, zm, 1), 0, 0, floor_a) +
              k3_val(e, make_loc(e, zp, 1), 0, 0, floor_a);
        break;
      case K3Part::SymOdd:
        acc = acc + k3_val(e, make_loc(e, zm, 1), 0, 0, floor_a) -
              k3_val(e, make_loc(e, zp, 1), 0, 0, floor_a);
        break;
      default:  // SymEvenDx
        acc = acc + k3_val(e, make_loc(e, zm, 2), 1, 0, floor_a) +
              k3_val(e, make_loc(e, zp, 2), 1, 0, floor_a);
        break;
    }
  }
  return acc;
}

// One copy of the even combination integrated in y'-space over [lo, hi]
// (so the cell endpoints stay exact doubles). minus_copy selects
// kappa(x, x - (u + c)) with du = -dz, else kappa(x, x + (u + c)).
Interval one_copy_integral(const Env& e, const Interval& c, bool minus_copy,
                           double lo, double hi, double rel_tol) {
  const IntegrandSpec f = guarded(
      [&e, &c, minus_copy](const Interval& u, int d) {
        const Interval z = minus_copy ? e.x - (u + c) : e.x + (u + c);
        const Interval v = k3_val(e, make_loc(e, z, 3), 0, d, std::nullopt);
        return (d == 1 && minus_copy) ? -v : v;
      },
      2);
  return integrate_adaptive(f, lo, hi, QuadRule::C2Midpoint, rel_tol).value;
}

// Integral over [y_lo, y_hi] of the even combination, excising each copy's
// singular window |z| <= delta. The excised set is chosen inside the true
// window for every point of the x-interval, so one tail allowance per copy
// covers it; allowances beyond the first are added here, the first is the
// caller's.
Interval odd_integral(const Env& e, double y_lo, double y_hi, double delta,
                      double rel_tol) {
  if (!(y_hi > y_lo)) return Interval(0.0);
  const int m = e.p->fold();
  Interval acc(0.0);
  int clipped = 0;
  for (int j = -1; j <= m - 2; ++j) {
    const Interval c = two_pi_ival<double>() * static_cast<double>(j) /
                       static_cast<double>(m);
    for (const bool minus_copy : {true, false}) {
      // Singular where z = 0: u = x - c (minus copy), u = -x - c (plus).
      const Interval u_star = minus_copy ? e.x - c : -e.x - c;
      const double e1 = (u_star - Interval(delta)).hi;
      const double e2 = (u_star + Interval(delta)).lo;
      if (e1 >= e2 || e2 <= y_lo || e1 >= y_hi) {
        acc = acc + one_copy_integral(e, c, minus_copy, y_lo, y_hi, rel_tol);
        continue;
      }
      ++clipped;
      if (e1 > y_lo)
        acc = acc + one_copy_integral(e, c, minus_copy, y_lo, e1, rel_tol);
      if (e2 < y_hi)
        acc = acc + one_copy_integral(e, c, minus_copy, e2, y_hi, rel_tol);
    }
  }
  if (clipped > 1) {
    const Interval allowance =
        singular_tail(TailKind::K3, delta, *e.p).value;
    for (int i = 1; i < clipped; ++i) acc = acc + allowance;
  }
  return acc;
}

}  // namespace

Interval K3_family(const ProblemParams& p, const Interval& x, double y_lo,
                   double y_hi, K3Part part, double delta, double rel_tol) {
  const Env e = make_env(p, x);
  if (part == K3Part::OddIntegral)
    return odd_integral(e, y_lo, y_hi, delta, rel_tol);
  std::optional<Interval> floor_a;
  if (delta > 0.0) floor_a = truncation_floor(p, delta);
  return k3_copies(e, Interval(y_lo, y_hi), part, floor_a);
}

Interval K3so_from(const ProblemParams& p, const Interval& x, double y,
                   double delta, double rel_tol) {
  const Interval de = p.domain_end();
  const double b_main = de.lo;
  Interval acc(0.0);
  if (y < b_main)
    acc = K3_family(p, x, y, b_main, K3Part::OddIntegral, delta, rel_tol);
  // Sliver between the last representable double and pi/m itself.
  const Interval sliver_val =
      K3_family(p, x, b_main, de.hi, K3Part::SymEven, 0.0, rel_tol);
  Interval sliver_len = de - Interval(std::max(y, b_main));
  if (y >= b_main) sliver_len = hull(Interval(0.0), sliver_len);
  return acc + sliver_val * sliver_len;
}

Interval K3so_dx(const ProblemParams& p, const Interval& x, double y,
                 const TruncationDeltas& deltas) {
  const Interval de = p.domain_end();
  const Interval boundary =
      K3_family(p, x, y, y, K3Part::SymOdd, deltas.k3_taylor) -
      K3_family(p, x, de.lo, de.hi, K3Part::SymOdd, deltas.k3_taylor);
  const Env e = make_env(p, x);
  const std::optional<Interval> floor_a =
      truncation_floor(p, deltas.k3_dx);
  const IntegrandSpec f{
      [&e, &floor_a](const Interval& u, int) {
        return k3_copies(e, u, K3Part::SymEvenDx, floor_a);
      },
      0};
  const double b_main = de.lo;
  Interval integral(0.0);
  if (y < b_main) {
    const double step = (b_main - y) / 64.0;
    integral = integrate_fixed(f, y, b_main, QuadRule::C0, step);
  }
  const Interval sliver_len = de - Interval(std::max(y, b_main));
  integral = integral + f.eval(Interval(b_main, de.hi), 0) *
                            hull(Interval(0.0), sliver_len);
  const Interval tail = singular_tail(TailKind::K3dx, deltas.k3_dx, p).value;
  return boundary + integral + tail;
}

Interval K4so(const ProblemParams& p, const Interval& x, const Interval& y,
              double delta) {
  const Env e = make_env(p, x);
  std::optional<Interval> floor_a;
  if (delta > 0.0) floor_a = truncation_floor(p, delta);
  const int m = p.fold();
  Interval acc(0.0);
  for (int j = -1; j <= m - 2; ++j) {
    const Interval shift =
        y + two_pi_ival<double>() * static_cast<double>(j) /
                static_cast<double>(m);
    acc = acc + k4_val(e, make_loc(e, e.x - shift, 0), floor_a) -
          k4_val(e, make_loc(e, e.x + shift, 0), floor_a);
  }
  return acc;
}

Interval K_full(const ProblemParams& p, const Interval& x, const Interval& y,
                const TruncationDeltas& deltas,
                const std::optional<Interval>& k1_hint) {
  const Interval k1 = k1_hint ? *k1_hint : K12(p, x, KKind::K1, 0);
  if (k1.contains(0.0))
    throw K1ContainsZero("first-kernel enclosure contains zero");
  Interval k3;
  const Interval k3_tail = singular_tail(TailKind::K3, deltas.k3_clip, p).value;
  if (x.lo == x.hi && y.lo == y.hi) {
    k3 = K3so_from(p, x, y.lo, deltas.k3_clip) + k3_tail;
  } else {
    // First-order expansion around the cell midpoint: move x at fixed
    // midpoint y, then y over the whole cell.
    const double ym = y.mid();
    const double rx = x.rad();
    const double ry = y.rad();
    k3 = K3so_from(p, Interval(x.mid()), ym, deltas.k3_clip) + k3_tail +
         K3so_dx(p, x, ym, deltas) * Interval(-rx, rx) +
         -K3_family(p, x, y.lo, y.hi, K3Part::SymEven, deltas.k3_taylor) *
             Interval(-ry, ry);
  }
  const Interval k4 = K4so(p, x, y, deltas.k4);
  Interval num = k3 + k4;
  if (y.hi <= x.lo) {
    num = num + K12(p, x, KKind::K2, 0);
  } else if (!(y.lo > x.hi)) {
    num = num + Interval(0.0, 1.0) * K12(p, x, KKind::K2, 0);
  }
  return num / k1;
}

std::vector<Interval> fourier_basis(const ProblemParams& p, const Interval& x,
                                    int n, int deriv) {
  if (n < 0) throw DomainError("basis length must be nonnegative");
  check_deriv(deriv);
  const Interval& pi = pi_ival<double>();
  const double m = static_cast<double>(p.fold());
  const Interval c1 = sqrt(Interval(m) / pi);
  const Interval cp = sqrt(Interval(2.0 * m) / pi);
  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int idx = 1; idx <= n; ++idx) {
    if (idx == 1) {
      out.push_back(deriv == 0 ? c1 : Interval(0.0));
      continue;
    }
    const int k = idx / 2;
    const double freq = 2.0 * m * k;  // exact for any realistic k
    const Interval angle = x * freq;
    const bool is_sin = idx % 2 == 0;
    if (deriv == 0)
      out.push_back(is_sin ? cp * sin(angle) : cp * cos(angle));
    else
      out.push_back(is_sin ? cp * cos(angle) * freq
                           : -(cp * sin(angle) * freq));
  }
  return out;
}

Interval KF_eval(const IntervalMatrix& A, const ProblemParams& p,
                 const Interval& x, const Interval& y) {
  const auto ex = fourier_basis(p, x, A.n, 0);
  const auto ey = fourier_basis(p, y, A.n, 0);
  Interval acc(0.0);
  for (int k = 0; k < A.n; ++k)
    for (int l = 0; l < A.n; ++l) acc = acc + A.at(k, l) * ex[k] * ey[l];
  return acc;
}

KFGradient KF_gradient(const IntervalMatrix& A, const ProblemParams& p,
                       const Interval& x, const Interval& y) {
  const auto ex = fourier_basis(p, x, A.n, 0);
  const auto ey = fourier_basis(p, y, A.n, 0);
  const auto exd = fourier_basis(p, x, A.n, 1);
  const auto eyd = fourier_basis(p, y, A.n, 1);
  KFGradient g{Interval(0.0), Interval(0.0), Interval(0.0)};
  for (int k = 0; k < A.n; ++k) {
    for (int l = 0; l < A.n; ++l) {
      const Interval& a = A.at(k, l);
      g.value = g.value + a * ex[k] * ey[l];
      g.dx = g.dx + a * exd[k] * ey[l];
      g.dy = g.dy + a * ex[k] * eyd[l];
    }
  }
  return g;
}

}  // namespace vstate
