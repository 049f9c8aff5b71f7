#pragma once

#include <array>
#include <optional>

#include "vstate/interval.hpp"
#include "vstate/kernels.hpp"

// The pointwise formula layer underneath the kernel pipelines. Exposed in
// its own namespace so each hand-expanded partial can be verified directly
// against an independent reference; pipeline code and tests are the only
// intended consumers.
namespace vstate::kernel_detail {

using Jet = std::array<Interval, 5>;

// Series jet intersected with the proved global ranges; sound because both
// factors contain the true values.
Jet clamped_jet(const ProblemParams& p, const Interval& arg, int max_order);

// Data fixed over one pipeline call: the x-argument, its clamped jet, and
// the normalization constant 4 pi Omega.
struct Env {
  const ProblemParams* p;
  Interval x;
  Jet X;
  Interval fpo;
};

Env make_env(const ProblemParams& p, const Interval& x);

// Data recomputed per z-evaluation: trig of z and the jet at y = x - z,
// through order y_order.
struct Loc {
  Interval z, cz, sz, h2;  // cos z, sin z, sin^2(z/2)
  Jet Y;
  Interval dr;  // R0(x) - R0(y)
};

Loc make_loc(const Env& e, const Interval& z, int y_order);

// Defect integrand log(A) B; partials d_x^dx d_z^dz for dx + dz <= 2.
// Requires y_order >= 3. Throws SingularWindow when A touches zero.
Interval fk_val(const Env& e, const Loc& l, int dx, int dz);

// Even first-kernel integrand R0(y) C - R0'(y) S; pairs (0,0), (0,1),
// (0,2), (1,0), (1,1).
Interval k1_val(const Env& e, const Loc& l, int dx, int dz);

// Odd first-kernel integrand -R0'(y) C - R0(y) S + M1; same pairs.
Interval k2_val(const Env& e, const Loc& l, int dx, int dz);

// Third-kernel summand -R0(x) S + R0'(x) C + M2; pairs (0,0), (0,1),
// (0,2), (1,0). floor_a, when given, replaces A by max(A, floor)
// everywhere: the truncated variant, defined through the diagonal.
Interval k3_val(const Env& e, const Loc& l, int dx, int dz,
                const std::optional<Interval>& floor_a);

// Fourth-kernel summand -R0'(x) S - R0(x) C, optionally floored.
Interval k4_val(const Env& e, const Loc& l,
                const std::optional<Interval>& floor_a);

// 4 m_R0^2 sin^2(delta/2), the log-argument floor matching width delta.
Interval truncation_floor(const ProblemParams& p, double delta);

}  // namespace vstate::kernel_detail
