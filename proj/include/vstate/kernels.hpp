#pragma once

#include <optional>
#include <vector>

#include "vstate/interval.hpp"
#include "vstate/matrix.hpp"
#include "vstate/report.hpp"
#include "vstate/series.hpp"

namespace vstate {

// Proved pointwise bounds on the trigonometric approximate solution and its
// derivatives, plus the slightly wider box known to contain the exact
// solution. Established independently by the cell-wise range checks; the
// kernel formulas consume them both as constants and to clamp series
// enclosures over wide arguments (the raw term-by-term sum over a wide cell
// is far looser than the globally proved range, and intersecting with a box
// that provably contains the true value never loses it).
struct SolutionBounds {
  double m_R0 = 0.941;
  double M_R0 = 1.0925;
  double m_R = 0.94;
  double M_R = 1.1;
  double M_R0p = 0.52;
  double M_R0pp = 8.7;
  double M_R0ppp = 106.0;
  double M_R0pppp = 4000.0;
};

// Fixed data of the verification problem: fold count m, angular velocity
// Omega (an exact rational, enclosed outward on demand), perturbation radius
// eps, the approximate solution and its proved bounds.
class ProblemParams {
 public:
  ProblemParams();

  int fold() const { return fold_; }
  double eps() const { return eps_; }
  const FourierCosSeries& r0() const { return r0_; }
  const SolutionBounds& bounds() const { return bounds_; }

  Interval omega() const;
  Interval four_pi_omega() const;
  // Enclosure of pi/m, the right end of the fundamental domain.
  Interval domain_end() const;

 private:
  int fold_;
  long omega_num_;
  long omega_den_;
  double eps_;
  FourierCosSeries r0_;
  SolutionBounds bounds_;
};

// Squared chord length A(x, x - z) = (R0(x) - R0(y))^2 + 4 R0(x) R0(y)
// sin^2(z/2) at y = x - z, intersected with [0, inf). Never throws on wide
// windows; the log-kernel evaluators below do the positivity check.
Interval A0(const ProblemParams& p, const Interval& x, const Interval& z);

// Which trigonometric factor multiplies the log term.
enum class LogKernel { C, S };

// cos(z) log A / (4 pi Omega) resp. sin(z) log A / (4 pi Omega). Throws
// SingularWindow when the A-enclosure touches zero (window overlaps the
// diagonal); adaptive callers catch that and bisect.
Interval CS0(const ProblemParams& p, const Interval& x, const Interval& z,
             LogKernel which);

// Which of the two bracket-quotient kernels.
enum class MKernel { M1, M2 };

// The bounded remainder kernels -(B/A) g_i / (4 pi Omega) built from the
// shared trigonometric bracket B. Throws SingularWindow when A touches zero.
Interval M12(const ProblemParams& p, const Interval& x, const Interval& z,
             MKernel which);

// Mixed partial d_x^dx d_z^dz of the defect integrand log(A) B, for
// dx + dz <= 2 (six order pairs). Throws DomainError on higher orders and
// SingularWindow near the diagonal.
Interval FK(const ProblemParams& p, const Interval& x, const Interval& z,
            int dx_order, int dz_order);

// Closed-form majorants for the mass an integral omits over the excluded
// window around the singularity, half-width delta in (0, 1/2). FK-kind
// bounds are in the raw scale of the defect integrand (the pipeline divides
// by 4 pi Omega afterwards); K-kind bounds already carry 1/(4 pi Omega),
// matching where each is consumed.
enum class TailKind { FK0, FK1, FK2, K1f, K1fdx, K2g, K2gdx, K3, K3dx, K4 };

struct SingularTailBound {
  double delta = 0.0;
  Interval value;  // symmetric interval bound * [-1, 1]
};

SingularTailBound singular_tail(TailKind kind, double delta,
                                const ProblemParams& p);

// Defect E0 (deriv 0) or its first derivative (deriv 1) at x: the pointwise
// series term plus the adaptive window integral over [delta, 2pi - delta]
// plus the matching tail allowance. Passing 0 for delta or rel_tol selects
// the standard run parameters (1e-6 / 3e-7 for deriv 0, 6e-4 / 9e-3 for
// deriv 1). A wide x is expanded to first order around its midpoint, since
// direct integration with a wide x-slot cannot meet a relative target; the
// derivative over a wide x integrates with a fixed step (and a wider default
// excision, 2e-2) because the x-slot floor defeats adaptive acceptance.
Interval E0(const ProblemParams& p, const Interval& x, int deriv = 0,
            double delta = 0.0, double rel_tol = 0.0);

// Second defect derivative over the cell X with the order-0 rule on a
// uniform grid sized so the window enclosure width lands near rel_tol
// (defaults delta 4e-2, rel_tol 30).
Interval E0xx_cell(const ProblemParams& p, const Interval& X,
                   double delta = 0.0, double rel_tol = 0.0);

// Cell-wise |E0''| < bound over [0, pi/m]. Three-way verdict: pass when
// every cell certifies strictly, fail when some cell's enclosure lies
// entirely at or beyond the bound, inconclusive when a cell straddles it.
VerificationReport E0_second_bound(const ProblemParams& p, double step,
                                   double bound = 50.0);

enum class KKind { K1, K2 };

// First-order kernels at x: K1 = R0 + window integral of the even part,
// K2 = R0' + window integral of the odd part (deriv 1 differentiates both
// terms). Zero delta / rel_tol select the standard parameters: K1 deriv 0
// 1e-6 / 3e-5, deriv 1 0.1 / 2; K2 deriv 0 3e-5 / 2.5e-4, deriv 1
// 2e-2 / 50. Wide x at deriv 0 expands to first order around the midpoint;
// the derivative over a wide x integrates with a fixed step because the
// x-slot floor defeats adaptive acceptance.
Interval K12(const ProblemParams& p, const Interval& x, KKind which,
             int deriv = 0, double delta = 0.0, double rel_tol = 0.0);

// The symmetrized third-kernel family, all built from the 2(m-1) + 2 shifted
// copies kappa(x, x -+ (y + 2 pi j / m)), j = -1..m-2.
//
//   SymEven     sum of the two copies per shift (even in y)
//   SymOdd      difference of the two copies per shift
//   OddIntegral integral of SymEven over y in [y_lo, y_hi]
//   SymEvenDx   x-derivative of SymEven (an order-0 integrand enclosure)
//
// For the pointwise parts, delta > 0 evaluates the truncated variant whose
// log argument is floored at 4 m_R0^2 sin^2(delta/2); delta == 0 demands
// every copy stay clear of the singular set and throws SingularWindow
// otherwise. For OddIntegral, delta is instead the clip half-width: each
// copy's window around its singular point is excised and one K3 tail
// allowance per integration chain (added by the caller) covers everything
// clipped; when several copies clip, the extra allowances are added here.
enum class K3Part { SymEven, SymOdd, OddIntegral, SymEvenDx };

Interval K3_family(const ProblemParams& p, const Interval& x, double y_lo,
                   double y_hi, K3Part part, double delta,
                   double rel_tol = 1e-4);

// Integral of the even third-kernel combination from y to pi/m: the odd
// symmetrized kernel before its clip tail allowance (the caller adds one
// K3 tail per chain of these integrals).
Interval K3so_from(const ProblemParams& p, const Interval& x, double y,
                   double delta, double rel_tol = 1e-4);

// Truncation half-widths used when assembling the full kernel; the defaults
// are the standard run parameters.
struct TruncationDeltas {
  double k4 = 1e-5;         // log-argument floor for the fourth kernel
  double k3_clip = 5e-6;    // window clip inside third-kernel integrals
  double k3_taylor = 5e-5;  // log-argument floor in first-order cell terms
  double k3_dx = 5e-2;      // log-argument floor in the x-derivative chain
};

// x-derivative of the odd symmetrized third-kernel integral at the point y:
// the boundary SymOdd terms at y and pi/m plus the integral of the floored
// x-derivative integrand over [y, pi/m], plus that floor's tail allowance
// (included here, once). Sound for a wide x-cell.
Interval K3so_dx(const ProblemParams& p, const Interval& x, double y,
                 const TruncationDeltas& deltas = {});

// Odd symmetrized fourth kernel (no integrals). delta > 0 evaluates the
// truncated variant, delta == 0 the exact one; the latter throws
// SingularWindow when a copy touches the singular set.
Interval K4so(const ProblemParams& p, const Interval& x, const Interval& y,
              double delta);

// Truncated full kernel (K2 1_{y <= x} + K3so + K4so) / K1 on the cell
// (x, y). The indicator contributes hull{0, 1} when y straddles x. K1 is
// recomputed unless k1_hint is given (callers sweeping a column reuse one
// enclosure); either way a K1 enclosure containing zero throws
// K1ContainsZero. Truncation error allowances are norm-level and belong to
// the caller.
Interval K_full(const ProblemParams& p, const Interval& x, const Interval& y,
                const TruncationDeltas& deltas = {},
                const std::optional<Interval>& k1_hint = std::nullopt);

// Orthonormal half-period basis e_1 = sqrt(m/pi), e_{2k} =
// sqrt(2m/pi) sin(2mkx), e_{2k+1} = sqrt(2m/pi) cos(2mkx), first n entries;
// deriv 0 or 1.
std::vector<Interval> fourier_basis(const ProblemParams& p, const Interval& x,
                                    int n, int deriv = 0);

// Finite-rank kernel sum_{k,l} A_{kl} e_k(x) e_l(y), accumulated in fixed
// row-major order so results are bit-reproducible.
Interval KF_eval(const IntervalMatrix& A, const ProblemParams& p,
                 const Interval& x, const Interval& y);

struct KFGradient {
  Interval value;
  Interval dx;
  Interval dy;
};

KFGradient KF_gradient(const IntervalMatrix& A, const ProblemParams& p,
                       const Interval& x, const Interval& y);

}  // namespace vstate
