#include <algorithm>
#include <chrono>
#include <cstdio>
#include <vector>

#include "vstate/kernel_pieces.hpp"
#include "vstate/kernels.hpp"
#include "vstate/quad.hpp"

namespace vs = vstate;
namespace kd = vstate::kernel_detail;
using vs::Interval;

int main() {
  const vs::ProblemParams p;
  const kd::Env e = kd::make_env(p, Interval(0.3));

  // Pointwise relative noise of the defect integrand across the window:
  // where width(f(z)) / |f(z)| exceeds the target rel_tol the adaptive
  // acceptance test can never pass and the sweep digs to the depth cap.
  const double delta = 1e-6;
  const int n = 200000;
  double worst = 0.0, worst_z = 0.0;
  double bulk_floor = 0.0, bulk_z = 0.0;
  std::vector<double> bad;  // z where rel-noise > 3e-8
  for (int i = 0; i < n; ++i) {
    const double z = delta + (6.283185 - 2 * delta) * (i + 0.5) / n;
    const Interval f = kd::fk_val(e, kd::make_loc(e, Interval(z), 3), 0, 0);
    const double w = f.width();
    const double m = std::abs(f.mid());
    if (m == 0.0) continue;
    const double rel = w / m;
    if (rel > worst) {
      worst = rel;
      worst_z = z;
    }
    if (rel > 3e-8) bad.push_back(z);
    const double absf = std::abs(f.mid());
    if (absf > 1e-3 && w / absf > bulk_floor) {
      bulk_floor = w / absf;
      bulk_z = z;
    }
  }
  std::printf("worst rel-noise %.3e at z=%.6f\n", worst, worst_z);
  std::printf("worst rel-noise among |f|>1e-3: %.3e at z=%.6f\n", bulk_floor,
              bulk_z);
  std::printf("points with rel-noise > 3e-8: %zu of %d\n", bad.size(), n);
  if (!bad.empty()) {
    std::printf("  first few: ");
    for (size_t i = 0; i < bad.size() && i < 8; ++i)
      std::printf("%.6f ", bad[i]);
    std::printf("\n");
  }

  // Absolute width profile at a few z to see which scale the noise lives at.
  for (double z : {2e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 3.14}) {
    const Interval f = kd::fk_val(e, kd::make_loc(e, Interval(z), 3), 0, 0);
    std::printf("z %-8g f [% .6e, % .6e] width %.3e\n", z, f.lo, f.hi,
                f.width());
  }
  return 0;
}
