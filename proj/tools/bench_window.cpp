// Leaf-count probe for the adaptive window integration behind the defect.
#include <chrono>
#include <cstdio>

#include "vstate/kernel_pieces.hpp"
#include "vstate/kernels.hpp"
#include "vstate/quad.hpp"

namespace vs = vstate;
namespace kd = vs::kernel_detail;
using vs::Interval;

int main() {
  const vs::ProblemParams p;
  const auto env = kd::make_env(p, Interval(0.3));
  const double delta = 1e-6;

  vs::IntegrandSpec f;
  f.max_order = 2;
  f.eval = [&](const Interval& z, int order) -> Interval {
    try {
      const auto l = kd::make_loc(env, z, 3);
      return kd::fk_val(env, l, 0, order);
    } catch (const vs::SingularWindow&) {
      return Interval(-1e300, 1e300);
    }
  };

  const double b = vs::detail::next_down(vs::two_pi_ival<double>().lo - delta);
  for (double rel : {1e-5, 1e-6, 3e-7, 3e-8}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto res =
        vs::integrate_adaptive(f, delta, b, vs::QuadRule::C2Midpoint, rel);
    const auto t1 = std::chrono::steady_clock::now();
    std::printf(
        "rel %.0e  leaves %ld  depth %d  capped %d  width %.3e  [%.15f, "
        "%.15f]  %.1f s\n",
        rel, static_cast<long>(res.leaves), res.max_depth_seen,
        res.depth_exceeded ? 1 : 0, res.value.width(), res.value.lo,
        res.value.hi, std::chrono::duration<double>(t1 - t0).count());
    std::fflush(stdout);
  }
  return 0;
}
