// Timing probe for the interval-arithmetic pipelines.
#include <chrono>
#include <cstdio>

#include "vstate/kernel_pieces.hpp"
#include "vstate/kernels.hpp"
#include "vstate/quad.hpp"

namespace vs = vstate;
namespace kd = vs::kernel_detail;
using vs::Interval;

template <class F>
void time_one(const char* name, F&& f, int reps = 1) {
  const auto t0 = std::chrono::steady_clock::now();
  double acc = 0;
  for (int i = 0; i < reps; ++i) acc += f();
  const auto t1 = std::chrono::steady_clock::now();
  const double ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
  std::printf("%-28s %12.3f ms   (acc %.3g)\n", name, ms, acc);
  std::fflush(stdout);
}

int main() {
  const vs::ProblemParams p;
  const auto env = kd::make_env(p, Interval(0.3));

  time_one("make_env", [&] { return kd::make_env(p, Interval(0.3)).fpo.lo; },
           1000);
  time_one("make_loc(order 3)", [&] {
    return kd::make_loc(env, Interval(1.7), 3).dr.lo;
  }, 1000);
  time_one("fk_val(0,0)", [&] {
    const auto l = kd::make_loc(env, Interval(1.7), 3);
    return kd::fk_val(env, l, 0, 0).lo;
  }, 1000);
  time_one("fk_val(0,2)", [&] {
    const auto l = kd::make_loc(env, Interval(1.7), 3);
    return kd::fk_val(env, l, 0, 2).lo;
  }, 1000);
  time_one("k1_val(0,0)", [&] {
    const auto l = kd::make_loc(env, Interval(1.7), 3);
    return kd::k1_val(env, l, 0, 0).lo;
  }, 1000);

  time_one("E0(0.3)", [&] { return vs::E0(p, Interval(0.3)).lo; });
  time_one("E0(0.3) deriv 1", [&] { return vs::E0(p, Interval(0.3), 1).lo; });
  time_one("K12 K1(0.3)", [&] {
    return vs::K12(p, Interval(0.3), vs::KKind::K1).lo;
  });
  time_one("K12 K1(0.3) deriv 1", [&] {
    return vs::K12(p, Interval(0.3), vs::KKind::K1, 1).lo;
  });
  time_one("K12 K2(0.3)", [&] {
    return vs::K12(p, Interval(0.3), vs::KKind::K2).lo;
  });
  time_one("E0xx_cell(0.1)", [&] {
    return vs::E0xx_cell(p, Interval(0.1)).lo;
  });
  time_one("K3so_from(0.3,0.1)", [&] {
    return vs::K3so_from(p, Interval(0.3), 0.1, 5e-6).lo;
  });
  time_one("K3so_dx(0.3,0.1)", [&] {
    return vs::K3so_dx(p, Interval(0.3), 0.1).lo;
  });
  time_one("K_full(0.3,0.5)", [&] {
    return vs::K_full(p, Interval(0.3), Interval(0.5)).lo;
  });
  time_one("K_full cell 2e-3", [&] {
    return vs::K_full(p, Interval(0.3, 0.302), Interval(0.2, 0.202)).lo;
  });

  // Criterion budget: the first-kernel cell sweep needs the derivative
  // enclosure over a 1e-2 cell to stay comfortably below ~1.18 in magnitude.
  for (double lo : {0.0, 0.26, 0.51}) {
    const auto t0 = std::chrono::steady_clock::now();
    const Interval d = vs::K12(p, Interval(lo, lo + 1e-2), vs::KKind::K1, 1);
    const auto t1 = std::chrono::steady_clock::now();
    std::printf("K1' cell @%-5g  [%.6f, %.6f]  width %.4f  mag %.4f  %.2f s\n",
                lo, d.lo, d.hi, d.width(), d.mag(),
                std::chrono::duration<double>(t1 - t0).count());
    std::fflush(stdout);
  }
  time_one("E0' wide [0.29,0.31]", [&] {
    return vs::E0(p, Interval(0.29, 0.31), 1).lo;
  });
  time_one("E0 wide [0.29,0.31]", [&] {
    return vs::E0(p, Interval(0.29, 0.31)).lo;
  });
  const Interval exx = vs::E0xx_cell(p, Interval(0.1));
  std::printf("E0xx_cell(0.1) [%.6e, %.6e] width %.3f\n", exx.lo, exx.hi,
              exx.width());
  const Interval mid0 = vs::K12(p, Interval(5e-3), vs::KKind::K1);
  std::printf("K1(5e-3) [%.9f, %.9f] width %.3e\n", mid0.lo, mid0.hi,
              mid0.width());
  return 0;
}
