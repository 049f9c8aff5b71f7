// One-off timing probe for the 50-digit reference evaluations used in tests.
#include <chrono>
#include <cstdio>

#include "../tests/mp_kernels.hpp"
#include "../tests/oracle.hpp"

using oracle::mp;

template <class F>
double time_one(const char* name, F&& f, int reps = 20) {
  volatile double sink = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) sink += static_cast<double>(f());
  const auto t1 = std::chrono::steady_clock::now();
  const double us =
      std::chrono::duration<double, std::micro>(t1 - t0).count() / reps;
  std::printf("%-18s %12.1f us\n", name, us);
  return us;
}

int main() {
  const mp x("0.3"), z("0.7"), y("0.5");
  time_one("r0(eval via a0)", [&] { return mpk::a0(x, z); });
  time_one("c0", [&] { return mpk::c0(x, z); });
  time_one("fk", [&] { return mpk::fk(x, z); });
  time_one("fk_dxx", [&] { return mpk::fk_dxx(x, z); });
  time_one("k1_integrand", [&] { return mpk::k1_integrand(x, z); });
  time_one("k2_integrand_dx", [&] { return mpk::k2_integrand_dx(x, z); });
  time_one("k3z", [&] { return mpk::k3z(x, z); });
  time_one("k3z_dx", [&] { return mpk::k3z_dx(x, z); });
  time_one("k4z", [&] { return mpk::k4z(x, z); });
  time_one("k3se", [&] { return mpk::k3se(x, y); });
  time_one("k1 (integral)", [&] { return mpk::k1(x); }, 2);
  time_one("k2 (integral)", [&] { return mpk::k2(x); }, 2);
  time_one("e0 (integral)", [&] { return mpk::e0(x); }, 2);
  time_one("k3so (integral)", [&] { return mpk::k3so(x, mp("0.1")); }, 1);
  return 0;
}
