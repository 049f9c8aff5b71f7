// One-shot 50-digit reference evaluations to freeze in the test suite.
// Each line is printed and flushed as soon as it is available.
#include <cstdio>

#include "../tests/mp_kernels.hpp"
#include "../tests/oracle.hpp"

using oracle::mp;

void emit(const char* name, const mp& v) {
  std::printf("%-22s %.16e\n", name, static_cast<double>(v));
  std::fflush(stdout);
}

int main() {
  const mp h10("1e-10"), h8("1e-8");

  const mp k1_lo = mpk::k1(mp("0.1") - h10);
  const mp k1_hi = mpk::k1(mp("0.1") + h10);
  emit("k1_dx(0.1)", (k1_hi - k1_lo) / (2 * h10));

  const mp k2_lo = mpk::k2(mp("0.1") - h10);
  const mp k2_hi = mpk::k2(mp("0.1") + h10);
  emit("k2_dx(0.1)", (k2_hi - k2_lo) / (2 * h10));

  emit("k1(0.105)", mpk::k1(mp("0.105")));

  const mp k1_03 = mpk::k1(mp("0.3"));
  emit("k1(0.3)", k1_03);
  const mp k2_03 = mpk::k2(mp("0.3"));
  emit("k2(0.3)", k2_03);

  const mp num_above = mpk::k3so(mp("0.3"), mp("0.5")) +
                       mpk::k4so(mp("0.3"), mp("0.5"));
  emit("K(0.3,0.5)", num_above / k1_03);

  const mp num_below = k2_03 + mpk::k3so(mp("0.3"), mp("0.2")) +
                       mpk::k4so(mp("0.3"), mp("0.2"));
  emit("K(0.3,0.2)", num_below / k1_03);

  const mp xc("0.301"), yc("0.201");
  const mp num_cell = mpk::k2(xc) + mpk::k3so(xc, yc) + mpk::k4so(xc, yc);
  emit("K(0.301,0.201)", num_cell / mpk::k1(xc));

  const mp so_hi = mpk::k3so(mp("0.3") + h8, mp("0.1"));
  const mp so_lo = mpk::k3so(mp("0.3") - h8, mp("0.1"));
  emit("k3so_dx(0.3,0.1)", (so_hi - so_lo) / (2 * h8));

  return 0;
}
