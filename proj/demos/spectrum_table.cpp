// Prints the lowest energies for a few curvatures side by side.

#include <cstdio>
#include <string>

#include "curvaspec/spectrum.hpp"

int main() {
  using namespace curvaspec;
  const double kappas[] = {-0.5, -0.1, 0.0, 0.5, 1.0};

  std::printf("%4s", "n");
  for (double k : kappas) std::printf("  %12s", ("k=" + std::to_string(k).substr(0, 5)).c_str());
  std::printf("\n");

  for (int n = 0; n <= 6; ++n) {
    std::printf("%4d", n);
    for (double kv : kappas) {
      const Curvature k(kv);
      if (is_admissible(k, n)) {
        std::printf("  %12.8f", energy_dimensionless(k, 0, n));
      } else {
        std::printf("  %12s", "-");
      }
    }
    std::printf("\n");
  }
  std::printf("\nn + 1 < %.4f on the k = -0.5 surface\n", admissibility_bound(Curvature(-0.5)));
}
