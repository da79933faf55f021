// Closed-form levels against the finite-difference solver.

#include <cstdio>
#include <cstdlib>

#include "curvaspec/oracle.hpp"

int main(int argc, char** argv) {
  using namespace curvaspec;
  const double kv = argc > 1 ? std::atof(argv[1]) : 1.0;
  const int beta = argc > 2 ? std::atoi(argv[2]) : 0;
  const Curvature k(kv);

  const std::size_t count = k.is_hyperbolic() ? kAllBound : 4;
  const SpectrumComparison c = compare_spectra(k, beta, count);
  std::printf("kappa %g, beta %d, grid %zu cells over rho < %g\n", kv, beta, c.grid.points, c.grid.extent);
  std::printf("%4s %20s %20s %12s %12s\n", "N_r", "closed", "oracle", "rel", "rel(extrap)");
  for (const auto& r : c.rows) {
    std::printf("%4d %20.14f %20.14f %12.3e %12.3e\n", r.radial, r.closed, r.oracle, r.rel_error,
                r.rel_error_extrapolated);
  }
  if (c.oracle_bound_count) {
    std::printf("bound states: closed form %zu, oracle %zu\n", c.closed_count, *c.oracle_bound_count);
  }
}
