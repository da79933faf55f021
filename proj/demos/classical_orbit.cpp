// Integrates one bound orbit on the sphere and reports conservation.

#include <cstdio>

#include "curvaspec/dynamics.hpp"

int main() {
  using namespace curvaspec;
  const DynamicsParams params{Curvature(1.0), 1.0, 1.0};
  const PhaseState start{0.8, 0.0, 0.1, 0.6};
  const Trajectory tr = integrate_trajectory(params, start, 20.0, 1e-3);

  std::printf("%8s %12s %12s %14s\n", "t", "r", "phi", "H");
  for (std::size_t i = 0; i < tr.samples.size(); i += 2000) {
    const auto& s = tr.samples[i];
    std::printf("%8.3f %12.8f %12.8f %14.10f\n", s.t, s.state.r, s.state.phi, s.H);
  }
  const auto d = tr.max_drift();
  // P1 and P2 are conserved only without the potential.
  std::printf("max drift: H %.2e, J %.2e\n", d.H, d.J);
  return tr.status == TrajectoryStatus::completed ? 0 : 1;
}
