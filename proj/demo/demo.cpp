// Phase imprint of an even and an odd cat on a probe at the SI operating point.

#include <cstdio>

#include "catlab/catlab.hpp"

int main() {
  using namespace catlab;
  const CavityProbeConfig cfg = paper_si_config();
  const InteractionIntegrals integrals = InteractionIntegrals::build(cfg);
  const InvisibilityReport inv = invisibility_report(cfg);
  std::printf("invisible: %s  |I-,n| = %.2e  |I+,n| = %.2e\n", inv.invisible() ? "yes" : "no", inv.abs_i_minus,
              inv.abs_i_plus);

  const SqueezeParams sq(1.0, 0.0);
  std::printf("%6s %14s %14s %14s %12s\n", "|a|", "dgamma even", "dgamma odd", "P_e even", "P+ even");
  for (double mag : {0.25, 0.5, 1.0, 1.5, 2.0, 2.5}) {
    const PhaseResult even = evaluate_point(CatParams::symmetric(mag, kPi / 2, 0.0), sq, integrals);
    const PhaseResult odd = evaluate_point(CatParams::symmetric(mag, kPi / 2, kPi), sq, integrals);
    std::printf("%6.2f %14.6e %14.6e %14.6e %12.9f\n", mag, even.delta_gamma, odd.delta_gamma, even.p_excite,
                even.p_plus);
  }
  return 0;
}
