// Prints the eight isotropic four-revolute wrists and checks each one at a
// few random values of the free joint angles.
#include "isowrist/isowrist.hpp"

#include <cstdio>
#include <random>

int main() {
  using namespace isowrist;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  for (const auto& w : distinct_wrists()) {
    std::printf("(%c) alpha = %6.2f %6.2f %6.2f deg, theta2 = %7.1f, theta3 = %7.1f deg, %zu chains\n",
                w.label, rad_to_deg(w.representative.twists[0]), rad_to_deg(w.representative.twists[1]),
                rad_to_deg(w.representative.twists[2]), rad_to_deg(*w.representative.joints[1]),
                rad_to_deg(*w.representative.joints[2]), w.members.size());
    for (int k = 0; k < 3; ++k) {
      const auto g = isotropic_posture_geometry(w, angle(rng), angle(rng));
      std::printf("    cond(J) = %.15f  sigma = %.15f\n", g.report.condition_number, g.report.sigma);
    }
  }
}
