// Curvature of the D=3 quantum group Bose gas along z for the four
// deformations shown in the usual R(z) plot.

#include <cstdio>

#include "qgeom/qgeom.hpp"

int main() {
  using namespace qgeom;
  std::printf("%6s %12s %12s %12s %12s\n", "z", "q=0.5", "q=1", "q=1.15", "q=2");
  for (double z = 0.05; z < 0.99; z += 0.1) {
    std::printf("%6.2f", z);
    for (double q : {0.5, 1.0, 1.15, 2.0}) {
      const GasSpec gas{Statistics::Boson, q, Dimension::D3};
      std::printf(" %12.6f", curvature_closed_form(gas, z).R_reduced);
    }
    std::printf("\n");
  }
}
