// Where the low-density virial coefficients change sign, compared with the
// q at which the curvature changes sign at small fugacity.

#include <cstdio>

#include "qgeom/qgeom.hpp"

int main() {
  using namespace qgeom;
  struct Case {
    const char* name;
    GasSpec gas;
  };
  const Case cases[] = {
      {"fermions D=3", {Statistics::Fermion, 1.0, Dimension::D3}},
      {"bosons   D=3", {Statistics::Boson, 1.0, Dimension::D3}},
      {"bosons   D=2", {Statistics::Boson, 1.0, Dimension::D2}},
      {"fermions D=2", {Statistics::Fermion, 1.0, Dimension::D2}},
  };
  for (const auto& c : cases) {
    const auto kind = virial_kind(c.gas);
    const auto virial = virial_threshold(kind);
    const auto curvature = curvature_sign_boundary(c.gas, 0.01, 0.3, 8.0);
    std::printf("%s  %-5s  virial q* = %-10s curvature q*(z=0.01) = %s\n", c.name,
                std::string(to_string(kind)).c_str(),
                virial ? std::to_string(*virial).c_str() : "none",
                curvature ? std::to_string(*curvature).c_str() : "none");
  }
}
