#pragma once

// q = 1 reduced moments (a, b, c, d) = +-2 Gamma(nu+1) Li_{nu+2-k}(+-z),
// evaluated with mpmath.polylog at 40 significant digits.

#include <array>

#include "qgeom/core.hpp"

namespace qgeom::testing {

struct UndeformedReference {
  Statistics statistics;
  Dimension dimension;
  double z;
  std::array<double, 4> moments;
};

inline constexpr UndeformedReference kUndeformedReference[] = {
    {Statistics::Boson, Dimension::D3, 0.1, {0.18049825095890349436, 0.18387693670949901236, 0.19089920003185548497, 0.20578063863466039548}},
    {Statistics::Boson, Dimension::D3, 0.5, {0.98370706390493665751, 1.1074947837405864033, 1.4288224145751478733, 2.387945102183389213}},
    {Statistics::Boson, Dimension::D3, 0.9, {2.0188302982125953334, 2.8615177870076437897, 7.1287215233262456157, 45.567070808249821078}},
    {Statistics::Boson, Dimension::D2, 0.1, {0.20523558219878227393, 0.21072103131565261479, 0.22222222222222223593, 0.246913580246913597}},
    {Statistics::Boson, Dimension::D2, 0.5, {1.1644810529300250118, 1.3862943611198906188, 2.0, 4.0}},
    {Statistics::Boson, Dimension::D2, 0.9, {2.599429446009917564, 4.6051701859880918121, 18.000000000000004441, 180.00000000000008438}},
    {Statistics::Fermion, Dimension::D3, 0.5, {0.81940148430785742392, 0.76195543859095566804, 0.66245859349393056238, 0.50162714626323861089}},
    {Statistics::Fermion, Dimension::D3, 2.0, {2.7738572637571912095, 2.2711875946063193355, 1.5797681090591766355, 0.77541468566160265616}},
    {Statistics::Fermion, Dimension::D3, 10.0, {9.0196203768736171277, 5.8237234045916649443, 2.8151621089875947007, 0.71094111713705206989}},
    {Statistics::Fermion, Dimension::D2, 0.5, {0.89682841384729240489, 0.81093021621632876396, 0.66666666666666666667, 0.44444444444444444444}},
    {Statistics::Fermion, Dimension::D2, 2.0, {2.8734927337673618927, 2.1972245773362193828, 1.3333333333333333333, 0.44444444444444444444}},
    {Statistics::Fermion, Dimension::D2, 10.0, {8.3965557737162077158, 4.7957905455967410881, 1.8181818181818181818, 0.16528925619834710744}},
};

}  // namespace qgeom::testing
