#pragma once

#include "qgeom/core.hpp"
#include "qgeom/distributions.hpp"
#include "qgeom/geometry.hpp"
#include "qgeom/quadrature.hpp"
#include "qgeom/roots.hpp"
#include "qgeom/virial.hpp"
