#pragma once

// Superconformal-simple-type calculus for smooth 4-manifolds: exact twisted
// Seiberg-Witten series algebra, surgery transformation laws, basic-class
// geography bounds, and the numerical Donaldson-Witten engine on the SU(2),
// Nf=1 curve.

#include "sst/bigint.hpp"
#include "sst/catalog.hpp"
#include "sst/geography.hpp"
#include "sst/lattice.hpp"
#include "sst/manifold_io.hpp"
#include "sst/model.hpp"
#include "sst/numeric.hpp"
#include "sst/series.hpp"
#include "sst/surgery.hpp"
#include "sst/sw_curve.hpp"
#include "sst/zdw.hpp"
