#pragma once

#include "whitney/common.hpp"
#include "whitney/parallel.hpp"
#include "whitney/lp.hpp"
#include "whitney/bodies.hpp"
#include "whitney/polys.hpp"
#include "whitney/approx.hpp"
#include "whitney/optimize.hpp"
#include "whitney/moduli.hpp"
#include "whitney/lattice.hpp"
#include "whitney/extremals.hpp"
#include "whitney/bounds.hpp"
#include "whitney/scan.hpp"
#include "whitney/config.hpp"
#include "whitney/runner.hpp"
