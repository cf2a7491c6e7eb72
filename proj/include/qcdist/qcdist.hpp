#pragma once

// Umbrella header: explicit Hölder-continuity constants for quasiconformal
// mappings in the chordal metric, the geometry they rest on, numerical
// verification of every supporting inequality, and empirical worst-case
// quotients for a zoo of concrete test maps.

#include "bounds.hpp"
#include "checks.hpp"
#include "extended_point.hpp"
#include "geometry.hpp"
#include "holder.hpp"
#include "json_io.hpp"
#include "maps.hpp"
#include "sampling.hpp"
