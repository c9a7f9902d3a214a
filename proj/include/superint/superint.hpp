#pragma once

// Umbrella header: exact differential-polynomial core, operator algebra,
// determining equations, compatibility analysis, singularity test, catalog.

#include "rational.hpp"
#include "symbol.hpp"
#include "dpoly.hpp"
#include "printer.hpp"
#include "parser.hpp"
#include "reduce.hpp"
#include "integrate.hpp"
#include "linsolve.hpp"
#include "opalg.hpp"
#include "deteq.hpp"
#include "chains.hpp"
#include "compat.hpp"
#include "painleve.hpp"
#include "catalog.hpp"
#include "serialize.hpp"
