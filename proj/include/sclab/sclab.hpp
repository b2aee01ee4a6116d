#pragma once

// Umbrella header for the supercyclic-set laboratory.

#include "sclab/criterion.hpp"
#include "sclab/density.hpp"
#include "sclab/errors.hpp"
#include "sclab/families.hpp"
#include "sclab/numerics.hpp"
#include "sclab/reports.hpp"
#include "sclab/semigroups.hpp"
#include "sclab/transitivity.hpp"
