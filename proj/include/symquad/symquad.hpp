#pragma once

#include "symquad/bench.hpp"
#include "symquad/cubature.hpp"
#include "symquad/errors.hpp"
#include "symquad/fooling.hpp"
#include "symquad/io.hpp"
#include "symquad/korobov.hpp"
#include "symquad/nullspace.hpp"
#include "symquad/symmetry.hpp"
#include "symquad/tractability.hpp"
#include "symquad/weighted.hpp"
