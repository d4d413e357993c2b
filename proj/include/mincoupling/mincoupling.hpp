#pragma once

#include "dist.hpp"
#include "errors.hpp"
#include "info.hpp"
#include "numeric.hpp"
#include "polytope.hpp"
#include "rational.hpp"
#include "solvers.hpp"
#include "metrics.hpp"
#include "reductions.hpp"
#include "counterexample.hpp"
