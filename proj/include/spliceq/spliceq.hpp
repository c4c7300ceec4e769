#pragma once

#include "spliceq/rational.hpp"
#include "spliceq/matrix.hpp"
#include "spliceq/graph.hpp"
#include "spliceq/lattice.hpp"
#include "spliceq/series.hpp"
#include "spliceq/invariants.hpp"
#include "spliceq/cycles.hpp"
#include "spliceq/render.hpp"
