#pragma once

#include "msc/approx_solver.hpp"
#include "msc/exact_solver.hpp"
#include "msc/extended.hpp"
#include "msc/graph.hpp"
#include "msc/io.hpp"
#include "msc/oracle.hpp"
#include "msc/reductions.hpp"
#include "msc/tree_decomposition.hpp"
