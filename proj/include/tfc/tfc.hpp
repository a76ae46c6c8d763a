#pragma once

#include "tfc/audit.hpp"
#include "tfc/bounds.hpp"
#include "tfc/coloring.hpp"
#include "tfc/error.hpp"
#include "tfc/generators.hpp"
#include "tfc/genus.hpp"
#include "tfc/graph.hpp"
#include "tfc/harness.hpp"
#include "tfc/io.hpp"
#include "tfc/list_coloring.hpp"
#include "tfc/lists.hpp"
#include "tfc/oracles.hpp"
#include "tfc/random.hpp"
#include "tfc/rational.hpp"
#include "tfc/simplex.hpp"
#include "tfc/trace.hpp"
