/*!
  \file decomp.hpp
  \brief Umbrella header for the decomposition library
*/

#pragma once

#include "relation.hpp"
#include "partition.hpp"
#include "bigraph.hpp"
#include "dependency.hpp"
#include "chart.hpp"
#include "cliquecover.hpp"
#include "decompose.hpp"
#include "text_format.hpp"
#include "cli.hpp"
