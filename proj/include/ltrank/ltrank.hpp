#pragma once

// Community-aware centrality measures, Linear Threshold diffusion, and
// Schulze rank aggregation over networks. See README.md for the tour.

#include "ltrank/centrality.hpp"
#include "ltrank/config.hpp"
#include "ltrank/diffusion.hpp"
#include "ltrank/experiment.hpp"
#include "ltrank/format.hpp"
#include "ltrank/graph.hpp"
#include "ltrank/kcore.hpp"
#include "ltrank/parallel.hpp"
#include "ltrank/partition.hpp"
#include "ltrank/rng.hpp"
#include "ltrank/stats.hpp"
#include "ltrank/svg.hpp"
#include "ltrank/voting.hpp"
