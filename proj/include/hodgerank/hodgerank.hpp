#pragma once

// Peer-assessment ranking from pairwise comparisons: least-squares scores on
// the comparison graph, flow decomposition into consistent and inconsistent
// parts, baseline methods, synthetic cohorts and reporting.

#include "hodgerank/core.hpp"
#include "hodgerank/rng.hpp"
#include "hodgerank/dense.hpp"
#include "hodgerank/graph.hpp"
#include "hodgerank/solver.hpp"
#include "hodgerank/baselines.hpp"
#include "hodgerank/synth.hpp"
#include "hodgerank/ingest.hpp"
#include "hodgerank/report.hpp"
