#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "manna/instance.hpp"

namespace manna {

enum class BenchMode { AllBads, Mixed };

struct BenchConfig {
  int n = 0;                // agents
  int m = 0;                // items
  int segmentsPerPair = 1;  // segments per (agent, item) function
  int trials = 0;
  std::uint64_t seed = 1;
  BenchMode mode = BenchMode::AllBads;
  long maxIters = -1;  // forwarded to the solver; < 0 = default
};

struct BenchStats {
  int trials = 0;
  int solved = 0;
  long minIters = 0;
  long maxIters = 0;
  double meanIters = 0.0;
  // Failures by kind; solved + all failures = trials.
  int secondaryRays = 0;
  int iterationLimits = 0;
  int degenerate = 0;       // still degenerate after seed retries
  int verifyFailures = 0;   // solved but rejected by the exact verifier
};

struct BenchOutput {
  BenchStats stats;
  std::string csv;  // rows "n,m,segs,trial,iters,status" plus a summary row
  // Per-trial (total segments, iterations) pairs for solved trials.
  std::vector<std::pair<long, long>> plotData;
};

// Deterministic random instance for (config.seed, trialIndex). All-bads mode:
// slopes are dyadic rationals -k/2^16 in [-1, 0), sorted decreasingly
// (magnitudes increase along segments, as concavity requires); segment
// lengths in (0, 1/#Seg] except the padded last segment; endowments in (0,1]
// column-normalized so every item's supply is exactly 1. Mixed mode: the
// first m/2 items become goods with slopes in (0,1] sorted decreasingly.
Instance gen_random_instance(const BenchConfig& config, int trialIndex);

// Solves every generated instance, verifies each solution exactly (epsilon =
// 0) and aggregates statistics. A DegeneracyDetected run is retried with the
// next solver seed (up to 2 retries); every attempt gets its own CSV row.
// Individual failures never abort the batch.
BenchOutput run_benchmark(const BenchConfig& config);

}  // namespace manna
