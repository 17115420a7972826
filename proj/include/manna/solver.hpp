#pragma once

#include <cstdint>
#include <string>

#include "manna/instance.hpp"
#include "manna/lemke.hpp"
#include "manna/solution.hpp"

namespace manna {

struct SolveOptions {
  std::uint64_t seed = 1;
  long maxIters = -1;  // < 0: default 50 * LCP rows
  bool trace = false;
};

struct SolveResult {
  TermKind status = TermKind::IterationLimit;
  Equilibrium eq;  // valid when status == Solution; original units/indices
  long iterations = 0;
  std::vector<TraceEntry> trace;
  std::string diagnostic;
  SufficiencyReport sufficiency;
};

// Full pipeline: validate, classify, preprocess, normalize, build the
// augmented LCP, run Lemke, map the vertex back and re-insert the
// preprocessed allocations. Output prices are canonically scaled
// (max |price| = 1). Throws std::invalid_argument on malformed instances.
SolveResult solve_instance(const Instance& inst, const SolveOptions& opts = {});

// The LCP the pipeline would solve, in the debug dump format.
std::string dump_instance_lcp(const Instance& inst, std::uint64_t seed);

}  // namespace manna
