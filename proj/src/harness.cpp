#include "manna/harness.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "manna/solver.hpp"
#include "manna/verify.hpp"

namespace manna {

namespace {

constexpr unsigned long kDen = 1u << 16;

// Dyadic draw k/2^16 with k in [1, 2^16]. Raw modulo keeps the stream
// identical across standard libraries (uniform_int_distribution is not
// portable).
Rat draw_unit(std::mt19937_64& gen) {
  unsigned long k = static_cast<unsigned long>(gen() % kDen) + 1;
  return frac(k, kDen);
}

// #Seg distinct values in (0, 1], sorted decreasingly.
std::vector<Rat> draw_slopes(std::mt19937_64& gen, int count) {
  std::set<Rat> values;
  while (static_cast<int>(values.size()) < count) values.insert(draw_unit(gen));
  std::vector<Rat> out(values.rbegin(), values.rend());
  return out;
}

}  // namespace

Instance gen_random_instance(const BenchConfig& config, int trialIndex) {
  if (config.n < 1 || config.m < 1 || config.segmentsPerPair < 1)
    throw std::invalid_argument("gen_random_instance: dimensions must be positive");
  std::seed_seq seq{config.seed, static_cast<std::uint64_t>(trialIndex)};
  std::mt19937_64 gen(seq);

  const int n = config.n, m = config.m, segs = config.segmentsPerPair;
  const int goods = config.mode == BenchMode::Mixed ? m / 2 : 0;
  const Rat lastLen = 1 + kLastSegmentPad;

  Instance inst;
  inst.numAgents = n;
  inst.numItems = m;
  inst.setting = Setting::Exchange;
  inst.utility.resize(n);
  for (int i = 0; i < n; ++i) {
    inst.utility[i].resize(m);
    for (int j = 0; j < m; ++j) {
      std::vector<Rat> slopes = draw_slopes(gen, segs);
      auto& fn = inst.utility[i][j];
      for (int k = 0; k < segs; ++k) {
        Segment seg;
        // Goods keep the decreasing positives; bads are negated, which turns
        // the decreasing draw into increasing magnitudes.
        seg.slope = j < goods ? slopes[k] : -slopes[segs - 1 - k];
        seg.length = k + 1 < segs ? draw_unit(gen) / segs : lastLen;
        fn.push_back(std::move(seg));
      }
    }
  }

  inst.endowment.assign(n, std::vector<Rat>(m, Rat(0)));
  for (int j = 0; j < m; ++j) {
    Rat total = 0;
    for (int i = 0; i < n; ++i) {
      inst.endowment[i][j] = draw_unit(gen);
      total += inst.endowment[i][j];
    }
    for (int i = 0; i < n; ++i) inst.endowment[i][j] /= total;
  }
  inst.validate();
  return inst;
}

BenchOutput run_benchmark(const BenchConfig& config) {
  BenchOutput out;
  std::ostringstream csv;
  csv << "n,m,segs,trial,iters,status\n";
  long sumIters = 0;
  const long totalSegments =
      static_cast<long>(config.n) * config.m * config.segmentsPerPair;

  for (int trial = 0; trial < config.trials; ++trial) {
    Instance inst = gen_random_instance(config, trial);
    SolveResult res;
    for (int attempt = 0; attempt < 3; ++attempt) {
      SolveOptions opts;
      opts.seed = config.seed + static_cast<std::uint64_t>(attempt);
      opts.maxIters = config.maxIters;
      res = solve_instance(inst, opts);
      if (res.status != TermKind::DegeneracyDetected) break;
      csv << config.n << "," << config.m << "," << config.segmentsPerPair << ","
          << trial << "," << res.iterations << ",degenerate-retry\n";
    }

    std::string status;
    switch (res.status) {
      case TermKind::Solution: {
        VerifyReport rep = verify_equilibrium(inst, res.eq);
        if (rep.overall) {
          status = "solved";
          ++out.stats.solved;
          if (out.stats.solved == 1 || res.iterations < out.stats.minIters)
            out.stats.minIters = res.iterations;
          out.stats.maxIters = std::max(out.stats.maxIters, res.iterations);
          sumIters += res.iterations;
          out.plotData.emplace_back(totalSegments, res.iterations);
        } else {
          status = "verify-failed";
          ++out.stats.verifyFailures;
        }
        break;
      }
      case TermKind::SecondaryRay:
        status = "secondary-ray";
        ++out.stats.secondaryRays;
        break;
      case TermKind::IterationLimit:
        status = "iteration-limit";
        ++out.stats.iterationLimits;
        break;
      case TermKind::DegeneracyDetected:
        status = "degenerate";
        ++out.stats.degenerate;
        break;
    }
    csv << config.n << "," << config.m << "," << config.segmentsPerPair << ","
        << trial << "," << res.iterations << "," << status << "\n";
    ++out.stats.trials;
  }

  if (out.stats.solved > 0)
    out.stats.meanIters = static_cast<double>(sumIters) / out.stats.solved;
  csv << "# summary n=" << config.n << " m=" << config.m
      << " segs=" << config.segmentsPerPair << " trials=" << out.stats.trials
      << " solved=" << out.stats.solved << " min=" << out.stats.minIters
      << " mean=" << out.stats.meanIters << " max=" << out.stats.maxIters << "\n";
  out.csv = csv.str();
  return out;
}

}  // namespace manna
