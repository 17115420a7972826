// manna: competitive equilibria of mixed manna under SPLC utilities.
//
// Exit codes: 0 success, 1 parse/usage error, 2 secondary ray (solve) or
// verification rejected (verify), 3 iteration limit, 4 degeneracy detected.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "manna/harness.hpp"
#include "manna/io.hpp"
#include "manna/oracle.hpp"
#include "manna/reduction.hpp"
#include "manna/solver.hpp"
#include "manna/verify.hpp"

namespace {

using namespace manna;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw parse_exception(ParseError{0, 0, "cannot write '" + path + "'"});
  out << content;
}

int solve_exit_code(TermKind status) {
  switch (status) {
    case TermKind::Solution: return 0;
    case TermKind::SecondaryRay: return 2;
    case TermKind::IterationLimit: return 3;
    case TermKind::DegeneracyDetected: return 4;
  }
  return 1;
}

int cmd_solve(const std::string& instanceFile, std::uint64_t seed, long maxIters,
              bool trace, bool dumpLcp, bool decimal, const std::string& outFile) {
  Instance inst = read_instance_file(instanceFile);
  if (dumpLcp) {
    std::cerr << dump_instance_lcp(inst, seed);
    return 0;
  }
  SolveOptions opts;
  opts.seed = seed;
  opts.maxIters = maxIters;
  opts.trace = trace;
  SolveResult res = solve_instance(inst, opts);
  if (trace)
    for (const TraceEntry& e : res.trace)
      std::cerr << "iter " << e.iter << ": " << e.entering << " in, " << e.leaving
                << " out, z = " << rat_str(e.z) << "\n";
  if (res.status != TermKind::Solution) {
    std::cerr << "no equilibrium: " << res.diagnostic << " (after " << res.iterations
              << " pivots)\n";
    return solve_exit_code(res.status);
  }
  std::cerr << "solved in " << res.iterations << " pivots\n";
  if (!res.sufficiency.satisfied())
    std::cerr << "note: sufficiency conditions not established for this instance\n";
  write_output(outFile, write_equilibrium(res.eq, decimal));
  return 0;
}

int cmd_verify(const std::string& instanceFile, const std::string& eqFile,
               const std::string& epsStr) {
  Instance inst = read_instance_file(instanceFile);
  Equilibrium eq = read_equilibrium_file(eqFile, inst);
  auto eps = parse_rat(epsStr);
  if (!eps || *eps < 0) {
    std::cerr << "invalid --epsilon '" << epsStr << "'\n";
    return 1;
  }
  VerifyReport rep = verify_equilibrium(inst, eq, *eps);
  if (rep.malformed) std::cout << "malformed: " << rep.malformedReason << "\n";
  std::cout << "price signs: " << (rep.priceSigns ? "ok" : "violated") << "\n";
  auto all = [](const std::vector<char>& v) {
    for (char c : v)
      if (!c) return false;
    return true;
  };
  std::cout << "optimal bundles: " << (all(rep.optimalBundles) ? "ok" : "violated")
            << "\n";
  std::cout << "budgets: " << (all(rep.budgetBalanced) ? "ok" : "violated") << "\n";
  std::cout << "clearing: " << (all(rep.clearing) ? "ok" : "violated") << "\n";
  std::cout << (rep.overall ? "ACCEPT" : "REJECT") << "\n";
  return rep.overall ? 0 : 2;
}

int cmd_enumerate(const std::string& instanceFile, int cap) {
  Instance inst = read_instance_file(instanceFile);
  OracleResult res = enumerate_equilibria(inst, cap);
  std::cout << "equilibria: " << res.equilibria.size() << "\n";
  if (res.degenerateConfigs > 0)
    std::cout << "degenerate configurations: " << res.degenerateConfigs << "\n";
  for (std::size_t i = 0; i < res.equilibria.size(); ++i) {
    std::cout << "--- equilibrium " << i + 1 << "\n";
    std::cout << write_equilibrium(res.equilibria[i]);
  }
  return 0;
}

int cmd_reduce(const std::string& gameFile, bool fisher, const std::string& outFile) {
  BimatrixGame game = read_game_file(gameFile);
  Instance inst = reduce_game_to_exchange(game);
  if (fisher) inst = exchange_to_fisher(inst);
  write_output(outFile, write_instance(inst));
  return 0;
}

// Prices for `extract`: an equilibrium file (its `price` lines) or a bare
// whitespace-separated list of rationals.
std::vector<Rat> read_prices(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_exception(ParseError{0, 0, "cannot open '" + path + "'"});
  std::vector<std::string> toks;
  std::string line, tok;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    while (ls >> tok) toks.push_back(tok);
  }
  std::vector<Rat> prices;
  if (!toks.empty() && toks[0] == "manna-equilibrium") {
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (toks[i] != "price" || i + 2 >= toks.size()) continue;
      auto idx = parse_rat(toks[i + 1]);
      auto val = parse_rat(toks[i + 2]);
      if (!idx || !val || idx->get_den() != 1)
        throw parse_exception(ParseError{0, 0, "bad price line in '" + path + "'"});
      std::size_t j = idx->get_num().get_ui();
      if (prices.size() < j) prices.resize(j, Rat(0));
      prices[j - 1] = *val;
      i += 2;
    }
  } else {
    for (const std::string& t : toks) {
      auto val = parse_rat(t);
      if (!val)
        throw parse_exception(ParseError{0, 0, "expected a rational, got '" + t + "'"});
      prices.push_back(*val);
    }
  }
  return prices;
}

int cmd_extract(const std::string& pricesFile, int n) {
  auto [alpha, beta] = extract_strategies(read_prices(pricesFile), n);
  auto print = [&](const char* name, const MixedStrategy& s) {
    std::cout << name;
    for (const Rat& v : s) std::cout << " " << rat_str(v);
    std::cout << "\n";
  };
  print("alpha", alpha);
  print("beta", beta);
  return 0;
}

int cmd_bench(const BenchConfig& config, const std::string& csvFile, bool plotData) {
  BenchOutput out = run_benchmark(config);
  if (csvFile.empty())
    std::cout << out.csv;
  else
    write_output(csvFile, out.csv);
  if (plotData)
    for (const auto& [segments, iters] : out.plotData)
      std::cout << segments << " " << iters << "\n";
  std::cerr << "solved " << out.stats.solved << "/" << out.stats.trials
            << " (iters min=" << out.stats.minIters << " mean=" << out.stats.meanIters
            << " max=" << out.stats.maxIters << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Competitive equilibria of mixed manna (SPLC utilities, exact "
               "rational Lemke solver)"};
  app.require_subcommand(1);

  std::string instanceFile, eqFile, gameFile, pricesFile, outFile, csvFile;
  std::string epsStr = "0";
  std::uint64_t seed = 1;
  long maxIters = -1;
  int cap = 12, nStrategies = 0;
  bool trace = false, dumpLcp = false, decimal = false, fisher = false;
  bool mixed = false, plotData = false;
  BenchConfig bench;

  auto* solve = app.add_subcommand("solve", "Solve an instance with Lemke's scheme");
  solve->add_option("--instance", instanceFile)->required();
  solve->add_option("--seed", seed);
  solve->add_option("--max-iters", maxIters);
  solve->add_flag("--trace", trace, "Log the pivot path to stderr");
  solve->add_flag("--dump-lcp", dumpLcp, "Print the augmented LCP and exit");
  solve->add_flag("--decimal", decimal, "Annotate output with decimal approximations");
  solve->add_option("-o,--output", outFile);

  auto* verify = app.add_subcommand("verify", "Check an equilibrium file");
  verify->add_option("--instance", instanceFile)->required();
  verify->add_option("--equilibrium", eqFile)->required();
  verify->add_option("--epsilon", epsStr, "Clearing tolerance (rational)");

  auto* enumerate = app.add_subcommand("enumerate", "Brute-force all equilibria");
  enumerate->add_option("--instance", instanceFile)->required();
  enumerate->add_option("--cap", cap, "Max total segments");

  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--n", bench.n)->required();
  gen->add_option("--m", bench.m)->required();
  gen->add_option("--segs", bench.segmentsPerPair)->required();
  gen->add_option("--seed", bench.seed);
  int trialIndex = 0;
  gen->add_option("--trial-index", trialIndex);
  gen->add_flag("--mixed", mixed);
  gen->add_option("-o,--output", outFile);

  auto* benchCmd = app.add_subcommand("bench", "Run the benchmark harness");
  benchCmd->add_option("--n", bench.n)->required();
  benchCmd->add_option("--m", bench.m)->required();
  benchCmd->add_option("--segs", bench.segmentsPerPair)->required();
  benchCmd->add_option("--trials", bench.trials)->required();
  benchCmd->add_option("--seed", bench.seed);
  benchCmd->add_option("--max-iters", bench.maxIters);
  benchCmd->add_flag("--mixed", mixed);
  benchCmd->add_option("--csv", csvFile);
  benchCmd->add_flag("--plot-data", plotData);

  auto* reduce = app.add_subcommand("reduce", "Compile a bimatrix game to an instance");
  reduce->add_option("--game", gameFile)->required();
  reduce->add_flag("--fisher", fisher, "Convert to the CEEI (Fisher) form");
  reduce->add_option("-o,--output", outFile);

  auto* extract = app.add_subcommand("extract", "Extract Nash strategies from prices");
  extract->add_option("--prices", pricesFile)->required();
  extract->add_option("--n", nStrategies)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    bench.mode = mixed ? BenchMode::Mixed : BenchMode::AllBads;
    if (solve->parsed())
      return cmd_solve(instanceFile, seed, maxIters, trace, dumpLcp, decimal, outFile);
    if (verify->parsed()) return cmd_verify(instanceFile, eqFile, epsStr);
    if (enumerate->parsed()) return cmd_enumerate(instanceFile, cap);
    if (gen->parsed()) {
      write_output(outFile, write_instance(gen_random_instance(bench, trialIndex)));
      return 0;
    }
    if (benchCmd->parsed()) return cmd_bench(bench, csvFile, plotData);
    if (reduce->parsed()) return cmd_reduce(gameFile, fisher, outFile);
    if (extract->parsed()) return cmd_extract(pricesFile, nStrategies);
  } catch (const parse_exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
