#include "manna/io.hpp"

#include <fstream>
#include <sstream>

namespace manna {

std::string ParseError::str() const {
  std::ostringstream out;
  out << "parse error at line " << line << ", column " << column << ": " << message;
  return out.str();
}

namespace {

struct Token {
  std::string text;
  int line, column;  // 1-based
};

[[noreturn]] void fail(int line, int column, const std::string& message) {
  throw parse_exception(ParseError{line, column, message});
}

[[noreturn]] void fail(const Token& tok, const std::string& message) {
  fail(tok.line, tok.column, message);
}

// Lines of whitespace-separated tokens; '#' starts a comment; blank lines are
// dropped.
std::vector<std::vector<Token>> tokenize(std::istream& in) {
  std::vector<std::vector<Token>> lines;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      if (raw[i] == '#') break;
      std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])) &&
             raw[i] != '#')
        ++i;
      toks.push_back({raw.substr(start, i - start), lineno, static_cast<int>(start) + 1});
    }
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  return lines;
}

Rat want_rat(const Token& tok) {
  auto value = parse_rat(tok.text);
  if (!value) fail(tok, "expected a rational number, got '" + tok.text + "'");
  return *value;
}

int want_index(const Token& tok, int limit, const std::string& what) {
  auto value = parse_rat(tok.text);
  if (!value || value->get_den() != 1)
    fail(tok, "expected a " + what + " index, got '" + tok.text + "'");
  long v = value->get_num().get_si();
  if (v < 1 || v > limit)
    fail(tok, what + " index " + tok.text + " out of range 1.." + std::to_string(limit));
  return static_cast<int>(v - 1);
}

long want_count(const Token& tok, const std::string& what) {
  auto value = parse_rat(tok.text);
  if (!value || value->get_den() != 1 || *value < 1 || *value > 100000)
    fail(tok, "expected a positive " + what + " count, got '" + tok.text + "'");
  return value->get_num().get_si();
}

void want_magic(const std::vector<std::vector<Token>>& lines, const std::string& magic) {
  if (lines.empty()) fail(1, 1, "empty file, expected '" + magic + "' header");
  if (lines[0].size() != 1 || lines[0][0].text != magic)
    fail(lines[0][0], "expected '" + magic + "' header");
}

}  // namespace

Instance read_instance(std::istream& in) {
  auto lines = tokenize(in);
  want_magic(lines, "manna-instance");

  Instance inst;
  std::vector<std::vector<char>> haveUtility, haveEndow;
  auto need_dims = [&](const Token& tok) {
    if (inst.numAgents == 0 || inst.numItems == 0)
      fail(tok, "'agents' and 'items' must come before utility/endow lines");
  };

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto& toks = lines[li];
    const std::string& key = toks[0].text;
    if (key == "agents" || key == "items") {
      if (toks.size() != 2) fail(toks[0], "'" + key + "' takes one count");
      (key == "agents" ? inst.numAgents : inst.numItems) =
          static_cast<int>(want_count(toks[1], key));
      if (inst.numAgents > 0 && inst.numItems > 0 && haveUtility.empty()) {
        inst.utility.assign(inst.numAgents,
                            std::vector<std::vector<Segment>>(inst.numItems));
        inst.endowment.assign(inst.numAgents, std::vector<Rat>(inst.numItems, Rat(0)));
        haveUtility.assign(inst.numAgents, std::vector<char>(inst.numItems, 0));
        haveEndow.assign(inst.numAgents, std::vector<char>(0, 0));
        haveEndow.assign(1, std::vector<char>(inst.numAgents, 0));
      }
    } else if (key == "setting") {
      if (toks.size() != 2) fail(toks[0], "'setting' takes one value");
      const std::string& v = toks[1].text;
      if (v == "exchange")
        inst.setting = Setting::Exchange;
      else if (v == "fisher")
        inst.setting = Setting::Fisher;
      else if (v == "ceei")
        inst.setting = Setting::CEEI;
      else
        fail(toks[1], "unknown setting '" + v + "'");
    } else if (key == "utility") {
      need_dims(toks[0]);
      if (toks.size() < 4) fail(toks[0], "'utility' needs agent, item and slopes");
      int i = want_index(toks[1], inst.numAgents, "agent");
      int j = want_index(toks[2], inst.numItems, "item");
      if (haveUtility[i][j]) fail(toks[0], "duplicate utility line");
      haveUtility[i][j] = 1;
      std::vector<Segment>& segs = inst.utility[i][j];
      std::size_t t = 3;
      while (t < toks.size()) {
        Segment seg;
        seg.slope = want_rat(toks[t]);
        if (t + 1 < toks.size()) {
          seg.length = want_rat(toks[t + 1]);
          t += 2;
        } else {
          seg.length = 1 + kLastSegmentPad;  // final length omitted
          t += 1;
        }
        segs.push_back(std::move(seg));
      }
    } else if (key == "endow") {
      need_dims(toks[0]);
      if (static_cast<int>(toks.size()) != inst.numItems + 2)
        fail(toks[0], "'endow' needs agent followed by " + std::to_string(inst.numItems) +
                          " values");
      int i = want_index(toks[1], inst.numAgents, "agent");
      if (haveEndow[0][i]) fail(toks[0], "duplicate endow line");
      haveEndow[0][i] = 1;
      for (int j = 0; j < inst.numItems; ++j) inst.endowment[i][j] = want_rat(toks[j + 2]);
    } else if (key == "weights") {
      need_dims(toks[0]);
      if (static_cast<int>(toks.size()) != inst.numAgents + 1)
        fail(toks[0], "'weights' needs " + std::to_string(inst.numAgents) + " values");
      inst.weights.resize(inst.numAgents);
      for (int i = 0; i < inst.numAgents; ++i) inst.weights[i] = want_rat(toks[i + 1]);
    } else {
      fail(toks[0], "unknown directive '" + key + "'");
    }
  }

  if (inst.numAgents == 0 || inst.numItems == 0)
    fail(1, 1, "missing 'agents' or 'items' directive");
  for (int i = 0; i < inst.numAgents; ++i) {
    if (!haveEndow[0][i])
      fail(1, 1, "missing endow line for agent " + std::to_string(i + 1));
    for (int j = 0; j < inst.numItems; ++j)
      if (!haveUtility[i][j])
        fail(1, 1, "missing utility line for agent " + std::to_string(i + 1) + ", item " +
                       std::to_string(j + 1));
  }
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    fail(1, 1, e.what());
  }
  return inst;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_exception(ParseError{0, 0, "cannot open '" + path + "'"});
  return read_instance(in);
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << "manna-instance\n";
  out << "agents " << inst.numAgents << "\n";
  out << "items " << inst.numItems << "\n";
  out << "setting "
      << (inst.setting == Setting::Exchange
              ? "exchange"
              : inst.setting == Setting::Fisher ? "fisher" : "ceei")
      << "\n";
  const Rat padded = 1 + kLastSegmentPad;
  for (int i = 0; i < inst.numAgents; ++i)
    for (int j = 0; j < inst.numItems; ++j) {
      out << "utility " << i + 1 << " " << j + 1;
      const auto& segs = inst.utility[i][j];
      for (std::size_t k = 0; k < segs.size(); ++k) {
        out << " " << rat_str(segs[k].slope);
        if (k + 1 < segs.size())
          out << " " << rat_str(segs[k].length);
        else if (segs[k].length != padded)
          out << " " << rat_str(segs[k].length);
      }
      out << "\n";
    }
  for (int i = 0; i < inst.numAgents; ++i) {
    out << "endow " << i + 1;
    for (int j = 0; j < inst.numItems; ++j) out << " " << rat_str(inst.endowment[i][j]);
    out << "\n";
  }
  if (!inst.weights.empty()) {
    out << "weights";
    for (const Rat& w : inst.weights) out << " " << rat_str(w);
    out << "\n";
  }
  return out.str();
}

Equilibrium read_equilibrium_file(const std::string& path, const Instance& inst) {
  std::ifstream in(path);
  if (!in) throw parse_exception(ParseError{0, 0, "cannot open '" + path + "'"});
  auto lines = tokenize(in);
  want_magic(lines, "manna-equilibrium");

  Equilibrium eq;
  eq.prices.assign(inst.numItems, Rat(0));
  eq.alloc.resize(inst.numAgents);
  for (int i = 0; i < inst.numAgents; ++i) {
    eq.alloc[i].resize(inst.numItems);
    for (int j = 0; j < inst.numItems; ++j)
      eq.alloc[i][j].assign(inst.utility[i][j].size(), Rat(0));
  }
  std::vector<Rat> budgets(inst.numAgents, Rat(0));
  bool haveBudgets = false;

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto& toks = lines[li];
    const std::string& key = toks[0].text;
    if (key == "agents" || key == "items") {
      if (toks.size() != 2) fail(toks[0], "'" + key + "' takes one count");
      long v = want_count(toks[1], key);
      long expect = key == "agents" ? inst.numAgents : inst.numItems;
      if (v != expect)
        fail(toks[1], "'" + key + "' does not match the instance (" +
                          std::to_string(expect) + ")");
    } else if (key == "price") {
      if (toks.size() != 3) fail(toks[0], "'price' needs item and value");
      int j = want_index(toks[1], inst.numItems, "item");
      eq.prices[j] = want_rat(toks[2]);
    } else if (key == "budget") {
      if (toks.size() != 3) fail(toks[0], "'budget' needs agent and value");
      int i = want_index(toks[1], inst.numAgents, "agent");
      budgets[i] = want_rat(toks[2]);
      haveBudgets = true;
    } else if (key == "alloc") {
      if (toks.size() != 4) fail(toks[0], "'alloc' needs agent, item and amount");
      int i = want_index(toks[1], inst.numAgents, "agent");
      int j = want_index(toks[2], inst.numItems, "item");
      Rat total = want_rat(toks[3]);
      if (total < 0) fail(toks[3], "negative allocation");
      // Split onto segments in fill order; overflow lands on the last segment
      // (and is reported by the verifier as malformed).
      const auto& segs = inst.utility[i][j];
      Rat remaining = total;
      for (std::size_t k = 0; k < segs.size() && remaining > 0; ++k) {
        Rat take = (k + 1 == segs.size()) ? remaining
                                          : std::min(remaining, segs[k].length);
        eq.alloc[i][j][k] = take;
        remaining -= take;
      }
    } else {
      fail(toks[0], "unknown directive '" + key + "'");
    }
  }
  if (haveBudgets)
    eq.budgets = std::move(budgets);
  else
    fill_budgets(inst, eq);
  return eq;
}

std::string write_equilibrium(const Equilibrium& eq, bool decimals) {
  std::ostringstream out;
  auto dec = [&](const Rat& v) -> std::string {
    if (!decimals) return "";
    std::ostringstream d;
    d << "  # ~" << rat_double(v);
    return d.str();
  };
  out << "manna-equilibrium\n";
  out << "agents " << eq.budgets.size() << "\n";
  out << "items " << eq.prices.size() << "\n";
  for (std::size_t j = 0; j < eq.prices.size(); ++j)
    out << "price " << j + 1 << " " << rat_str(eq.prices[j]) << dec(eq.prices[j]) << "\n";
  for (std::size_t i = 0; i < eq.budgets.size(); ++i)
    out << "budget " << i + 1 << " " << rat_str(eq.budgets[i]) << dec(eq.budgets[i])
        << "\n";
  auto agg = eq.aggregated();
  for (std::size_t i = 0; i < agg.size(); ++i)
    for (std::size_t j = 0; j < agg[i].size(); ++j)
      out << "alloc " << i + 1 << " " << j + 1 << " " << rat_str(agg[i][j])
          << dec(agg[i][j]) << "\n";
  return out.str();
}

BimatrixGame read_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_exception(ParseError{0, 0, "cannot open '" + path + "'"});
  auto lines = tokenize(in);
  want_magic(lines, "manna-game");

  BimatrixGame game;
  std::size_t li = 1;
  if (li >= lines.size() || lines[li].size() != 2 || lines[li][0].text != "n")
    fail(li < lines.size() ? lines[li][0] : Token{"", 1, 1}, "expected 'n <count>'");
  game.n = static_cast<int>(want_count(lines[li][1], "strategy"));
  ++li;
  auto read_matrix = [&](const std::string& tag, std::vector<std::vector<Rat>>& M) {
    M.resize(game.n);
    for (int r = 0; r < game.n; ++r, ++li) {
      if (li >= lines.size() || lines[li][0].text != tag ||
          static_cast<int>(lines[li].size()) != game.n + 1)
        fail(li < lines.size() ? lines[li][0] : Token{"", 1, 1},
             "expected '" + tag + "' line with " + std::to_string(game.n) + " entries");
      M[r].resize(game.n);
      for (int c = 0; c < game.n; ++c) M[r][c] = want_rat(lines[li][c + 1]);
    }
  };
  read_matrix("row", game.R);
  read_matrix("col", game.C);
  if (li != lines.size()) fail(lines[li][0], "trailing content after matrices");
  try {
    game.validate();
  } catch (const std::invalid_argument& e) {
    fail(1, 1, e.what());
  }
  return game;
}

std::string write_game(const BimatrixGame& game) {
  std::ostringstream out;
  out << "manna-game\nn " << game.n << "\n";
  for (int r = 0; r < game.n; ++r) {
    out << "row";
    for (int c = 0; c < game.n; ++c) out << " " << rat_str(game.R[r][c]);
    out << "\n";
  }
  for (int r = 0; r < game.n; ++r) {
    out << "col";
    for (int c = 0; c < game.n; ++c) out << " " << rat_str(game.C[r][c]);
    out << "\n";
  }
  return out.str();
}

}  // namespace manna
