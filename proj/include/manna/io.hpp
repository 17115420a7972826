#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "manna/instance.hpp"
#include "manna/reduction.hpp"
#include "manna/solution.hpp"

namespace manna {

// Parse failure with 1-based position information.
struct ParseError {
  int line = 0;
  int column = 0;
  std::string message;
  std::string str() const;
};

class parse_exception : public std::exception {
 public:
  explicit parse_exception(ParseError err) : err_(std::move(err)), text_(err_.str()) {}
  const char* what() const noexcept override { return text_.c_str(); }
  const ParseError& error() const { return err_; }

 private:
  ParseError err_;
  std::string text_;
};

// Instance file format ("manna-instance"):
//   manna-instance
//   agents N
//   items M
//   setting exchange|fisher|ceei
//   utility I J slope [length slope]...     (final length implied padded)
//   endow I w_1 ... w_M
//   weights eta_1 ... eta_N                 (optional, fisher)
// Rationals are "p/q" or integers; '#' starts a comment; 1-based indices.
// A `utility` line with the final length present keeps it verbatim; with it
// omitted the last segment gets length 1 + lastSegmentPad.
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
std::string write_instance(const Instance& inst);

// Equilibrium file format ("manna-equilibrium"):
//   manna-equilibrium
//   agents N
//   items M
//   price J p_j
//   budget I b_i
//   alloc I J x_ij                          (aggregated per item)
// The aggregated allocation is split back onto segments in fill order when
// loaded against an instance.
Equilibrium read_equilibrium_file(const std::string& path, const Instance& inst);
std::string write_equilibrium(const Equilibrium& eq, bool decimals = false);

// Game file format ("manna-game"): `n K`, then K lines `row ...` and K lines
// `col ...` with the two payoff matrices.
BimatrixGame read_game_file(const std::string& path);
std::string write_game(const BimatrixGame& game);

}  // namespace manna
